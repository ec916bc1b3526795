/* Copyright 2026 The texlogic Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "texlogic/converter.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>

#include "layout.hpp"
#include "texlogic/text.hpp"

namespace texlogic {

using layout::npos;

namespace {

struct Unit {
  SourceSpan span;
  std::string replacement;
  std::vector<std::size_t> detections;
  std::string origin;
  bool frontmatter = false;
};

bool balanced(std::string_view s) { return parse(std::string(s)).diagnostics().empty(); }

std::string lowercase(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

bool only_markers(std::string_view s) {
  const auto sites = find_marker_sites(s);
  return sites.size() == 1 && sites[0].span.start == 0 && sites[0].span.end == s.size();
}

// Only spacing, indentation and paragraph breaks.
bool is_glue(std::string_view s) {
  const BlockTree t = parse(std::string(s));
  const TokenStream& ts = t.tokens();
  const auto& nodes = t.nodes();
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const Node& n = nodes[k];
    if (!n.is_leaf()) return false;
    const Token& tok = ts[n.token];
    if (tok.kind == TokenKind::Whitespace || tok.kind == TokenKind::ParBreak) continue;
    if (tok.kind != TokenKind::ControlWord) return false;
    const std::string_view w = ts.name(tok);
    if (!(layout::is_vertical_spacing(w) || w == "noindent" || w == "par")) return false;
    if (text::takes_dimension_argument(w)) {
      std::size_t j = k + 1;
      while (j < nodes.size() && nodes[j].is_leaf() &&
             (ts[nodes[j].token].kind == TokenKind::Whitespace || ts.text(ts[nodes[j].token]) == "*"))
        ++j;
      if (j < nodes.size() && nodes[j].kind == NodeKind::Group) k = j;
    } else if (w == "vskip") {
      std::size_t j = k + 1;
      while (j < nodes.size() && nodes[j].is_leaf() && ts[nodes[j].token].kind == TokenKind::Whitespace) ++j;
      if (j < nodes.size() && nodes[j].is_leaf() && ts[nodes[j].token].kind == TokenKind::Text) k = j;
    }
  }
  return true;
}

class Planner {
 public:
  Planner(const Analysis& a, const BlockTree& tree, const ConversionPolicy& policy)
      : a_(a), src_(tree.source()), policy_(policy), status_(a.detections.size()) {
    for (SourceSpan p : protected_spans(tree)) {
      const std::string_view text(src_.data() + p.start, p.size());
      if (only_markers(text)) continue;
      const std::string_view before(src_.data(), p.start);
      if (before.ends_with("\\verb")) p.start -= 5;
      else if (before.ends_with("\\verb*")) p.start -= 6;
      protected_.push_back(p);
    }
  }

  PlanResult run() {
    decide();
    std::vector<Unit> units = frontmatter_units();
    for (Unit& u : body_units()) units.push_back(std::move(u));
    std::sort(units.begin(), units.end(), [](const Unit& x, const Unit& y) { return x.span.start < y.span.start; });
    PlanResult out;
    for (std::size_t i = 0; i < units.size(); ++i) {
      const Unit& u = units[i];
      if (i > 0 && units[i - 1].span.end > u.span.start) {
        throw OverlapError("edits for " + units[i - 1].origin + " and " + u.origin + " overlap at offset " +
                           std::to_string(u.span.start));
      }
      if (policy_.scope == Scope::MetadataOnly && u.span.end > a_.frontmatter.frontmatter_end.start) {
        throw PolicyViolation(u.origin + " edit ends after the front matter under metadata-only scope");
      }
      for (std::size_t d : u.detections) status_[d] = Status{true, {}, out.plan.edits.size()};
      for (Edit& e : split_around_protected(Edit{u.span, u.replacement, u.origin})) out.plan.edits.push_back(std::move(e));
    }
    for (std::size_t d = 0; d < a_.detections.size(); ++d) {
      const Status& s = status_[d];
      if (s.applied) {
        out.applied.push_back({a_.detections[d], out.plan.edits[s.edit]});
      } else {
        out.skipped.push_back({a_.detections[d], s.reason.empty() ? "not planned" : s.reason});
      }
    }
    out.warnings = std::move(warnings_);
    return out;
  }

 private:
  struct Status {
    bool applied = false;
    std::string reason;
    std::size_t edit = 0;
  };

  // Math, verbatim and comments carried over verbatim stay outside the edit:
  // the edit is cut into pieces around each such span.
  std::vector<Edit> split_around_protected(Edit e) const {
    std::vector<Edit> out;
    std::size_t from = e.span.start, r = 0;
    for (const SourceSpan& p : protected_) {
      if (p.start < from || p.end > e.span.end || p.size() == 0) continue;
      const std::string_view text(src_.data() + p.start, p.size());
      const std::size_t at = e.replacement.find(text, r);
      if (at == std::string::npos) continue;
      if (p.start > from || at > r) {
        out.push_back({SourceSpan{from, p.start, line_at(from)}, e.replacement.substr(r, at - r), e.origin});
      }
      from = p.end;
      r = at + text.size();
    }
    if (out.empty() && from == e.span.start) return {std::move(e)};
    if (e.span.end > from || r < e.replacement.size()) {
      out.push_back({SourceSpan{from, e.span.end, line_at(from)}, e.replacement.substr(r), e.origin});
    }
    return out;
  }

  std::size_t line_at(std::size_t offset) const {
    return 1 + static_cast<std::size_t>(std::count(src_.begin(), src_.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
  }

  bool is_body(DetectionKind k) const {
    return k == DetectionKind::SectionHeader || k == DetectionKind::Emphasis || k == DetectionKind::TheoremLike;
  }

  bool passes(const Detection& d) const {
    return policy_.aggressive || d.confidence + 1e-9 >= policy_.apply_threshold;
  }

  void skip(std::size_t d, std::string reason) {
    if (status_[d].reason.empty()) status_[d].reason = std::move(reason);
    accepted_.erase(d);
  }

  void decide() {
    double min_author = 2.0;
    for (const Detection& d : a_.detections) {
      if (d.kind == DetectionKind::AuthorLine) min_author = std::min(min_author, d.confidence);
    }
    const bool block_ok = policy_.aggressive || (min_author <= 1.0 && min_author + 1e-9 >= policy_.apply_threshold);
    for (std::size_t i = 0; i < a_.detections.size(); ++i) {
      const Detection& d = a_.detections[i];
      accepted_.insert(i);
      if (is_body(d.kind) && policy_.scope == Scope::MetadataOnly) {
        skip(i, "metadata-only scope");
      } else if (d.kind == DetectionKind::TheoremLike && !(policy_.scope == Scope::Full && policy_.aggressive)) {
        skip(i, "theorem conversion requires full scope and aggressive mode");
      } else if (d.kind == DetectionKind::AuthorLine || d.kind == DetectionKind::AffiliationLine) {
        if (!block_ok) skip(i, "author block below threshold");
      } else if (!passes(d)) {
        skip(i, "confidence below threshold");
      }
    }
  }

  std::optional<std::string> unsafe(const SourceSpan& span, const std::string& replacement) const {
    const std::string_view original(src_.data() + span.start, span.size());
    if (!balanced(original)) return "source span is not balanced";
    if (!balanced(replacement)) return "replacement is not balanced";
    for (const SourceSpan& p : protected_) {
      if (!p.intersects(span)) continue;
      if (p.start >= span.start && p.end <= span.end) {
        if (replacement.find(src_.substr(p.start, p.size())) == std::string::npos)
          return "edit would drop a protected math, verbatim or comment span";
        continue;
      }
      return "edit partially overlaps a protected span";
    }
    return std::nullopt;
  }

  std::string author_commands() {
    const FrontMatter& fm = a_.frontmatter;
    std::vector<std::string> pieces;
    std::string out;
    for (std::size_t i = 0; i < fm.authors.size(); ++i) {
      std::string name = fm.authors[i].name.raw;
      if (!find_marker_sites(name).empty()) name = strip_markers(name).text;
      const std::vector<std::string> affs = fm.affiliations_of(i);
      const bool dangling = std::any_of(fm.authors[i].markers.begin(), fm.authors[i].markers.end(), [&](const Marker& m) {
        return std::find(fm.unresolved.begin(), fm.unresolved.end(), m) != fm.unresolved.end();
      });
      if (affs.empty() && dangling) {
        warnings_.push_back("author '" + name + "' has unresolved markers; emitted without affiliation");
      }
      if (policy_.affiliation_command == AffiliationCommand::Thanks) {
        std::string piece = name;
        for (const std::string& f : affs) piece += "\\thanks{" + f + "}";
        for (const std::string& n : fm.authors[i].notes) piece += "\\thanks{" + n + "}";
        pieces.push_back(piece);
      } else {
        if (!out.empty()) out += "\n";
        out += "\\author{" + name;
        for (const std::string& n : fm.authors[i].notes) out += "\\thanks{" + n + "}";
        out += "}";
        for (const std::string& f : affs) out += "\n\\affiliation{" + f + "}";
      }
    }
    if (policy_.affiliation_command == AffiliationCommand::Thanks) {
      out = "\\author{";
      for (std::size_t i = 0; i < pieces.size(); ++i) out += (i ? " \\and " : "") + pieces[i];
      out += "}";
    }
    return out;
  }

  std::vector<Unit> frontmatter_units() {
    std::vector<Unit> units;
    std::vector<std::size_t> block;
    for (std::size_t i = 0; i < a_.detections.size(); ++i) {
      if (!accepted_.count(i)) continue;
      const Detection& d = a_.detections[i];
      switch (d.kind) {
        case DetectionKind::Title:
          add_unit(units, {i}, d.extent, "\\title{" + text::trim(a_.frontmatter.title ? a_.frontmatter.title->raw : d.text) + "}");
          break;
        case DetectionKind::Abstract:
          add_unit(units, {i}, d.extent, "\\begin{abstract}" + text::trim(d.text) + "\\end{abstract}");
          break;
        case DetectionKind::AuthorLine:
        case DetectionKind::AffiliationLine:
          block.push_back(i);
          break;
        default:
          break;
      }
    }
    if (!block.empty()) {
      // The block is all or nothing.
      const std::string commands = author_commands();
      std::vector<Unit> parts;
      bool first = true;
      std::optional<std::string> problem;
      for (std::size_t i : block) {
        const Detection& d = a_.detections[i];
        Unit u{d.extent, {}, {i}, to_string(d.kind), true};
        if (first && d.kind == DetectionKind::AuthorLine) {
          u.replacement = commands;
          first = false;
        }
        if (!problem) problem = unsafe(u.span, u.replacement);
        parts.push_back(std::move(u));
      }
      if (!problem && first) problem = "no author line in block";
      if (problem) {
        for (std::size_t i : block) skip(i, *problem);
      } else {
        for (Unit& u : parts) units.push_back(std::move(u));
      }
    }
    collapse_containers(units);
    merge_glue(units);
    add_maketitle(units);
    return units;
  }

  void add_unit(std::vector<Unit>& units, std::vector<std::size_t> detections, SourceSpan span, std::string replacement) {
    const Detection& d = a_.detections[detections.front()];
    if (auto problem = unsafe(span, replacement)) {
      for (std::size_t i : detections) skip(i, *problem);
      return;
    }
    units.push_back(Unit{span, std::move(replacement), std::move(detections), to_string(d.kind), !is_body(d.kind)});
  }

  // Units claiming every line of a comment-free container absorb it.
  void collapse_containers(std::vector<Unit>& units) {
    std::map<std::size_t, std::size_t> line_unit;
    for (std::size_t u = 0; u < units.size(); ++u) {
      for (std::size_t d : units[u].detections) {
        for (std::size_t l : a_.detection_lines[d]) line_unit[l] = u;
      }
    }
    std::vector<std::vector<std::size_t>> children(a_.containers.size());
    std::vector<std::size_t> roots;
    for (std::size_t c = 0; c < a_.containers.size(); ++c) {
      const std::size_t parent = a_.containers[c].parent;
      (parent == npos ? roots : children[parent]).push_back(c);
    }
    std::vector<std::vector<std::size_t>> groups;  // unit indices merged together
    std::vector<SourceSpan> group_spans;
    std::vector<std::size_t> stack(roots.rbegin(), roots.rend());
    while (!stack.empty()) {
      const std::size_t c = stack.back();
      stack.pop_back();
      const Container& con = a_.containers[c];
      const bool all = !con.lines.empty() && std::all_of(con.lines.begin(), con.lines.end(),
                                                         [&](std::size_t l) { return line_unit.count(l) > 0; });
      if (all && !con.has_comment && con.kind != "titlepage") {
        std::set<std::size_t> members;
        for (std::size_t l : con.lines) members.insert(line_unit[l]);
        SourceSpan span = con.span;
        for (std::size_t u : members) {
          span.start = std::min(span.start, units[u].span.start);
          span.end = std::max(span.end, units[u].span.end);
        }
        groups.emplace_back(members.begin(), members.end());
        group_spans.push_back(span);
        continue;
      }
      for (auto it = children[c].rbegin(); it != children[c].rend(); ++it) stack.push_back(*it);
    }
    if (groups.empty()) return;
    std::vector<bool> consumed(units.size(), false);
    std::vector<Unit> merged;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      std::vector<std::size_t> members = groups[g];
      // A unit may reach past the container; pull in anything the grown span covers.
      for (std::size_t u = 0; u < units.size(); ++u) {
        if (std::find(members.begin(), members.end(), u) == members.end() && units[u].span.intersects(group_spans[g]))
          members.push_back(u);
      }
      std::sort(members.begin(), members.end(),
                [&](std::size_t x, std::size_t y) { return units[x].span.start < units[y].span.start; });
      Unit m{group_spans[g], {}, {}, {}, true};
      for (std::size_t u : members) {
        if (consumed[u]) continue;
        consumed[u] = true;
        m.span.start = std::min(m.span.start, units[u].span.start);
        m.span.end = std::max(m.span.end, units[u].span.end);
        if (!units[u].replacement.empty()) m.replacement += (m.replacement.empty() ? "" : "\n") + units[u].replacement;
        m.detections.insert(m.detections.end(), units[u].detections.begin(), units[u].detections.end());
        if (m.origin.empty()) m.origin = units[u].origin;
      }
      if (!m.detections.empty()) merged.push_back(std::move(m));
    }
    for (std::size_t u = 0; u < units.size(); ++u) {
      if (!consumed[u]) merged.push_back(std::move(units[u]));
    }
    std::sort(merged.begin(), merged.end(), [](const Unit& x, const Unit& y) { return x.span.start < y.span.start; });
    units = std::move(merged);
  }

  // Adjacent front-matter edits separated only by spacing become one edit.
  void merge_glue(std::vector<Unit>& units) {
    std::sort(units.begin(), units.end(), [](const Unit& x, const Unit& y) { return x.span.start < y.span.start; });
    std::vector<Unit> out;
    for (Unit& u : units) {
      if (!out.empty() && out.back().span.end <= u.span.start &&
          is_glue(std::string_view(src_.data() + out.back().span.end, u.span.start - out.back().span.end)) &&
          !gap_protected(out.back().span.end, u.span.start)) {
        Unit& prev = out.back();
        prev.span.end = u.span.end;
        if (!u.replacement.empty()) prev.replacement += (prev.replacement.empty() ? "" : "\n") + u.replacement;
        prev.detections.insert(prev.detections.end(), u.detections.begin(), u.detections.end());
        continue;
      }
      out.push_back(std::move(u));
    }
    units = std::move(out);
  }

  bool gap_protected(std::size_t start, std::size_t end) const {
    const SourceSpan gap{start, end, 0};
    return std::any_of(protected_.begin(), protected_.end(), [&](const SourceSpan& p) { return p.intersects(gap); });
  }

  void add_maketitle(std::vector<Unit>& units) {
    if (units.empty()) return;
    const MaketitleFacts& f = a_.maketitle;
    bool any_title_part = false;
    for (const Unit& u : units) {
      for (std::size_t d : u.detections) {
        const DetectionKind k = a_.detections[d].kind;
        any_title_part = any_title_part || k == DetectionKind::Title || k == DetectionKind::AuthorLine ||
                         k == DetectionKind::AffiliationLine;
      }
    }
    if (!any_title_part || f.present || f.redefined) return;
    const std::string command = !f.custom_macro.empty() && !f.custom_invoked ? f.custom_macro : "maketitle";
    Unit& last = units.back();
    last.replacement += (last.replacement.empty() ? "\\" : "\n\\") + command;
  }

  std::vector<Unit> body_units() {
    std::vector<Unit> units;
    std::set<std::string> declared(a_.logical.theorem_environments.begin(), a_.logical.theorem_environments.end());
    std::map<std::string, std::string> needed;
    std::vector<std::size_t> theorem_detections;
    for (std::size_t i = 0; i < a_.detections.size(); ++i) {
      if (!accepted_.count(i)) continue;
      const Detection& d = a_.detections[i];
      switch (d.kind) {
        case DetectionKind::SectionHeader: {
          static const char* const names[] = {"section", "subsection", "subsubsection"};
          const int level = std::clamp(d.level, 1, 3);
          add_unit(units, {i}, d.extent, "\\" + std::string(names[level - 1]) + "{" + d.text + "}" + d.trailer);
          break;
        }
        case DetectionKind::Emphasis:
          add_unit(units, {i}, d.span, "\\emph{" + d.text + "}");
          break;
        case DetectionKind::TheoremLike: {
          if (!a_.logical.begin_document) {
            skip(i, "no preamble to declare the theorem environment");
            break;
          }
          const std::string env = lowercase(d.word);
          std::string replacement = "\\begin{" + env + "}";
          if (!d.optional.empty()) replacement += "[" + d.optional + "]";
          replacement += d.text + "\\end{" + env + "}";
          const std::size_t before = units.size();
          add_unit(units, {i}, d.extent, replacement);
          if (units.size() > before && !declared.count(env)) {
            needed.emplace(env, d.word);
            theorem_detections.push_back(i);
          }
          break;
        }
        default:
          break;
      }
    }
    if (!needed.empty()) {
      std::string preamble;
      for (const auto& [env, title] : needed) preamble += "\\newtheorem{" + env + "}{" + title + "}\n";
      const std::size_t at = a_.logical.begin_document->start;
      units.push_back(Unit{SourceSpan{at, at, a_.logical.begin_document->line}, preamble, {}, "Preamble", false});
      warnings_.push_back("declared theorem environments in the preamble");
    }
    return units;
  }

  const Analysis& a_;
  const std::string& src_;
  const ConversionPolicy& policy_;
  std::vector<Status> status_;
  std::set<std::size_t> accepted_;
  std::vector<SourceSpan> protected_;
  std::vector<std::string> warnings_;
};

}  // namespace

const char* to_string(Scope scope) { return scope == Scope::MetadataOnly ? "metadata" : "full"; }

const char* to_string(AffiliationCommand command) {
  return command == AffiliationCommand::Thanks ? "thanks" : "affiliation";
}

PlanResult plan(const Analysis& analysis, const BlockTree& tree, const ConversionPolicy& policy) {
  return Planner(analysis, tree, policy).run();
}

std::string apply(const std::string& source, const RewritePlan& rewrite) {
  std::string out;
  out.reserve(source.size());
  std::size_t pos = 0;
  for (const Edit& e : rewrite.edits) {
    if (e.span.start < pos || e.span.end > source.size() || e.span.end < e.span.start) {
      throw OverlapError("edit at offset " + std::to_string(e.span.start) + " overlaps or is out of order");
    }
    out.append(source, pos, e.span.start - pos);
    out += e.replacement;
    pos = e.span.end;
  }
  out.append(source, pos, std::string::npos);
  return out;
}

std::pair<std::string, ConversionReport> convert(const std::string& source, const ConversionPolicy& policy) {
  const BlockTree tree = parse(source);
  const Analysis analysis = analyze(tree);
  ConversionReport report;
  report.before = classify(analysis, policy.apply_threshold);
  PlanResult p = plan(analysis, tree, policy);
  std::string output = texlogic::apply(source, p.plan);
  report.applied = std::move(p.applied);
  report.skipped = std::move(p.skipped);
  report.warnings = analysis.warnings;
  for (std::string& w : p.warnings) report.warnings.push_back(std::move(w));
  if (!tree.diagnostics().empty()) report.warnings.push_back("input has unbalanced structure");
  report.plan = std::move(p.plan);
  report.after = report.plan.edits.empty() ? report.before : classify(parse(output));
  return {std::move(output), std::move(report)};
}

}  // namespace texlogic
