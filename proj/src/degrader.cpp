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

#include "texlogic/degrader.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "texlogic/checksum.hpp"
#include "texlogic/converter.hpp"
#include "texlogic/text.hpp"

namespace texlogic {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct ProfileName {
  Profile profile;
  const char* name;
};

constexpr ProfileName kNames[] = {
    {Profile::CenterlineStyle, "centerline-style"},
    {Profile::CenterEnv, "center-env"},
    {Profile::NumberedMarkers, "numbered-markers"},
    {Profile::SymbolMarkers, "symbol-markers"},
    {Profile::UnlabeledAbstract, "unlabeled-abstract"},
    {Profile::BoldSolitarySections, "bold-solitary-sections"},
    {Profile::InlineEmphasis, "inline-emphasis"},
};

std::string replace_breaks(std::string s) {
  for (std::size_t p = s.find("\\\\"); p != std::string::npos; p = s.find("\\\\", p)) s.replace(p, 2, " ");
  return text::collapse_whitespace(text::trim(s));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

 private:
  std::mt19937_64 engine_;
};

// Symbol marker renderings by family: math, \textsuperscript, unicode.
constexpr const char* kMathSymbols[] = {"\\ast", "\\dagger", "\\ddagger", "\\S", "\\P", "\\|"};
constexpr const char* kTextSymbols[] = {"\\textasteriskcentered", "\\dag", "\\ddag", "\\S", "\\P", "\\textbardbl"};
constexpr const char* kUnicodeSymbols[] = {"\xE2\x88\x97", "\xE2\x80\xA0", "\xE2\x80\xA1",
                                           "\xC2\xA7",     "\xC2\xB6",     "\xE2\x80\x96"};

enum class Markers { None, Numbered, Symbols };

struct MarkerStyle {
  Markers kind = Markers::None;
  std::size_t family = 0;

  std::string item(std::size_t affiliation) const {
    if (kind == Markers::Numbered) return std::to_string(affiliation + 1);
    const std::size_t repeat = affiliation / 6 + 1;
    std::string out;
    for (std::size_t r = 0; r < repeat; ++r) {
      out += family == 0 ? kMathSymbols[affiliation % 6]
                         : family == 1 ? kTextSymbols[affiliation % 6] : kUnicodeSymbols[affiliation % 6];
    }
    return out;
  }

  std::string render(const std::vector<std::size_t>& affiliations) const {
    if (kind == Markers::None || affiliations.empty()) return {};
    std::string items;
    for (std::size_t i = 0; i < affiliations.size(); ++i) items += (i ? "," : "") + item(affiliations[i]);
    if (kind == Markers::Symbols && family == 2) return items;
    if (family == 0) return "$^{" + items + "}$";
    return "\\textsuperscript{" + items + "}";
  }
};

std::string parameter(const std::vector<DegradationProfile>& profiles, const std::string& key) {
  for (const auto& p : profiles) {
    auto it = p.parameters.find(key);
    if (it != p.parameters.end()) return it->second;
  }
  return {};
}

std::size_t count_braced(const std::string& s, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < s.size(); ++i) {
    if (s[i] == '\\') {
      ++i;
    } else if (s[i] == '{') {
      ++depth;
    } else if (s[i] == '}' && --depth == 0) {
      return i + 1;
    }
  }
  return std::string::npos;
}

class Degrader {
 public:
  Degrader(const std::string& src, const LogicalDocument& l, const GroundTruth& truth,
           const std::vector<DegradationProfile>& profiles, std::uint64_t seed)
      : src_(src), l_(l), truth_(truth), profiles_(profiles), rng_(seed) {}

  std::string run() {
    const bool layout = has(Profile::CenterlineStyle) || has(Profile::CenterEnv) || has(Profile::NumberedMarkers) ||
                        has(Profile::SymbolMarkers) || has(Profile::UnlabeledAbstract);
    if (layout && l_.has_frontmatter_commands()) frontmatter();
    if (has(Profile::BoldSolitarySections)) sections();
    if (has(Profile::InlineEmphasis)) emphases();
    std::stable_sort(edits_.begin(), edits_.end(), [](const Edit& a, const Edit& b) {
      return a.span.start != b.span.start ? a.span.start < b.span.start : a.span.end < b.span.end;
    });
    RewritePlan plan;
    for (Edit& e : edits_) {
      if (!plan.edits.empty() && plan.edits.back().span.end > e.span.start) continue;
      plan.edits.push_back(std::move(e));
    }
    return texlogic::apply(src_, plan);
  }

 private:
  bool has(Profile p) const {
    return std::any_of(profiles_.begin(), profiles_.end(), [&](const DegradationProfile& d) { return d.name == p; });
  }

  // Widens a removal to its whole line when nothing else is on it.
  SourceSpan tidy(SourceSpan span) const {
    std::size_t b = span.start;
    while (b > 0 && (src_[b - 1] == ' ' || src_[b - 1] == '\t')) --b;
    std::size_t f = span.end;
    while (f < src_.size() && (src_[f] == ' ' || src_[f] == '\t')) ++f;
    if ((b == 0 || src_[b - 1] == '\n') && (f == src_.size() || src_[f] == '\n')) {
      return SourceSpan{b, std::min(src_.size(), f + 1), span.line};
    }
    return span;
  }

  void frontmatter() {
    const bool both = has(Profile::CenterlineStyle) && has(Profile::CenterEnv);
    const bool center_env = has(Profile::CenterEnv) && (!both || rng_.pick(2) == 1);
    MarkerStyle markers;
    const bool numbered = has(Profile::NumberedMarkers), symbols = has(Profile::SymbolMarkers);
    if (numbered && symbols) {
      markers.kind = rng_.pick(2) ? Markers::Symbols : Markers::Numbered;
    } else if (numbered) {
      markers.kind = Markers::Numbered;
    } else if (symbols) {
      markers.kind = Markers::Symbols;
    }
    markers.family = rng_.pick(markers.kind == Markers::Symbols ? 3 : 2);

    std::string title_line;
    if (!truth_.title.empty() && l_.title) {
      std::string size = parameter(profiles_, "title-size");
      const std::string title = replace_breaks(src_.substr(l_.title->argument.start, l_.title->argument.size()));
      if (center_env) {
        if (size.empty()) size = rng_.pick(2) ? "\\Large" : "\\LARGE";
        title_line = "{" + size + "\\bf " + title + "}";
      } else {
        if (size.empty()) {
          static const char* const sizes[] = {"", "\\Large", "\\large"};
          size = sizes[rng_.pick(3)];
        }
        title_line = "\\centerline{" + size + "\\bf " + title + "}";
      }
    }
    const std::vector<std::string> people = author_lines(markers);

    std::ostringstream block;
    if (center_env) {
      const bool separate = rng_.pick(2) == 1;
      block << "\\begin{center}\n";
      if (!title_line.empty()) {
        block << title_line;
        if (separate && !people.empty()) {
          block << "\n\\end{center}\n\\begin{center}\n";
        } else if (!people.empty()) {
          block << "\\\\[4mm]\n";
        }
      }
      for (std::size_t i = 0; i < people.size(); ++i) block << people[i] << (i + 1 < people.size() ? "\\\\\n" : "");
      block << "\n\\end{center}\n";
    } else {
      if (!title_line.empty()) block << title_line << "\n\\medskip\n";
      for (const std::string& p : people) block << "\\centerline{" << p << "}\n";
      block << "\\bigskip\n";
    }
    if (l_.abstract_env) block << abstract_block() << "\n";

    std::vector<SourceSpan> removals;
    if (l_.title) removals.push_back(l_.title->span);
    for (const CommandSite& c : l_.author_commands) removals.push_back(c.span);
    for (const CommandSite& c : l_.affiliation_commands) removals.push_back(c.span);
    if (l_.abstract_env) removals.push_back(*l_.abstract_env);
    std::optional<SourceSpan> anchor;
    if (!l_.maketitle_sites.empty()) {
      anchor = l_.maketitle_sites.front();
      for (std::size_t i = 1; i < l_.maketitle_sites.size(); ++i) removals.push_back(l_.maketitle_sites[i]);
    } else {
      for (const SourceSpan& r : removals) {
        if (r.start >= l_.body.start && (!anchor || r.start < anchor->start)) anchor = r;
      }
    }
    for (const SourceSpan& r : removals) {
      if (anchor && r == *anchor) continue;
      edits_.push_back(Edit{tidy(r), "", "remove"});
    }
    if (anchor) {
      edits_.push_back(Edit{*anchor, block.str(), "frontmatter"});
    } else {
      std::size_t at = l_.body.start;
      if (at < src_.size() && src_[at] == '\n') ++at;
      edits_.push_back(Edit{SourceSpan{at, at, 0}, block.str(), "frontmatter"});
    }
  }

  std::vector<std::string> author_lines(const MarkerStyle& markers) {
    std::vector<std::string> out;
    if (truth_.authors.empty()) return out;
    auto index_of = [&](const std::string& aff) {
      return static_cast<std::size_t>(
          std::find(truth_.affiliations.begin(), truth_.affiliations.end(), aff) - truth_.affiliations.begin());
    };
    const bool oxford = rng_.pick(2) == 1;
    auto join_names = [&](const std::vector<std::string>& names) {
      std::vector<std::string> lines;
      for (std::size_t i = 0; i < names.size(); i += 3) {
        std::string line;
        const std::size_t end = std::min(names.size(), i + 3);
        for (std::size_t k = i; k < end; ++k) {
          if (k > i) line += (oxford && k + 1 == end && end == names.size()) ? " and " : ", ";
          line += names[k];
        }
        lines.push_back(line);
      }
      return lines;
    };
    if (markers.kind == Markers::None) {
      // Authors sharing an affiliation set form a group followed by its lines.
      std::vector<std::vector<std::string>> sets;
      std::vector<std::vector<std::string>> members;
      for (const GroundTruthAuthor& a : truth_.authors) {
        auto it = std::find(sets.begin(), sets.end(), a.affiliations);
        if (it == sets.end()) {
          sets.push_back(a.affiliations);
          members.emplace_back();
          it = sets.end() - 1;
        }
        members[static_cast<std::size_t>(it - sets.begin())].push_back(raw_name(a));
      }
      for (std::size_t g = 0; g < sets.size(); ++g) {
        for (std::string& line : join_names(members[g])) out.push_back(std::move(line));
        for (const std::string& aff : sets[g]) out.push_back(raw_affiliation(aff));
      }
      return out;
    }
    std::vector<std::string> names;
    for (const GroundTruthAuthor& a : truth_.authors) {
      std::vector<std::size_t> idx;
      for (const std::string& aff : a.affiliations) idx.push_back(index_of(aff));
      names.push_back(raw_name(a) + markers.render(idx));
    }
    out = join_names(names);
    for (std::size_t f = 0; f < truth_.affiliations.size(); ++f) {
      out.push_back(markers.render({f}) + raw_affiliation(truth_.affiliations[f]));
    }
    return out;
  }

  // Source forms keep accents and markup; ground truth holds plain text.
  std::string raw_name(const GroundTruthAuthor& a) const {
    const std::size_t i = static_cast<std::size_t>(&a - truth_.authors.data());
    return i < l_.authors.size() ? replace_breaks(l_.authors[i].name) : a.name;
  }

  std::string raw_affiliation(const std::string& plain) const {
    for (const LogicalAuthor& a : l_.authors) {
      for (const std::string& aff : a.affiliations) {
        if (text::collapse_whitespace(text::plain(aff)) == plain) return replace_breaks(aff);
      }
    }
    return plain;
  }

  std::string abstract_block() {
    const std::string body = text::trim(src_.substr(l_.abstract_inner.start, l_.abstract_inner.size()));
    if (has(Profile::UnlabeledAbstract)) return "\\begin{center}\n\\small " + body + "\n\\end{center}\n";
    std::string label = parameter(profiles_, "label");
    std::size_t form = rng_.pick(4);
    const bool paragraphs = body.find("\n\n") != std::string::npos || body.find("\\par") != std::string::npos;
    if (paragraphs) form = 2;
    if (label.empty()) label = form == 3 ? "Summary" : "Abstract";
    switch (form) {
      case 0: return "{\\bf " + label + ". }{\\it " + body + "}\n";
      case 1: return "\\noindent{\\bf " + label + ":} " + body + "\n";
      case 2: return "\\begin{center}{\\bf " + label + "}\\end{center}\n" + body + "\n";
      default: return "\\textbf{" + label + ".} " + body + "\n";
    }
  }

  bool paragraph_break_before(std::size_t at) const {
    auto ends_par = [&](std::size_t i) { return i >= 4 && src_.compare(i - 4, 4, "\\par") == 0; };
    std::size_t i = at;
    while (i > l_.body.start && (src_[i - 1] == ' ' || src_[i - 1] == '\t')) --i;
    if (i <= l_.body.start || ends_par(i)) return true;
    if (src_[i - 1] != '\n') return false;
    --i;
    while (i > l_.body.start && (src_[i - 1] == ' ' || src_[i - 1] == '\t')) --i;
    return i <= l_.body.start || src_[i - 1] == '\n' || ends_par(i);
  }

  void sections() {
    static const char* const variants[] = {
        "\\medskip\\noindent{\\bf %N. %S}%L\\par",
        "\\medskip\\noindent\\textbf{%N. %S}%L\\par",
        "\\bigskip\\noindent{\\large\\bf %N\\quad %S}%L\\par",
        "\\noindent\\textbf{\\large %N %S}%L\\par",
    };
    const std::string pattern = variants[rng_.pick(4)];
    int counters[3] = {0, 0, 0};
    for (const LogicalSection& s : l_.sections) {
      const int level = std::clamp(s.level, 1, 3);
      std::string number;
      if (!s.starred) {
        ++counters[level - 1];
        for (int k = level; k < 3; ++k) counters[k] = 0;
        for (int k = 0; k < level; ++k) number += (k ? "." : "") + std::to_string(counters[k]);
      }
      SourceSpan span = s.site.span;
      std::string label;
      std::size_t p = span.end;
      while (p < src_.size() && (src_[p] == ' ' || src_[p] == '\t')) ++p;
      if (p < src_.size() && src_[p] == '\n') ++p;
      while (p < src_.size() && (src_[p] == ' ' || src_[p] == '\t')) ++p;
      if (src_.compare(p, 7, "\\label{") == 0) {
        const std::size_t close = count_braced(src_, p + 6);
        if (close != std::string::npos) {
          label = src_.substr(p, close - p);
          span.end = close;
        }
      }
      const std::string heading = replace_breaks(s.heading);
      std::string out;
      if (number.empty()) {
        out = "\\medskip\\noindent{\\bf " + heading + "}" + label + "\\par";
      } else {
        out = pattern;
        auto sub = [&](const std::string& key, const std::string& value) {
          const std::size_t at = out.find(key);
          if (at != std::string::npos) out.replace(at, key.size(), value);
        };
        sub("%N", number);
        sub("%S", heading);
        sub("%L", label);
      }
      if (!paragraph_break_before(span.start)) out = "\\par" + out;
      edits_.push_back(Edit{span, out, "section"});
    }
  }

  void emphases() {
    const std::string choice = parameter(profiles_, "emphasis");
    for (const CommandSite& e : l_.emphases) {
      if (l_.abstract_env && l_.abstract_env->contains(e.span)) continue;
      const std::string inner = src_.substr(e.argument.start, e.argument.size());
      const bool wrapper = choice.empty() ? rng_.pick(2) == 1 : choice == "textit";
      edits_.push_back(Edit{e.span, wrapper ? "\\textit{" + inner + "}" : "{\\it " + inner + "}", "emphasis"});
    }
  }

  const std::string& src_;
  const LogicalDocument& l_;
  const GroundTruth& truth_;
  const std::vector<DegradationProfile>& profiles_;
  Rng rng_;
  std::vector<Edit> edits_;
};

GroundTruth truth_of(const LogicalDocument& l, const std::string& src) {
  GroundTruth gt;
  auto plain = [](const std::string& raw) { return text::collapse_whitespace(text::plain(raw)); };
  if (l.title) gt.title = plain(replace_breaks(src.substr(l.title->argument.start, l.title->argument.size())));
  for (const LogicalAuthor& a : l.authors) {
    GroundTruthAuthor g;
    g.name = plain(a.name);
    for (const std::string& aff : a.affiliations) {
      const std::string p = plain(aff);
      if (std::find(g.affiliations.begin(), g.affiliations.end(), p) == g.affiliations.end()) g.affiliations.push_back(p);
      if (std::find(gt.affiliations.begin(), gt.affiliations.end(), p) == gt.affiliations.end())
        gt.affiliations.push_back(p);
    }
    gt.authors.push_back(std::move(g));
  }
  if (l.abstract_env) gt.abstract = plain(src.substr(l.abstract_inner.start, l.abstract_inner.size()));
  for (const LogicalSection& s : l.sections) gt.sections.push_back({s.level, plain(s.heading)});
  for (const CommandSite& e : l.emphases) {
    if (!(l.abstract_env && l.abstract_env->contains(e.span))) ++gt.emphases;
  }
  return gt;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& bytes) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << bytes;
  if (!out) throw std::runtime_error("cannot write " + p.string());
}

}  // namespace

const char* to_string(Profile profile) {
  for (const auto& n : kNames) {
    if (n.profile == profile) return n.name;
  }
  return "?";
}

std::optional<Profile> profile_from_string(std::string_view name) {
  for (const auto& n : kNames) {
    if (name == n.name) return n.profile;
  }
  return std::nullopt;
}

const std::vector<Profile>& all_profiles() {
  static const std::vector<Profile> all = [] {
    std::vector<Profile> v;
    for (const auto& n : kNames) v.push_back(n.profile);
    return v;
  }();
  return all;
}

std::string GroundTruth::to_json() const {
  json j;
  j["title"] = title;
  j["authors"] = json::array();
  for (const auto& a : authors) j["authors"].push_back({{"name", a.name}, {"affiliations", a.affiliations}});
  j["affiliations"] = affiliations;
  j["abstract"] = abstract;
  j["sections"] = json::array();
  for (const auto& s : sections) j["sections"].push_back({{"level", s.level}, {"heading", s.heading}});
  j["emphases"] = emphases;
  return j.dump(2) + "\n";
}

GroundTruth GroundTruth::from_json(const std::string& text) {
  const json j = json::parse(text);
  GroundTruth gt;
  gt.title = j.value("title", "");
  for (const auto& a : j.value("authors", json::array())) {
    gt.authors.push_back({a.value("name", ""), a.value("affiliations", std::vector<std::string>{})});
  }
  gt.affiliations = j.value("affiliations", std::vector<std::string>{});
  gt.abstract = j.value("abstract", "");
  for (const auto& s : j.value("sections", json::array())) gt.sections.push_back({s.value("level", 1), s.value("heading", "")});
  gt.emphases = j.value("emphases", std::size_t{0});
  return gt;
}

GroundTruth ground_truth(const std::string& source) { return truth_of(extract_logical(parse(source)), source); }

Degraded degrade(const std::string& source, const std::vector<DegradationProfile>& profiles, std::uint64_t seed) {
  const BlockTree tree = parse(source);
  const Analysis analysis = analyze(tree);
  const FormattingClass found = classify(analysis);
  if (found.kind != FormattingKind::Logical) {
    throw NotLogical(found, std::string("input classifies as ") + to_string(found.kind));
  }
  Degraded out;
  out.truth = truth_of(analysis.logical, source);
  if (profiles.empty()) {
    out.source = source;
    return out;
  }
  out.source = Degrader(source, analysis.logical, out.truth, profiles, seed).run();
  return out;
}

Degraded degrade(const std::string& source, const std::vector<Profile>& profiles, std::uint64_t seed) {
  std::vector<DegradationProfile> full;
  for (Profile p : profiles) full.push_back({p, {}});
  return degrade(source, full, seed);
}

std::size_t Manifest::pairs() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const ManifestRow& r) { return r.skipped.empty(); }));
}

std::size_t Manifest::skips() const { return rows.size() - pairs(); }

std::string Manifest::to_jsonl() const {
  std::string out;
  for (const ManifestRow& r : rows) {
    json j;
    j["source"] = r.source;
    if (!r.skipped.empty()) {
      j["skipped"] = r.skipped;
    } else {
      j["original"] = r.original;
      j["visual"] = r.visual;
      j["sidecar"] = r.sidecar;
      j["profiles"] = r.profiles;
      j["seed"] = r.seed;
      j["sha256"] = {{"original", r.original_sha256}, {"visual", r.visual_sha256}, {"sidecar", r.sidecar_sha256}};
    }
    out += j.dump() + "\n";
  }
  return out;
}

Manifest emit_pairs(const fs::path& corpus, const fs::path& out, const std::vector<std::vector<Profile>>& profile_sets,
                    const std::vector<std::uint64_t>& seeds) {
  std::vector<fs::path> files;
  const bool single = fs::is_regular_file(corpus);
  const fs::path base = single ? corpus.parent_path() : corpus;
  if (single) {
    files.push_back(corpus);
  } else {
    for (const auto& entry : fs::recursive_directory_iterator(corpus)) {
      if (entry.is_regular_file() && entry.path().extension() == ".tex") files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  Manifest manifest;
  fs::create_directories(out);
  for (const fs::path& file : files) {
    std::string stem = fs::relative(file, base).replace_extension().generic_string();
    std::replace(stem.begin(), stem.end(), '/', '_');
    const std::string source = read_file(file);
    const FormattingClass found = classify(parse(source));
    if (found.kind != FormattingKind::Logical) {
      ManifestRow skip;
      skip.source = file.generic_string();
      skip.skipped = std::string("NotLogical: ") + to_string(found.kind);
      manifest.rows.push_back(std::move(skip));
      continue;
    }
    const std::string original = stem + "/original.tex";
    write_file(out / original, source);
    const std::string original_sha = sha256_hex(source);
    for (const auto& set : profile_sets) {
      std::string key;
      std::vector<std::string> names;
      for (Profile p : set) {
        names.push_back(to_string(p));
        key += (key.empty() ? "" : "+") + names.back();
      }
      if (key.empty()) key = "none";
      for (std::uint64_t seed : seeds) {
        const Degraded d = degrade(source, set, seed);
        ManifestRow row;
        row.source = file.generic_string();
        row.original = original;
        row.visual = stem + "/" + key + ".s" + std::to_string(seed) + ".visual.tex";
        row.sidecar = stem + "/" + key + ".s" + std::to_string(seed) + ".truth.json";
        const std::string sidecar = d.truth.to_json();
        write_file(out / row.visual, d.source);
        write_file(out / row.sidecar, sidecar);
        row.profiles = names;
        row.seed = seed;
        row.original_sha256 = original_sha;
        row.visual_sha256 = sha256_hex(d.source);
        row.sidecar_sha256 = sha256_hex(sidecar);
        manifest.rows.push_back(std::move(row));
      }
    }
  }
  write_file(out / "manifest.jsonl", manifest.to_jsonl());
  return manifest;
}

}  // namespace texlogic
