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

#include "layout.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace texlogic {

namespace {

constexpr std::array<std::string_view, 24> kInstitutionKeywords = {
    "Universit", "Institut",   "Department", "Dept.",     "Laborator",   "Laboratoire", "School",  "Center",
    "Centre",    "College",    "Faculty",    "Academy",   "Observator",  "Dipartimento", "Departamento",
    "Research",  "Hospital",   "Inc.",       "Corporation", "Labs",     "Universidad", "Facult", "Istituto",
    "Ecole"};

constexpr std::array<std::string_view, 24> kParticles = {"de",  "da",  "van", "von", "der", "den", "del", "della",
                                                         "di",  "du",  "la",  "le",  "y",   "dos", "das", "ten",
                                                         "ter", "bin", "al",  "el",  "zu",  "do",  "dei", "e"};

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }

bool is_initial(std::string_view w) {
  // J.  J.-P.  Ch.
  if (w.size() < 2 || w.back() != '.') return false;
  std::size_t i = 0;
  while (i < w.size()) {
    if (!is_upper(w[i])) return false;
    ++i;
    while (i < w.size() && is_lower(w[i])) ++i;
    if (i >= w.size() || w[i] != '.') return false;
    ++i;
    if (i < w.size() && w[i] == '-') ++i;
  }
  return true;
}

bool is_capitalized(std::string_view w) {
  if (w.empty() || !is_upper(w[0])) return false;
  return std::all_of(w.begin() + 1, w.end(), [](char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '-' || c == '\'' || c == '.';
  });
}

}  // namespace

std::string institution_keyword(std::string_view raw) {
  const std::string folded = text::fold_accents(text::plain(raw), false);
  for (std::string_view k : kInstitutionKeywords) {
    if (folded.find(k) != std::string::npos) return std::string(k);
  }
  return {};
}

bool is_name_shaped(std::string_view raw) {
  std::string folded = text::fold_accents(text::plain(raw), false);
  std::replace(folded.begin(), folded.end(), '~', ' ');
  if (!institution_keyword(raw).empty()) return false;
  if (folded.find_first_of("0123456789@:;()[]$=") != std::string::npos) return false;
  std::vector<std::string_view> words;
  std::string_view s = folded;
  while (!s.empty()) {
    const std::size_t a = s.find_first_not_of(' ');
    if (a == std::string_view::npos) break;
    s.remove_prefix(a);
    const std::size_t b = std::min(s.find(' '), s.size());
    words.push_back(s.substr(0, b));
    s.remove_prefix(b);
  }
  if (words.size() < 2 || words.size() > 6) return false;
  std::size_t capitalized = 0;
  for (std::string_view w : words) {
    if (is_initial(w) || is_capitalized(w)) {
      ++capitalized;
      continue;
    }
    if (std::find(kParticles.begin(), kParticles.end(), w) != kParticles.end()) continue;
    return false;
  }
  const std::string_view last = words.back();
  return capitalized >= 1 && (is_capitalized(last) || is_initial(last));
}

namespace layout {

namespace {

using text::StyleState;

bool one_of(std::string_view w, std::initializer_list<std::string_view> words) {
  return std::find(words.begin(), words.end(), w) != words.end();
}

bool is_ws(const TokenStream& ts, const Node& n) {
  return n.is_leaf() && (ts[n.token].kind == TokenKind::Whitespace);
}

std::string_view word_of(const TokenStream& ts, const Node& n) {
  if (!n.is_leaf() || ts[n.token].kind != TokenKind::ControlWord) return {};
  return ts.name(ts[n.token]);
}

bool is_prefix_command(std::string_view w) {
  return one_of(w, {"noindent", "indent", "leavevmode", "hfill", "hfil", "null", "relax", "strut", "protect",
                    "hss", "centering", "raggedright", "raggedleft"});
}

bool is_container_env(std::string_view name) {
  return one_of(name, {"center", "flushleft", "flushright", "titlepage", "minipage", "raggedright", "raggedleft",
                       "quote", "quotation", "tiny", "scriptsize", "footnotesize", "small", "normalsize", "large",
                       "Large", "LARGE", "huge", "Huge"});
}

bool group_has_break(const TokenStream& ts, const Node& g) {
  for (const Node& c : g.children) {
    if (c.is_leaf()) {
      const Token& t = ts[c.token];
      if (t.kind == TokenKind::ParBreak) return true;
      if (t.kind == TokenKind::ControlSymbol && ts.name(t) == "\\") return true;
      const std::string_view w = word_of(ts, c);
      if (w == "par" || w == "newline" || w == "centerline" || is_vertical_spacing(w)) return true;
    } else if (c.kind == NodeKind::Environment && is_container_env(c.name)) {
      return true;
    }
  }
  return false;
}

// Token index just past a dimension such as `1cm` following \vskip.
bool is_dimension_text(std::string_view t) {
  return !t.empty() && (std::isdigit(static_cast<unsigned char>(t[0])) || t[0] == '-' || t[0] == '.');
}

class Segmenter {
 public:
  Segmenter(const BlockTree& tree, Segmentation& out) : tree_(tree), ts_(tree.tokens()), src_(tree.source()), out_(out) {}

  void run(const SourceSpan& region) {
    Ctx ctx;
    walk(body_nodes(tree_), ctx, &region);
    flush(ctx, npos);
  }

 private:
  struct Ctx {
    StyleState style;
    bool centered = false;
    bool titlepage = false;
    std::size_t container = npos;
  };

  void walk(const std::vector<Node>& nodes, Ctx& ctx, const SourceSpan* region) {
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const Node& n = nodes[k];
      if (region) {
        if (n.span.start >= region->end) break;
        if (n.span.start < region->start || n.span.end > region->end) continue;
      }
      k = node(nodes, k, ctx);
    }
  }

  std::size_t node(const std::vector<Node>& nodes, std::size_t k, Ctx& ctx) {
    const Node& n = nodes[k];
    if (n.kind == NodeKind::Math) {
      add(n.span.start, n.span.end, true);
      return k;
    }
    if (n.kind == NodeKind::Group) {
      if (n.closed && group_has_break(ts_, n)) {
        flush(ctx, npos);
        Ctx inner = ctx;
        open_container("group", n.span, inner);
        walk(n.children, inner, nullptr);
        flush(inner, npos);
        return k;
      }
      add(n.span.start, n.span.end, true);
      return k;
    }
    if (n.kind == NodeKind::Environment) {
      if (!is_container_env(n.name) || !n.closed) {
        if (n.name == "abstract") pending_logical_ = true;
        add(n.span.start, n.span.end, true);
        if (n.name == "abstract") flush(ctx, npos);
        return k;
      }
      flush(ctx, npos);
      Ctx inner = ctx;
      if (n.name == "center") inner.centered = true;
      if (n.name == "titlepage") inner.titlepage = true;
      text::apply_switch(n.name, inner.style);
      open_container(n.name, n.span, inner);
      std::size_t skip = 0;
      if (n.name == "minipage") skip = minipage_args(n);
      std::vector<Node> rest(n.children.begin() + static_cast<std::ptrdiff_t>(skip), n.children.end());
      next_paragraph_ = true;
      walk(rest, inner, nullptr);
      flush(inner, npos);
      next_paragraph_ = true;
      return k;
    }
    const Token& t = ts_[n.token];
    switch (t.kind) {
      case TokenKind::Whitespace:
        return k;
      case TokenKind::ParBreak:
        flush(ctx, npos);
        next_paragraph_ = true;
        return k;
      case TokenKind::Comment:
        flush(ctx, npos);
        for (std::size_t c = ctx.container; c != npos; c = out_.containers[c].parent) out_.containers[c].has_comment = true;
        return k;
      case TokenKind::ControlSymbol:
        if (ts_.name(t) == "\\") return line_break(nodes, k, ctx);
        add(t.span.start, t.span.end, true);
        return k;
      case TokenKind::ControlWord:
        return control_word(nodes, k, ctx);
      default:
        add(t.span.start, t.span.end, true);
        return k;
    }
  }

  std::size_t minipage_args(const Node& env) {
    std::size_t i = 0;
    const auto& c = env.children;
    auto skip_ws = [&] {
      while (i < c.size() && is_ws(ts_, c[i])) ++i;
    };
    skip_ws();
    while (i < c.size() && c[i].is_leaf() && ts_[c[i].token].kind == TokenKind::Text &&
           ts_.text(ts_[c[i].token]).front() == '[' && ts_.text(ts_[c[i].token]).back() == ']') {
      ++i;
      skip_ws();
    }
    if (i < c.size() && c[i].kind == NodeKind::Group) ++i;
    return i;
  }

  std::size_t line_break(const std::vector<Node>& nodes, std::size_t k, Ctx& ctx) {
    std::size_t glue = nodes[k].span.end;
    std::size_t j = k + 1;
    if (j < nodes.size() && nodes[j].is_leaf() && ts_[nodes[j].token].kind == TokenKind::Text) {
      const Token& t = ts_[nodes[j].token];
      std::string_view s = ts_.text(t);
      std::size_t used = 0;
      if (!s.empty() && s[0] == '*') used = 1;
      if (used < s.size() && s[used] == '[') {
        const std::size_t close = s.find(']', used);
        if (close != std::string_view::npos) used = close + 1;
      }
      if (used > 0) {
        glue = t.span.start + used;
        flush(ctx, glue);
        if (used < s.size()) add(t.span.start + used, t.span.end, true);
        return j;
      }
    }
    flush(ctx, glue);
    return k;
  }

  std::size_t control_word(const std::vector<Node>& nodes, std::size_t k, Ctx& ctx) {
    const Token& t = ts_[nodes[k].token];
    const std::string_view w = ts_.name(t);
    if (w == "par" || w == "newline" || w == "linebreak") {
      flush(ctx, t.span.end);
      if (w == "par") next_paragraph_ = true;
      return k;
    }
    if (is_vertical_spacing(w) || w == "thispagestyle" || w == "pagestyle") {
      flush(ctx, npos);
      next_paragraph_ = true;
      std::size_t j = k + 1;
      if (text::takes_dimension_argument(w)) {
        while (j < nodes.size() && (is_ws(ts_, nodes[j]) || (nodes[j].is_leaf() && ts_.text(ts_[nodes[j].token]) == "*")))
          ++j;
        if (j < nodes.size() && nodes[j].kind == NodeKind::Group) return j;
        return k;
      }
      if (w == "vskip") {
        while (j < nodes.size() && is_ws(ts_, nodes[j])) ++j;
        if (j < nodes.size() && nodes[j].is_leaf() && ts_[nodes[j].token].kind == TokenKind::Text &&
            is_dimension_text(ts_.text(ts_[nodes[j].token])))
          return j;
      }
      return k;
    }
    if (w == "centering") ctx.centered = true;
    if (w == "centerline" || w == "centerline*") {
      std::size_t j = k + 1;
      while (j < nodes.size() && is_ws(ts_, nodes[j])) ++j;
      if (j < nodes.size() && nodes[j].kind == NodeKind::Group && nodes[j].closed) {
        flush(ctx, npos);
        add(t.span.start, nodes[j].span.end, true);
        flush(ctx, npos, true);
        return j;
      }
    }
    if (one_of(w, {"title", "author", "date", "maketitle", "affiliation", "affil", "address", "institute", "section",
                   "email", "keywords"}))
      pending_logical_ = true;
    const bool content = !is_prefix_command(w) && !text::apply_switch(w, scratch_);
    add(t.span.start, t.span.end, content);
    return k;
  }

  void open_container(const std::string& kind, const SourceSpan& span, Ctx& inner) {
    Container c;
    c.kind = kind;
    c.span = span;
    c.parent = inner.container;
    inner.container = out_.containers.size();
    out_.containers.push_back(std::move(c));
  }

  void add(std::size_t start, std::size_t end, bool content) {
    if (pending_start_ == npos) pending_start_ = start;
    pending_end_ = end;
    pending_content_ = pending_content_ || content;
  }

  void flush(Ctx& ctx, std::size_t glue, bool centerline = false) {
    if (pending_start_ == npos) return;
    std::size_t a = pending_start_, b = pending_end_;
    pending_start_ = npos;
    const bool content = pending_content_;
    pending_content_ = false;
    const bool logical = pending_logical_;
    pending_logical_ = false;
    while (a < b && std::isspace(static_cast<unsigned char>(src_[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(src_[b - 1]))) --b;
    const std::string raw = src_.substr(a, b - a);
    const StyleState base = ctx.style;
    ctx.style = carry_style(raw, base);
    if (!content || a == b) return;
    const std::string body = text::unwrap(raw);
    const std::string plain = text::plain(body);
    if (plain.empty() && !logical) return;

    Line line;
    line.span = SourceSpan{a, b, line_of(a)};
    line.extent = SourceSpan{a, glue == npos ? b : std::max(glue, b), line.span.line};
    bool wrapped_center = centerline;
    const StyleState st = line_style(raw, base, wrapped_center);
    line.bold = st.bold;
    line.italic = st.italic;
    line.large = st.large();
    line.small = st.small();
    line.centered = ctx.centered || wrapped_center;
    line.titlepage = ctx.titlepage;
    line.paragraph_start = next_paragraph_;
    line.logical = logical;
    line.container = ctx.container;
    line.raw = raw;
    line.content = body;
    line.words = count_words(plain);
    next_paragraph_ = false;
    const std::size_t index = out_.lines.size();
    for (std::size_t c = ctx.container; c != npos; c = out_.containers[c].parent) out_.containers[c].lines.push_back(index);
    out_.lines.push_back(std::move(line));
  }

  std::size_t line_of(std::size_t offset) const {
    return 1 + static_cast<std::size_t>(std::count(src_.begin(), src_.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
  }

  const BlockTree& tree_;
  const TokenStream& ts_;
  const std::string& src_;
  Segmentation& out_;
  std::size_t pending_start_ = npos;
  std::size_t pending_end_ = 0;
  bool pending_content_ = false;
  bool pending_logical_ = false;
  bool next_paragraph_ = true;
  StyleState scratch_;
};

// Walks a parsed line, applying leading switches and descending into a single
// enclosing group or style wrapper.
void scan_style(const TokenStream& ts, const std::string& src, const std::vector<Node>& nodes, StyleState& st,
                bool& centered) {
  std::vector<std::size_t> meaningful;
  std::size_t k = 0;
  for (; k < nodes.size(); ++k) {
    const Node& n = nodes[k];
    if (is_ws(ts, n)) continue;
    const std::string_view w = word_of(ts, n);
    if (!w.empty() && (text::apply_switch(w, st) || is_prefix_command(w))) continue;
    break;
  }
  for (; k < nodes.size(); ++k) {
    const Node& n = nodes[k];
    if (is_ws(ts, n)) continue;
    std::size_t last = k;
    if (is_marker_node(ts, nodes, k, last)) {
      k = last;
      continue;
    }
    if (n.is_leaf() && (ts.is_symbol(n.token, '\\') || ts.is_symbol(n.token, '/'))) continue;
    if (n.is_leaf() && ts[n.token].kind == TokenKind::Text) {
      const std::string_view t = ts.text(ts[n.token]);
      if (t.front() == '[' && t.back() == ']' && !meaningful.empty() && k > 0) continue;
    }
    meaningful.push_back(k);
  }
  (void)src;
  if (meaningful.size() == 1 && nodes[meaningful[0]].kind == NodeKind::Group) {
    scan_style(ts, src, nodes[meaningful[0]].children, st, centered);
    return;
  }
  if (meaningful.size() == 2 && nodes[meaningful[1]].kind == NodeKind::Group) {
    const std::string_view w = word_of(ts, nodes[meaningful[0]]);
    if (w == "centerline") {
      centered = true;
      scan_style(ts, src, nodes[meaningful[1]].children, st, centered);
      return;
    }
    if (!w.empty() && w != "emph" && text::apply_wrapper(w, st)) {
      scan_style(ts, src, nodes[meaningful[1]].children, st, centered);
    }
  }
}

}  // namespace

const std::vector<Node>& body_nodes(const BlockTree& tree) {
  for (const Node& n : tree.nodes()) {
    if (n.kind == NodeKind::Environment && n.name == "document") return n.children;
  }
  return tree.nodes();
}

Segmentation segment(const BlockTree& tree, const SourceSpan& region) {
  Segmentation out;
  Segmenter(tree, out).run(region);
  std::size_t ordinal = 0;
  for (Line& l : out.lines) {
    if (!l.logical) l.ordinal = ordinal++;
  }
  return out;
}

StyleState line_style(std::string_view raw, StyleState base, bool& centered) {
  const BlockTree tree = parse(std::string(raw));
  scan_style(tree.tokens(), tree.source(), tree.nodes(), base, centered);
  return base;
}

StyleState carry_style(std::string_view raw, StyleState base) {
  const BlockTree tree = parse(std::string(raw));
  const TokenStream& ts = tree.tokens();
  for (const Node& n : tree.nodes()) {
    const std::string_view w = word_of(ts, n);
    if (!w.empty()) text::apply_switch(w, base);
  }
  return base;
}

std::vector<Paragraph> paragraphs(const TokenStream& ts, const std::vector<Node>& siblings, std::size_t from) {
  std::vector<Paragraph> out;
  Paragraph cur;
  auto close = [&](const Node* par) {
    while (!cur.nodes.empty() && is_ws(ts, *cur.nodes.back())) cur.nodes.pop_back();
    if (!cur.nodes.empty()) {
      cur.span = SourceSpan{cur.nodes.front()->span.start, cur.nodes.back()->span.end, cur.nodes.front()->span.line};
      cur.par = par;
      out.push_back(std::move(cur));
    }
    cur = Paragraph{};
  };
  for (const Node& n : siblings) {
    if (n.span.start < from) continue;
    if (n.is_leaf()) {
      const Token& t = ts[n.token];
      if (t.kind == TokenKind::ParBreak) {
        close(nullptr);
        continue;
      }
      if (t.kind == TokenKind::ControlWord && ts.name(t) == "par") {
        close(&n);
        continue;
      }
      if (cur.nodes.empty() && t.kind == TokenKind::Whitespace) continue;
      if (t.kind == TokenKind::ControlWord && is_vertical_spacing(ts.name(t)) && ts.name(t) != "vspace") close(nullptr);
    }
    cur.nodes.push_back(&n);
  }
  close(nullptr);
  return out;
}

MaketitleFacts maketitle_facts(const BlockTree& tree) {
  MaketitleFacts f;
  const TokenStream& ts = tree.tokens();
  // Definitions: \def\name ... { body }, \newcommand{\name}...{body}.
  std::vector<std::string> callers;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (ts[i].kind != TokenKind::ControlWord) continue;
    const std::string_view w = ts.name(ts[i]);
    if (!one_of(w, {"def", "gdef", "edef", "xdef", "newcommand", "renewcommand", "providecommand"})) continue;
    std::size_t j = i + 1;
    while (j < ts.size() && (ts[j].kind == TokenKind::Whitespace || ts[j].kind == TokenKind::BeginGroup ||
                             (ts[j].kind == TokenKind::Text && ts.text(ts[j]) == "*")))
      ++j;
    if (j >= ts.size() || ts[j].kind != TokenKind::ControlWord) continue;
    const std::string name(ts.name(ts[j]));
    std::size_t open = j + 1;
    if (ts[j - 1].kind == TokenKind::BeginGroup) {
      while (open < ts.size() && ts[open].kind != TokenKind::EndGroup) ++open;
      ++open;
    }
    while (open < ts.size() && ts[open].kind != TokenKind::BeginGroup && ts[open].kind != TokenKind::ParBreak) ++open;
    if (open >= ts.size() || ts[open].kind != TokenKind::BeginGroup) continue;
    const std::size_t close = tree.matching_brace(open);
    if (close == std::string::npos) continue;
    if (name == "maketitle") {
      f.redefined = true;
      continue;
    }
    for (std::size_t k = open + 1; k < close; ++k) {
      if (ts.is_word(k, "maketitle")) {
        callers.push_back(name);
        break;
      }
    }
    i = close;
  }
  // Invocations inside the body.
  std::vector<const Node*> stack;
  for (const Node& n : body_nodes(tree)) stack.push_back(&n);
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (n->in_definition || n->kind == NodeKind::Math) continue;
    if (n->is_leaf()) {
      const std::string_view w = word_of(ts, *n);
      if (w == "maketitle") f.present = true;
      if (!callers.empty() && std::find(callers.begin(), callers.end(), w) != callers.end()) {
        f.custom_macro = std::string(w);
        f.custom_invoked = true;
        f.present = true;
      }
      continue;
    }
    for (const Node& c : n->children) stack.push_back(&c);
  }
  if (f.custom_macro.empty() && !callers.empty()) f.custom_macro = callers.front();
  return f;
}

bool is_vertical_spacing(std::string_view w) {
  return one_of(w, {"medskip", "bigskip", "smallskip", "vspace", "vskip", "vfill", "newpage", "clearpage",
                    "smallbreak", "medbreak", "bigbreak", "pagebreak", "nopagebreak", "enlargethispage",
                    "addvspace", "cleardoublepage"});
}

bool is_marker_node(const TokenStream& ts, const std::vector<Node>& siblings, std::size_t k, std::size_t& last) {
  const Node& n = siblings[k];
  last = k;
  const std::string& src = ts.source();
  if (n.kind == NodeKind::Math) {
    return !find_marker_sites(src.substr(n.span.start, n.span.size())).empty();
  }
  const std::string_view w = word_of(ts, n);
  if (w == "textsuperscript" && k + 1 < siblings.size() && siblings[k + 1].kind == NodeKind::Group) {
    last = k + 1;
    return true;
  }
  if (w == "footnotemark") {
    if (k + 1 < siblings.size() && siblings[k + 1].is_leaf() && ts[siblings[k + 1].token].kind == TokenKind::Text &&
        ts.text(ts[siblings[k + 1].token]).front() == '[')
      last = k + 1;
    return true;
  }
  return one_of(w, {"dag", "ddag", "textdagger", "textdaggerdbl", "textasteriskcentered"});
}

std::size_t count_words(std::string_view plain) {
  std::size_t n = 0;
  bool in_word = false;
  for (char c : plain) {
    const bool space = c == ' ' || c == '\n' || c == '\t';
    if (!space && !in_word) ++n;
    in_word = !space;
  }
  return n;
}

bool looks_like_date(std::string_view plain) {
  static constexpr std::array<std::string_view, 12> months = {"January", "February", "March",     "April",
                                                              "May",     "June",     "July",      "August",
                                                              "September", "October", "November", "December"};
  if (plain.find("\\today") != std::string_view::npos || plain.find("Dated") != std::string_view::npos ||
      plain.find("Received") != std::string_view::npos || plain.find("Date:") != std::string_view::npos)
    return true;
  const bool digit = plain.find_first_of("0123456789") != std::string_view::npos;
  if (!digit || count_words(plain) > 5) return false;
  return std::any_of(months.begin(), months.end(),
                     [&](std::string_view m) { return plain.find(m) != std::string_view::npos; });
}

bool looks_like_email(std::string_view raw) {
  return raw.find('@') != std::string_view::npos || raw.find("\\email") != std::string_view::npos ||
         raw.find("E-mail") != std::string_view::npos || raw.find("e-mail") != std::string_view::npos;
}

}  // namespace layout
}  // namespace texlogic
