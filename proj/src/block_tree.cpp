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

#include <algorithm>
#include <array>
#include <optional>

#include "texlogic/lexer.hpp"

namespace texlogic {

namespace {

constexpr std::array<std::string_view, 19> kMathEnvs = {
    "equation", "equation*", "align",     "align*",     "gather",   "gather*",  "displaymath",
    "eqnarray", "eqnarray*", "multline",  "multline*",  "flalign",  "flalign*", "alignat",
    "alignat*", "math",      "dmath",     "dmath*",     "split"};

constexpr std::array<std::string_view, 10> kDefinitionWords = {
    "def", "gdef", "edef", "xdef", "newcommand", "renewcommand", "providecommand", "DeclareRobustCommand",
    "newenvironment", "renewenvironment"};

std::vector<std::size_t> match_braces(const TokenStream& ts) {
  std::vector<std::size_t> match(ts.size(), std::string::npos);
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (ts[i].opaque) continue;
    if (ts[i].kind == TokenKind::BeginGroup) {
      open.push_back(i);
    } else if (ts[i].kind == TokenKind::EndGroup && !open.empty()) {
      match[open.back()] = i;
      match[i] = open.back();
      open.pop_back();
    }
  }
  return match;
}

std::size_t skip_ws(const TokenStream& ts, std::size_t i) {
  while (i < ts.size() && ts[i].kind == TokenKind::Whitespace) ++i;
  return i;
}

// Skips a bracketed optional argument starting at token i; returns the index
// of the first token after it, or i if there is none.
std::size_t skip_optional(const TokenStream& ts, const std::vector<std::size_t>& match, std::size_t i) {
  i = skip_ws(ts, i);
  if (i >= ts.size() || ts[i].kind != TokenKind::Text || ts.text(ts[i]).front() != '[') return i;
  for (std::size_t j = i; j < ts.size(); ++j) {
    if (ts[j].kind == TokenKind::BeginGroup && match[j] != std::string::npos) {
      j = match[j];
      continue;
    }
    if (ts[j].kind == TokenKind::Text && ts.text(ts[j]).find(']') != std::string_view::npos) return j + 1;
  }
  return i;
}

// Marks tokens inside the bodies of macro definitions. Bodies that never close
// are left unmarked so their contents are diagnosed like ordinary source.
std::vector<bool> definition_bodies(const TokenStream& ts, const std::vector<std::size_t>& match) {
  std::vector<bool> in_def(ts.size(), false);
  auto mark = [&](std::size_t open) -> std::size_t {
    if (open >= ts.size() || ts[open].kind != TokenKind::BeginGroup) return open;
    const std::size_t close = match[open];
    if (close == std::string::npos) return open;
    for (std::size_t k = open + 1; k < close; ++k) in_def[k] = true;
    return close + 1;
  };
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (ts[i].kind != TokenKind::ControlWord || in_def[i]) continue;
    const std::string_view w = ts.name(ts[i]);
    if (std::find(kDefinitionWords.begin(), kDefinitionWords.end(), w) == kDefinitionWords.end()) continue;
    std::size_t j = i + 1;
    if (w == "def" || w == "gdef" || w == "edef" || w == "xdef") {
      while (j < ts.size() && ts[j].kind != TokenKind::BeginGroup && ts[j].kind != TokenKind::ParBreak) ++j;
      mark(j);
      continue;
    }
    j = skip_ws(ts, j);
    if (j < ts.size() && ts[j].kind == TokenKind::Text && ts.text(ts[j]) == "*") j = skip_ws(ts, j + 1);
    if (j < ts.size() && ts[j].kind == TokenKind::BeginGroup && match[j] != std::string::npos) {
      j = match[j] + 1;
    } else if (j < ts.size() && ts[j].kind == TokenKind::ControlWord) {
      ++j;
    } else {
      continue;
    }
    j = skip_optional(ts, match, j);
    j = skip_optional(ts, match, j);
    j = skip_ws(ts, j);
    j = mark(j);
    if (w == "newenvironment" || w == "renewenvironment") mark(skip_ws(ts, j));
  }
  return in_def;
}

// `\begin{name}` / `\end{name}` starting at token i: returns the name and the
// index of the closing brace token.
std::optional<std::pair<std::string, std::size_t>> env_argument(const TokenStream& ts, std::size_t i) {
  std::size_t j = skip_ws(ts, i + 1);
  if (j + 2 >= ts.size() || ts[j].kind != TokenKind::BeginGroup) return std::nullopt;
  if (ts[j + 1].kind != TokenKind::Text || ts[j + 2].kind != TokenKind::EndGroup) return std::nullopt;
  return std::make_pair(std::string(ts.text(ts[j + 1])), j + 2);
}

enum class Opener { Root, Group, Math, Env };

struct Frame {
  Opener opener;
  Node node;
};

class TreeBuilder {
 public:
  explicit TreeBuilder(const TokenStream& ts) : ts_(ts), match_(match_braces(ts)), in_def_(definition_bodies(ts, match_)) {
    Frame root{Opener::Root, Node{}};
    root.node.kind = NodeKind::Group;
    stack_.push_back(std::move(root));
  }

  void run() {
    for (std::size_t i = 0; i < ts_.size(); ++i) i = step(i);
    while (stack_.size() > 1) close_unfinished(ts_.source().size());
  }

  std::vector<Node> take_nodes() { return std::move(stack_.front().node.children); }
  std::vector<Imbalance> take_diagnostics() { return std::move(diags_); }
  std::vector<std::size_t> take_match() { return std::move(match_); }

 private:
  std::size_t step(std::size_t i) {
    const Token& t = ts_[i];
    if (t.opaque) return leaf(i);
    switch (t.kind) {
      case TokenKind::BeginGroup:
        push(Opener::Group, NodeKind::Group, i, t.span.start, t.span.end, "{");
        return i;
      case TokenKind::EndGroup:
        close_group(i);
        return i;
      case TokenKind::MathShift:
        if (in_def_[i]) return leaf(i);
        math_shift(i);
        return i;
      case TokenKind::ControlSymbol: {
        if (in_def_[i]) return leaf(i);
        const std::string_view c = ts_.name(t);
        if (c == "(" || c == "[") {
          push(Opener::Math, NodeKind::Math, i, t.span.start, t.span.end, c == "(" ? "\\(" : "\\[");
          stack_.back().node.math = c == "(" ? MathKind::Inline : MathKind::Display;
          return i;
        }
        if (c == ")" || c == "]") {
          close_math(i, c == ")" ? "\\(" : "\\[");
          return i;
        }
        return leaf(i);
      }
      case TokenKind::ControlWord: {
        const std::string_view w = ts_.name(t);
        if (in_def_[i] || (w != "begin" && w != "end")) return leaf(i);
        auto arg = env_argument(ts_, i);
        if (!arg) return leaf(i);
        const auto& [name, last] = *arg;
        if (w == "begin") {
          const bool math = is_math_environment(name);
          push(Opener::Env, math ? NodeKind::Math : NodeKind::Environment, i, t.span.start, ts_[last].span.end,
               name);
          stack_.back().node.math = name == "math" ? MathKind::Inline : MathKind::Display;
        } else {
          close_env(i, last, name);
        }
        return last;
      }
      default:
        return leaf(i);
    }
  }

  std::size_t leaf(std::size_t i) {
    Node n;
    n.kind = NodeKind::Leaf;
    n.span = ts_[i].span;
    n.inner = ts_[i].span;
    n.token = i;
    n.in_definition = in_def_[i];
    stack_.back().node.children.push_back(std::move(n));
    return i;
  }

  void push(Opener opener, NodeKind kind, std::size_t token, std::size_t start, std::size_t inner_start,
            std::string name) {
    Frame f{opener, Node{}};
    f.node.kind = kind;
    f.node.token = token;
    f.node.span = SourceSpan{start, start, ts_[token].span.line};
    f.node.inner = SourceSpan{inner_start, inner_start, ts_[token].span.line};
    f.node.name = std::move(name);
    f.node.in_definition = in_def_[token];
    stack_.push_back(std::move(f));
  }

  void pop(std::size_t inner_end, std::size_t end) {
    Frame f = std::move(stack_.back());
    stack_.pop_back();
    f.node.inner.end = std::max(inner_end, f.node.inner.start);
    f.node.span.end = end;
    stack_.back().node.children.push_back(std::move(f.node));
  }

  void close_unfinished(std::size_t at) {
    Frame& f = stack_.back();
    diags_.push_back({ImbalanceKind::Unclosed, SourceSpan{f.node.span.start, at, f.node.span.line}, f.node.name});
    f.node.closed = false;
    pop(at, at);
  }

  // Index into stack_ of the innermost frame satisfying pred, or 0 (root).
  template <typename Pred>
  std::size_t find_frame(Pred pred) const {
    for (std::size_t k = stack_.size(); k-- > 1;) {
      if (pred(stack_[k])) return k;
    }
    return 0;
  }

  void close_group(std::size_t i) {
    const Token& t = ts_[i];
    const std::size_t k = find_frame([](const Frame& f) { return f.opener == Opener::Group; });
    if (k == 0) {
      diags_.push_back({ImbalanceKind::UnmatchedClose, t.span, "}"});
      leaf(i);
      return;
    }
    while (stack_.size() - 1 > k) close_unfinished(t.span.start);
    pop(t.span.start, t.span.end);
  }

  void math_shift(std::size_t i) {
    const Token& t = ts_[i];
    const std::string shift(ts_.text(t));
    const Frame& top = stack_.back();
    if (top.opener == Opener::Math && top.node.name == shift) {
      pop(t.span.start, t.span.end);
      return;
    }
    push(Opener::Math, NodeKind::Math, i, t.span.start, t.span.end, shift);
    stack_.back().node.math = shift == "$" ? MathKind::Inline : MathKind::Display;
  }

  void close_math(std::size_t i, std::string_view opener) {
    const Token& t = ts_[i];
    const std::size_t k =
        find_frame([&](const Frame& f) { return f.opener == Opener::Math && f.node.name == opener; });
    if (k == 0) {
      diags_.push_back({ImbalanceKind::UnmatchedClose, t.span, std::string(ts_.text(t))});
      leaf(i);
      return;
    }
    while (stack_.size() - 1 > k) close_unfinished(t.span.start);
    pop(t.span.start, t.span.end);
  }

  void close_env(std::size_t i, std::size_t last, const std::string& name) {
    const Token& t = ts_[i];
    const SourceSpan whole{t.span.start, ts_[last].span.end, t.span.line};
    const std::size_t k = find_frame([&](const Frame& f) { return f.opener == Opener::Env && f.node.name == name; });
    if (k == 0) {
      const bool inside_env = find_frame([](const Frame& f) { return f.opener == Opener::Env; }) != 0;
      diags_.push_back({inside_env ? ImbalanceKind::MismatchedEnd : ImbalanceKind::EndWithoutBegin, whole, name});
      for (std::size_t j = i; j <= last; ++j) leaf(j);
      return;
    }
    while (stack_.size() - 1 > k) close_unfinished(t.span.start);
    pop(t.span.start, whole.end);
  }

  const TokenStream& ts_;
  std::vector<std::size_t> match_;
  std::vector<bool> in_def_;
  std::vector<Frame> stack_;
  std::vector<Imbalance> diags_;
};

void collect_math(const std::vector<Node>& nodes, std::vector<SourceSpan>& out) {
  for (const Node& n : nodes) {
    if (n.kind == NodeKind::Math) {
      out.push_back(n.span);
    } else if (!n.children.empty()) {
      collect_math(n.children, out);
    }
  }
}

}  // namespace

const char* to_string(ImbalanceKind kind) {
  switch (kind) {
    case ImbalanceKind::UnmatchedClose: return "unmatched-close";
    case ImbalanceKind::Unclosed: return "unclosed";
    case ImbalanceKind::MismatchedEnd: return "mismatched-end";
    case ImbalanceKind::EndWithoutBegin: return "end-without-begin";
  }
  return "?";
}

bool is_math_environment(std::string_view name) {
  return std::find(kMathEnvs.begin(), kMathEnvs.end(), name) != kMathEnvs.end();
}

std::size_t BlockTree::matching_brace(std::size_t open) const {
  return open < brace_match_.size() ? brace_match_[open] : std::string::npos;
}

BlockTree build_tree(TokenStream tokens) {
  auto shared = std::make_shared<const TokenStream>(std::move(tokens));
  TreeBuilder builder(*shared);
  builder.run();
  return BlockTree(shared, builder.take_nodes(), builder.take_diagnostics(), builder.take_match());
}

BlockTree parse(std::string source) { return build_tree(tokenize(std::move(source))); }

std::vector<SourceSpan> math_spans(const BlockTree& tree) {
  std::vector<SourceSpan> out;
  collect_math(tree.nodes(), out);
  return out;
}

std::vector<SourceSpan> verbatim_spans(const BlockTree& tree) {
  std::vector<SourceSpan> out;
  for (const Token& t : tree.tokens().tokens()) {
    if (t.opaque) out.push_back(t.span);
  }
  return out;
}

std::vector<SourceSpan> comment_spans(const BlockTree& tree) {
  std::vector<SourceSpan> out;
  for (const Token& t : tree.tokens().tokens()) {
    if (t.kind == TokenKind::Comment) out.push_back(t.span);
  }
  return out;
}

std::vector<SourceSpan> protected_spans(const BlockTree& tree) {
  std::vector<SourceSpan> out = math_spans(tree);
  for (const SourceSpan& s : verbatim_spans(tree)) out.push_back(s);
  for (const SourceSpan& s : comment_spans(tree)) out.push_back(s);
  std::sort(out.begin(), out.end(), [](const SourceSpan& a, const SourceSpan& b) {
    return a.start != b.start ? a.start < b.start : a.end < b.end;
  });
  return out;
}

}  // namespace texlogic
