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

#include <random>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "doctest.h"
#include "texlogic/lexer.hpp"

using namespace texlogic;

namespace {

std::string reassemble(const TokenStream& ts) {
  std::string out;
  for (const Token& t : ts.tokens()) out += ts.text(t);
  return out;
}

std::vector<TokenKind> kinds(const TokenStream& ts) {
  std::vector<TokenKind> out;
  for (const Token& t : ts.tokens()) out.push_back(t.kind);
  return out;
}

}  // namespace

TEST_CASE("bold large header tokenizes into six tokens") {
  const TokenStream ts = tokenize("\\textbf{\\large 1 Introduction}");
  using K = TokenKind;
  CHECK(kinds(ts) == std::vector<K>{K::ControlWord, K::BeginGroup, K::ControlWord, K::Whitespace, K::Text, K::EndGroup});
  CHECK(ts.name(ts[0]) == "textbf");
  CHECK(ts.name(ts[2]) == "large");
  CHECK(ts.text(ts[4]) == "1 Introduction");
}

TEST_CASE("empty input gives an empty stream") {
  CHECK(tokenize("").empty());
  CHECK(parse("").nodes().empty());
}

TEST_CASE("token spans are contiguous") {
  const std::string src = "\\section*{A}% c\n\n$x^2$ \\verb|{\\bf| ~ \\\\[2pt] #1 & \\begin{verbatim}\n}{\n\\end{verbatim}";
  const TokenStream ts = tokenize(src);
  std::size_t at = 0;
  for (const Token& t : ts.tokens()) {
    CHECK(t.span.start == at);
    CHECK(t.span.end > t.span.start);
    at = t.span.end;
  }
  CHECK(at == src.size());
  CHECK(reassemble(ts) == src);
}

TEST_CASE("control symbols, comments and paragraph breaks") {
  const TokenStream ts = tokenize("a\\%b % note\n\n\\\\");
  using K = TokenKind;
  CHECK(kinds(ts) == std::vector<K>{K::Text, K::ControlSymbol, K::Text, K::Whitespace, K::Comment, K::ParBreak,
                                    K::ControlSymbol});
  CHECK(ts.name(ts[1]) == "%");
  CHECK(ts.is_symbol(6, '\\'));
}

TEST_CASE("verb and verbatim payloads are opaque") {
  const std::string src = "x \\verb|{\\bf v}| y\n\\begin{verbatim}\n{\\bf w}\n\\end{verbatim}\n";
  const BlockTree tree = parse(src);
  CHECK(tree.diagnostics().empty());
  const auto spans = verbatim_spans(tree);
  REQUIRE(spans.size() == 2);
  CHECK(tree.tokens().text(spans[0]) == "|{\\bf v}|");
  CHECK(tree.tokens().text(spans[1]).find("{\\bf w}") != std::string_view::npos);
}

TEST_CASE("inline math holds the bold group") {
  const BlockTree tree = parse("${\\bf v}$");
  REQUIRE(tree.nodes().size() == 1);
  const Node& m = tree.nodes()[0];
  CHECK(m.kind == NodeKind::Math);
  CHECK(m.math == MathKind::Inline);
  REQUIRE(m.children.size() == 1);
  CHECK(m.children[0].kind == NodeKind::Group);
}

TEST_CASE("empty braces form one group") {
  const BlockTree tree = parse("{}");
  REQUIRE(tree.nodes().size() == 1);
  CHECK(tree.nodes()[0].kind == NodeKind::Group);
  CHECK(tree.nodes()[0].children.empty());
  CHECK(tree.diagnostics().empty());
}

TEST_CASE("unterminated definition reports its imbalance") {
  const BlockTree tree = parse("\\def\\giorno{15/6/98\\end{abstract}");
  const auto& d = tree.diagnostics();
  REQUIRE(d.size() == 2);
  bool unclosed = false, orphan = false;
  for (const Imbalance& i : d) {
    unclosed |= i.kind == ImbalanceKind::Unclosed && i.what == "{";
    orphan |= i.kind == ImbalanceKind::EndWithoutBegin && i.what == "abstract";
  }
  CHECK(unclosed);
  CHECK(orphan);
}

TEST_CASE("math spans at hand-counted offsets") {
  const BlockTree tree = parse("a $x$ b \\[y\\]");
  const auto spans = math_spans(tree);
  REQUIRE(spans.size() == 2);
  CHECK(spans[0].start == 2);
  CHECK(spans[0].end == 5);
  CHECK(spans[1].start == 8);
  CHECK(spans[1].end == 13);

  CHECK(math_spans(parse("no math here {\\bf at all}")).empty());

  const BlockTree display = parse("$$z$$");
  const auto d = math_spans(display);
  REQUIRE(d.size() == 1);
  CHECK(d[0].start == 0);
  CHECK(d[0].end == 5);
  CHECK(display.nodes()[0].math == MathKind::Display);
}

TEST_CASE("math environments and nested text") {
  const std::string src = "\\begin{align}a &= {\\bf b}\\text{ for {\\bf c}}\\end{align} and \\(d\\)";
  const BlockTree tree = parse(src);
  const auto spans = math_spans(tree);
  REQUIRE(spans.size() == 2);
  CHECK(spans[0].start == 0);
  CHECK(tree.tokens().text(spans[0]).ends_with("\\end{align}"));
  CHECK(tree.tokens().text(spans[1]) == "\\(d\\)");
  CHECK(is_math_environment("align*"));
  CHECK(is_math_environment("equation"));
  CHECK_FALSE(is_math_environment("center"));
  CHECK(is_verbatim_environment("lstlisting"));
}

TEST_CASE("mismatched and stray delimiters") {
  const BlockTree a = parse("\\begin{center}x\\end{itemize}");
  REQUIRE_FALSE(a.diagnostics().empty());
  CHECK(a.diagnostics()[0].kind == ImbalanceKind::MismatchedEnd);

  const BlockTree b = parse("x } y");
  REQUIRE(b.diagnostics().size() == 1);
  CHECK(b.diagnostics()[0].kind == ImbalanceKind::UnmatchedClose);
  CHECK(b.diagnostics()[0].span.start == 2);
}

TEST_CASE("comments are protected") {
  const BlockTree tree = parse("text % {\\bf hidden}\nmore");
  const auto spans = comment_spans(tree);
  REQUIRE(spans.size() == 1);
  CHECK(tree.tokens().text(spans[0]) == "% {\\bf hidden}");
  CHECK(protected_spans(tree).size() == 1);
}

TEST_CASE("braces inside definitions are marked") {
  const BlockTree tree = parse("\\newcommand{\\T}{\\centerline{\\bf X}}\\T");
  std::size_t marked = 0;
  auto walk = [&](auto&& self, const std::vector<Node>& nodes) -> void {
    for (const Node& n : nodes) {
      marked += n.in_definition;
      self(self, n.children);
    }
  };
  walk(walk, tree.nodes());
  CHECK(marked > 0);
  CHECK_FALSE(tree.nodes().back().in_definition);
}

TEST_CASE("tokenize is deterministic") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    std::string s(rng() % 64, ' ');
    for (char& c : s) c = "\\{}$%&#^_~ \n\tab1[]()*@"[rng() % 24];
    const TokenStream a = tokenize(s), b = tokenize(s);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(a[k].kind == b[k].kind);
      CHECK(a[k].span == b[k].span);
    }
  }
}

TEST_CASE("every fixture reassembles byte for byte") {
  for (const auto& f : corpus::tex_files(corpus::fixtures())) {
    const std::string src = corpus::read(f);
    CHECK_MESSAGE(reassemble(tokenize(src)) == src, f.string());
  }
}
