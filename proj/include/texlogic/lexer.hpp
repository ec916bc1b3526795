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

#ifndef TEXLOGIC_LEXER_HPP
#define TEXLOGIC_LEXER_HPP

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace texlogic {

/// Half-open byte range into a source buffer. `line` is the 1-based line of
/// `start`.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  std::size_t line = 1;

  std::size_t size() const { return end - start; }
  bool empty() const { return start == end; }
  bool contains(const SourceSpan& o) const { return start <= o.start && o.end <= end; }
  bool contains(std::size_t offset) const { return start <= offset && offset < end; }
  // Zero-width spans intersect anything that strictly surrounds them.
  bool intersects(const SourceSpan& o) const {
    if (empty() || o.empty()) {
      const SourceSpan& z = empty() ? *this : o;
      const SourceSpan& w = empty() ? o : *this;
      if (w.empty()) return z.start == w.start;
      return w.start < z.start && z.start < w.end;
    }
    return start < o.end && o.start < end;
  }
  friend bool operator==(const SourceSpan& a, const SourceSpan& b) {
    return a.start == b.start && a.end == b.end;
  }
};

enum class TokenKind {
  ControlWord,
  ControlSymbol,
  BeginGroup,
  EndGroup,
  MathShift,
  Alignment,
  Parameter,
  Comment,
  ParBreak,
  Whitespace,
  Text,
  ActiveChar,
};

const char* to_string(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::Text;
  SourceSpan span;
  // Verbatim payload (\verb argument or verbatim-like environment body).
  bool opaque = false;
};

/// Owns a copy of the source and the lossless token sequence over it.
class TokenStream {
 public:
  TokenStream() = default;
  TokenStream(std::string source, std::vector<Token> tokens)
      : source_(std::move(source)), tokens_(std::move(tokens)) {}

  const std::string& source() const { return source_; }
  std::span<const Token> tokens() const { return tokens_; }
  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }
  const Token& operator[](std::size_t i) const { return tokens_[i]; }

  std::string_view text(const Token& t) const {
    return std::string_view(source_).substr(t.span.start, t.span.size());
  }
  std::string_view text(const SourceSpan& s) const {
    return std::string_view(source_).substr(s.start, s.size());
  }
  // Name of a control word without the backslash; the character of a control
  // symbol; empty for everything else.
  std::string_view name(const Token& t) const;
  bool is_word(std::size_t i, std::string_view word) const {
    return i < tokens_.size() && tokens_[i].kind == TokenKind::ControlWord && name(tokens_[i]) == word;
  }
  bool is_symbol(std::size_t i, char c) const;

 private:
  std::string source_;
  std::vector<Token> tokens_;
};

/// Never fails; malformed input produces ordinary tokens.
TokenStream tokenize(std::string source);

enum class NodeKind { Group, Environment, Math, Leaf };
enum class MathKind { Inline, Display };

struct Node {
  NodeKind kind = NodeKind::Leaf;
  SourceSpan span;   // full extent including delimiters
  SourceSpan inner;  // contents only
  std::string name;  // environment name, or the math opener ("$", "$$", "\\(", "\\[", env name)
  MathKind math = MathKind::Inline;
  std::size_t token = 0;  // Leaf: token index. Others: index of the opening token.
  bool closed = true;
  bool in_definition = false;  // lies inside a \def / \newcommand body
  std::vector<Node> children;

  bool is_leaf() const { return kind == NodeKind::Leaf; }
};

enum class ImbalanceKind { UnmatchedClose, Unclosed, MismatchedEnd, EndWithoutBegin };

const char* to_string(ImbalanceKind kind);

struct Imbalance {
  ImbalanceKind kind;
  SourceSpan span;
  std::string what;  // "{", "}", "$", "\\[", or an environment name

  friend bool operator==(const Imbalance& a, const Imbalance& b) {
    return a.kind == b.kind && a.span == b.span && a.what == b.what;
  }
};

class BlockTree {
 public:
  BlockTree() : tokens_(std::make_shared<TokenStream>()) {}
  BlockTree(std::shared_ptr<const TokenStream> tokens, std::vector<Node> nodes,
            std::vector<Imbalance> diagnostics, std::vector<std::size_t> brace_match)
      : tokens_(std::move(tokens)), nodes_(std::move(nodes)),
        diagnostics_(std::move(diagnostics)), brace_match_(std::move(brace_match)) {}

  const TokenStream& tokens() const { return *tokens_; }
  const std::string& source() const { return tokens_->source(); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Imbalance>& diagnostics() const { return diagnostics_; }

  // Index of the EndGroup matching the BeginGroup at `open`, or npos.
  std::size_t matching_brace(std::size_t open) const;

 private:
  std::shared_ptr<const TokenStream> tokens_;
  std::vector<Node> nodes_;
  std::vector<Imbalance> diagnostics_;
  std::vector<std::size_t> brace_match_;
};

BlockTree build_tree(TokenStream tokens);
BlockTree parse(std::string source);

/// Sorted spans of the outermost math constructs.
std::vector<SourceSpan> math_spans(const BlockTree& tree);
/// Sorted spans of verbatim payloads.
std::vector<SourceSpan> verbatim_spans(const BlockTree& tree);
std::vector<SourceSpan> comment_spans(const BlockTree& tree);
/// Math, verbatim and comment spans merged and sorted.
std::vector<SourceSpan> protected_spans(const BlockTree& tree);

bool is_math_environment(std::string_view name);
bool is_verbatim_environment(std::string_view name);

}  // namespace texlogic

#endif  // TEXLOGIC_LEXER_HPP
