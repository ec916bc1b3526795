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

#include "texlogic/lexer.hpp"

#include <algorithm>
#include <array>

namespace texlogic {

namespace {

constexpr std::array<std::string_view, 8> kVerbatimEnvs = {
    "verbatim", "verbatim*", "Verbatim", "Verbatim*", "lstlisting", "minted", "comment", "filecontents"};

bool is_letter(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

bool is_special(char c) {
  switch (c) {
    case '\\': case '{': case '}': case '$': case '&': case '#': case '~': case '%':
      return true;
    default:
      return is_space(c);
  }
}

class Lexer {
 public:
  explicit Lexer(const std::string& src) : s_(src) {}

  std::vector<Token> run() {
    while (pos_ < s_.size()) step();
    return std::move(out_);
  }

 private:
  void emit(TokenKind kind, std::size_t end, bool opaque = false) {
    // Adjacent plain text coalesces into a single Text token.
    if (kind == TokenKind::Text && !opaque && !out_.empty() && out_.back().kind == TokenKind::Text &&
        !out_.back().opaque && out_.back().span.end == pos_) {
      advance_lines(end);
      out_.back().span.end = end;
      pos_ = end;
      return;
    }
    Token t{kind, SourceSpan{pos_, end, line_}, opaque};
    advance_lines(end);
    out_.push_back(t);
    pos_ = end;
  }

  void advance_lines(std::size_t end) {
    line_ += static_cast<std::size_t>(std::count(s_.begin() + static_cast<std::ptrdiff_t>(pos_),
                                                 s_.begin() + static_cast<std::ptrdiff_t>(end), '\n'));
  }

  void step() {
    const char c = s_[pos_];
    switch (c) {
      case '\\': return control();
      case '{': return emit(TokenKind::BeginGroup, pos_ + 1);
      case '}': return emit(TokenKind::EndGroup, pos_ + 1);
      case '$':
        return emit(TokenKind::MathShift, pos_ + 1 < s_.size() && s_[pos_ + 1] == '$' ? pos_ + 2 : pos_ + 1);
      case '&': return emit(TokenKind::Alignment, pos_ + 1);
      case '#':
        return emit(TokenKind::Parameter,
                    pos_ + 1 < s_.size() && s_[pos_ + 1] >= '0' && s_[pos_ + 1] <= '9' ? pos_ + 2 : pos_ + 1);
      case '~': return emit(TokenKind::ActiveChar, pos_ + 1);
      case '%': {
        std::size_t e = s_.find('\n', pos_);
        return emit(TokenKind::Comment, e == std::string::npos ? s_.size() : e);
      }
      default:
        break;
    }
    if (is_space(c)) return whitespace();
    std::size_t e = pos_;
    while (e < s_.size() && !is_special(s_[e])) ++e;
    emit(TokenKind::Text, e);
  }

  void whitespace() {
    std::size_t e = pos_;
    std::size_t first_nl = std::string::npos, last_nl = std::string::npos, newlines = 0;
    while (e < s_.size() && is_space(s_[e])) {
      if (s_[e] == '\n') {
        if (first_nl == std::string::npos) first_nl = e;
        last_nl = e;
        ++newlines;
      }
      ++e;
    }
    if (newlines >= 2) {
      if (first_nl > pos_) emit(TokenKind::Whitespace, first_nl);
      emit(TokenKind::ParBreak, last_nl + 1);
      if (e > pos_) emit(TokenKind::Whitespace, e);
      return;
    }
    // Interior word spacing stays inside the surrounding Text token.
    const bool after_text = !out_.empty() && out_.back().kind == TokenKind::Text && !out_.back().opaque &&
                            out_.back().span.end == pos_;
    if (after_text && e < s_.size() && !is_special(s_[e])) {
      emit(TokenKind::Text, e);
      return;
    }
    emit(TokenKind::Whitespace, e);
  }

  void control() {
    if (pos_ + 1 >= s_.size()) return emit(TokenKind::Text, pos_ + 1);
    if (!is_letter(s_[pos_ + 1])) return emit(TokenKind::ControlSymbol, pos_ + 2);
    std::size_t e = pos_ + 1;
    while (e < s_.size() && is_letter(s_[e])) ++e;
    const std::string_view name(s_.data() + pos_ + 1, e - pos_ - 1);
    emit(TokenKind::ControlWord, e);
    if (name == "verb") return verb();
    if (name == "begin") return maybe_verbatim_env();
  }

  void verb() {
    std::size_t p = pos_;
    if (p < s_.size() && s_[p] == '*') ++p;
    if (p >= s_.size() || s_[p] == '\n') return;
    const char delim = s_[p];
    std::size_t close = p + 1;
    while (close < s_.size() && s_[close] != delim && s_[close] != '\n') ++close;
    const std::size_t end = (close < s_.size() && s_[close] == delim) ? close + 1 : close;
    emit(TokenKind::Text, end, true);
  }

  void maybe_verbatim_env() {
    if (pos_ >= s_.size() || s_[pos_] != '{') return;
    const std::size_t close = s_.find('}', pos_);
    if (close == std::string::npos) return;
    const std::string_view env(s_.data() + pos_ + 1, close - pos_ - 1);
    if (std::find(kVerbatimEnvs.begin(), kVerbatimEnvs.end(), env) == kVerbatimEnvs.end()) return;
    emit(TokenKind::BeginGroup, pos_ + 1);
    emit(TokenKind::Text, close);
    emit(TokenKind::EndGroup, close + 1);
    const std::string terminator = "\\end{" + std::string(env) + "}";
    std::size_t stop = s_.find(terminator, pos_);
    if (stop == std::string::npos) stop = s_.size();
    if (stop > pos_) emit(TokenKind::Text, stop, true);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::vector<Token> out_;
};

}  // namespace

const char* to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::ControlWord: return "ControlWord";
    case TokenKind::ControlSymbol: return "ControlSymbol";
    case TokenKind::BeginGroup: return "BeginGroup";
    case TokenKind::EndGroup: return "EndGroup";
    case TokenKind::MathShift: return "MathShift";
    case TokenKind::Alignment: return "Alignment";
    case TokenKind::Parameter: return "Parameter";
    case TokenKind::Comment: return "Comment";
    case TokenKind::ParBreak: return "ParBreak";
    case TokenKind::Whitespace: return "Whitespace";
    case TokenKind::Text: return "Text";
    case TokenKind::ActiveChar: return "ActiveChar";
  }
  return "?";
}

std::string_view TokenStream::name(const Token& t) const {
  if (t.kind == TokenKind::ControlWord) return text(t).substr(1);
  if (t.kind == TokenKind::ControlSymbol) return text(t).substr(1, 1);
  return {};
}

bool TokenStream::is_symbol(std::size_t i, char c) const {
  return i < tokens_.size() && tokens_[i].kind == TokenKind::ControlSymbol && tokens_[i].span.size() == 2 &&
         source_[tokens_[i].span.start + 1] == c;
}

TokenStream tokenize(std::string source) {
  Lexer lexer(source);
  std::vector<Token> tokens = lexer.run();
  return TokenStream(std::move(source), std::move(tokens));
}

bool is_verbatim_environment(std::string_view name) {
  return std::find(kVerbatimEnvs.begin(), kVerbatimEnvs.end(), name) != kVerbatimEnvs.end();
}

}  // namespace texlogic
