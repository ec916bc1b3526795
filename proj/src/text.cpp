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

#include "texlogic/text.hpp"

#include <algorithm>
#include <array>
#include <utility>
#include <vector>

#include "texlogic/lexer.hpp"

namespace texlogic::text {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool one_of(std::string_view w, std::initializer_list<std::string_view> words) {
  return std::find(words.begin(), words.end(), w) != words.end();
}

bool is_accent_symbol(char c) {
  return c == '\'' || c == '`' || c == '^' || c == '"' || c == '~' || c == '=' || c == '.';
}

// Length in bytes of the UTF-8 sequence starting with `lead`.
std::size_t utf8_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

std::size_t find_close(const TokenStream& ts, std::size_t open) {
  int depth = 0;
  for (std::size_t j = open; j < ts.size(); ++j) {
    if (ts[j].kind == TokenKind::BeginGroup) ++depth;
    if (ts[j].kind == TokenKind::EndGroup && --depth == 0) return j;
  }
  return ts.size() - 1;
}

// Base letters for U+00C0..U+017F.
constexpr std::array<const char*, 192> kLatinFold = {
    "A", "A", "A", "A", "A", "A", "AE", "C", "E", "E", "E", "E", "I", "I", "I", "I",
    "D", "N", "O", "O", "O", "O", "O", "x", "O", "U", "U", "U", "U", "Y", "TH", "ss",
    "a", "a", "a", "a", "a", "a", "ae", "c", "e", "e", "e", "e", "i", "i", "i", "i",
    "d", "n", "o", "o", "o", "o", "o", "/", "o", "u", "u", "u", "u", "y", "th", "y",
    "A", "a", "A", "a", "A", "a", "C", "c", "C", "c", "C", "c", "C", "c", "D", "d",
    "D", "d", "E", "e", "E", "e", "E", "e", "E", "e", "E", "e", "G", "g", "G", "g",
    "G", "g", "G", "g", "H", "h", "H", "h", "I", "i", "I", "i", "I", "i", "I", "i",
    "I", "i", "IJ", "ij", "J", "j", "K", "k", "k", "L", "l", "L", "l", "L", "l", "L",
    "l", "L", "l", "N", "n", "N", "n", "N", "n", "n", "N", "n", "O", "o", "O", "o",
    "O", "o", "OE", "oe", "R", "r", "R", "r", "R", "r", "S", "s", "S", "s", "S", "s",
    "S", "s", "T", "t", "T", "t", "T", "t", "U", "u", "U", "u", "U", "u", "U", "u",
    "U", "u", "U", "u", "W", "w", "Y", "y", "Y", "Z", "z", "Z", "z", "Z", "z", "s"};

const char* letter_command(std::string_view w) {
  static const std::array<std::pair<std::string_view, const char*>, 14> table = {{
      {"i", "i"}, {"j", "j"}, {"o", "o"}, {"O", "O"}, {"l", "l"}, {"L", "L"}, {"ss", "ss"},
      {"ae", "ae"}, {"AE", "AE"}, {"oe", "oe"}, {"OE", "OE"}, {"aa", "a"}, {"AA", "A"}, {"SS", "SS"}}};
  for (const auto& [name, value] : table) {
    if (name == w) return value;
  }
  return nullptr;
}

bool drops_arguments(std::string_view w) {
  return one_of(w, {"label", "footnote", "thanks", "footnotemark", "inst", "vspace", "hspace", "thispagestyle",
                    "pagestyle", "index", "ref", "cite", "enlargethispage", "corref", "fnref", "thanksref", "orcidlink",
                    "IEEEauthorrefmark"});
}

}  // namespace

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && is_space(s[a])) ++a;
  while (b > a && is_space(s[b - 1])) --b;
  return std::string(s.substr(a, b - a));
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending = false;
  for (char c : s) {
    if (is_space(c)) {
      pending = !out.empty();
      continue;
    }
    if (pending) out += ' ';
    pending = false;
    out += c;
  }
  return out;
}

bool apply_switch(std::string_view w, StyleState& st) {
  if (one_of(w, {"bf", "bfseries", "boldmath"})) return st.bold = true, true;
  if (w == "mdseries") return st.bold = false, true;
  if (one_of(w, {"it", "itshape", "sl", "slshape", "em"})) return st.italic = true, true;
  if (w == "upshape") return st.italic = false, true;
  if (one_of(w, {"sc", "scshape"})) return st.smallcaps = true, true;
  if (one_of(w, {"rm", "normalfont"})) {
    st.bold = st.italic = st.smallcaps = false;
    return true;
  }
  if (one_of(w, {"sf", "sffamily", "tt", "ttfamily", "rmfamily", "unboldmath"})) return true;
  static const std::array<std::pair<std::string_view, int>, 10> sizes = {{{"tiny", -4},
                                                                          {"scriptsize", -3},
                                                                          {"footnotesize", -2},
                                                                          {"small", -1},
                                                                          {"normalsize", 0},
                                                                          {"large", 1},
                                                                          {"Large", 2},
                                                                          {"LARGE", 3},
                                                                          {"huge", 4},
                                                                          {"Huge", 5}}};
  for (const auto& [name, size] : sizes) {
    if (name == w) return st.size = size, true;
  }
  return false;
}

bool apply_wrapper(std::string_view w, StyleState& st) {
  if (w == "textbf") return st.bold = true, true;
  if (one_of(w, {"textit", "textsl", "emph"})) return st.italic = true, true;
  if (w == "textsc") return st.smallcaps = true, true;
  return one_of(w, {"textrm", "textsf", "texttt", "textup", "textmd", "textnormal", "underline", "mbox", "hbox",
                    "centerline", "uline"});
}

bool is_spacing_command(std::string_view w) {
  return one_of(w, {"noindent", "indent", "par", "medskip", "bigskip", "smallskip", "vfill", "hfill", "vspace",
                    "hspace", "vskip", "hskip", "centering", "raggedright", "raggedleft", "newpage", "clearpage",
                    "null", "relax", "thispagestyle", "pagestyle", "nopagebreak", "pagebreak", "strut", "protect",
                    "smallbreak", "medbreak", "bigbreak", "enlargethispage", "leavevmode"});
}

bool takes_dimension_argument(std::string_view w) {
  return one_of(w, {"vspace", "hspace", "thispagestyle", "pagestyle", "enlargethispage"});
}

bool is_accent_command(std::string_view w) {
  return one_of(w, {"H", "c", "v", "u", "k", "r", "b", "d", "t"});
}

std::string plain(std::string_view raw) {
  const TokenStream ts = tokenize(std::string(raw));
  const std::string& src = ts.source();
  std::string out;
  std::size_t resume = 0;

  // Copies an accent command and its argument; returns the last token index used.
  auto copy_accent = [&](std::size_t i) -> std::size_t {
    std::size_t j = i + 1;
    while (j < ts.size() && ts[j].kind == TokenKind::Whitespace) ++j;
    if (j >= ts.size()) {
      out.append(ts.text(ts[i]));
      return i;
    }
    if (ts[j].kind == TokenKind::BeginGroup) {
      const std::size_t close = find_close(ts, j);
      out.append(src, ts[i].span.start, ts[close].span.end - ts[i].span.start);
      return close;
    }
    if (ts[j].kind == TokenKind::Text) {
      const std::size_t len = utf8_length(static_cast<unsigned char>(src[ts[j].span.start]));
      const std::size_t end = std::min(ts[j].span.start + len, ts[j].span.end);
      out.append(src, ts[i].span.start, end - ts[i].span.start);
      resume = end;
      return end == ts[j].span.end ? j : j - 1;
    }
    out.append(src, ts[i].span.start, ts[j].span.end - ts[i].span.start);
    return j;
  };

  for (std::size_t i = 0; i < ts.size(); ++i) {
    const Token& t = ts[i];
    if (t.span.end <= resume) continue;
    const std::size_t start = std::max(t.span.start, resume);
    switch (t.kind) {
      case TokenKind::Text:
        out.append(src, start, t.span.end - start);
        break;
      case TokenKind::Whitespace:
      case TokenKind::ParBreak:
      case TokenKind::ActiveChar:
      case TokenKind::Alignment:
        out += ' ';
        break;
      case TokenKind::Comment:
      case TokenKind::BeginGroup:
      case TokenKind::EndGroup:
        break;
      case TokenKind::Parameter:
        out.append(ts.text(t));
        break;
      case TokenKind::MathShift: {
        std::size_t j = i + 1;
        while (j < ts.size() && !(ts[j].kind == TokenKind::MathShift && ts.text(ts[j]) == ts.text(t))) ++j;
        const std::size_t end = j < ts.size() ? ts[j].span.end : src.size();
        out.append(src, t.span.start, end - t.span.start);
        i = j;
        break;
      }
      case TokenKind::ControlSymbol: {
        const char c = src[t.span.start + 1];
        if (c == '\\') {
          out += ' ';
          if (i + 1 < ts.size() && ts[i + 1].kind == TokenKind::Text && src[ts[i + 1].span.start] == '[') {
            const std::size_t close = ts.text(ts[i + 1]).find(']');
            if (close != std::string_view::npos) resume = ts[i + 1].span.start + close + 1;
          }
        } else if (is_accent_symbol(c)) {
          i = copy_accent(i);
        } else if (c == ',' || c == ';' || c == ' ' || c == '!' || c == ':' || c == '\n') {
          out += ' ';
        } else if (c != '/' && c != '-') {
          out.append(ts.text(t));
        }
        break;
      }
      case TokenKind::ControlWord: {
        const std::string_view w = ts.name(t);
        StyleState ignored;
        if (is_accent_command(w)) {
          i = copy_accent(i);
        } else if (drops_arguments(w)) {
          std::size_t j = i + 1;
          while (j < ts.size() && (ts[j].kind == TokenKind::Whitespace ||
                                   (ts[j].kind == TokenKind::Text && ts.text(ts[j]) == "*")))
            ++j;
          if (j < ts.size() && ts[j].kind == TokenKind::Text && src[ts[j].span.start] == '[') {
            const std::size_t close = ts.text(ts[j]).find(']');
            if (close != std::string_view::npos) {
              resume = ts[j].span.start + close + 1;
              if (resume == ts[j].span.end) ++j;
            }
          }
          if (j < ts.size() && ts[j].kind == TokenKind::BeginGroup) i = find_close(ts, j);
        } else if (apply_switch(w, ignored) || apply_wrapper(w, ignored) || is_spacing_command(w)) {
          // presentation only
        } else if (one_of(w, {"quad", "qquad", "newline", "linebreak", "and", "enspace", "AND"})) {
          out += ' ';
        } else {
          out.append(ts.text(t));
        }
        break;
      }
    }
  }
  return collapse_whitespace(out);
}

std::string unwrap(std::string_view raw) {
  std::string s = trim(raw);
  for (int guard = 0; guard < 32; ++guard) {
    const BlockTree tree = parse(s);
    const TokenStream& ts = tree.tokens();
    std::vector<const Node*> nodes;
    for (const Node& n : tree.nodes()) {
      if (n.is_leaf() && (ts[n.token].kind == TokenKind::Whitespace || ts[n.token].kind == TokenKind::ParBreak))
        continue;
      nodes.push_back(&n);
    }
    auto word = [&](std::size_t k) -> std::string_view {
      const Node* n = nodes[k];
      if (!n->is_leaf() || ts[n->token].kind != TokenKind::ControlWord) return {};
      return ts.name(ts[n->token]);
    };
    auto symbol = [&](std::size_t k, char c) {
      const Node* n = nodes[k];
      return n->is_leaf() && ts.is_symbol(n->token, c);
    };
    auto is_group = [&](std::size_t k) { return nodes[k]->kind == NodeKind::Group && nodes[k]->closed; };
    auto is_bracket_text = [&](std::size_t k) {
      const Node* n = nodes[k];
      if (!n->is_leaf() || ts[n->token].kind != TokenKind::Text) return false;
      const std::string_view t = ts.text(ts[n->token]);
      return t.front() == '[' && t.back() == ']';
    };

    std::size_t a = 0, b = nodes.size();
    while (a < b) {
      StyleState st;
      const std::string_view w = word(a);
      if (!w.empty() && (apply_switch(w, st) || is_spacing_command(w))) {
        ++a;
        if (a < b && takes_dimension_argument(w)) {
          if (nodes[a]->is_leaf() && ts.text(ts[nodes[a]->token]) == "*") ++a;
          if (a < b && is_group(a)) ++a;
        }
        continue;
      }
      if (symbol(a, '\\')) {
        ++a;
        continue;
      }
      break;
    }
    while (b > a) {
      StyleState st;
      const std::string_view w = word(b - 1);
      if (symbol(b - 1, '\\') || symbol(b - 1, '/') ||
          (!w.empty() && (is_spacing_command(w) || apply_switch(w, st) || w == "newline"))) {
        --b;
        continue;
      }
      if (b - a >= 2 && is_bracket_text(b - 1) && symbol(b - 2, '\\')) {
        b -= 2;
        continue;
      }
      if (b - a >= 2 && is_group(b - 1) && takes_dimension_argument(word(b - 2))) {
        b -= 2;
        continue;
      }
      break;
    }
    if (a == b) return {};
    if (b - a == 1 && is_group(a)) {
      const Node* g = nodes[a];
      s = trim(std::string_view(s).substr(g->inner.start, g->inner.size()));
      continue;
    }
    StyleState st;
    if (b - a == 2 && is_group(a + 1) && word(a) != "emph" && apply_wrapper(word(a), st)) {
      const Node* g = nodes[a + 1];
      s = trim(std::string_view(s).substr(g->inner.start, g->inner.size()));
      continue;
    }
    return trim(std::string_view(s).substr(nodes[a]->span.start, nodes[b - 1]->span.end - nodes[a]->span.start));
  }
  return s;
}

std::string fold_accents(std::string_view s, bool lowercase) {
  std::string out;
  out.reserve(s.size());
  auto put = [&](char c) { out += lowercase && c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c; };
  auto put_str = [&](std::string_view v) {
    for (char c : v) put(c);
  };
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (c == '\\' && i + 1 < s.size()) {
      const char n = s[i + 1];
      if (is_accent_symbol(n)) {
        i += 2;
        continue;
      }
      if ((n >= 'a' && n <= 'z') || (n >= 'A' && n <= 'Z')) {
        std::size_t e = i + 1;
        while (e < s.size() && ((s[e] >= 'a' && s[e] <= 'z') || (s[e] >= 'A' && s[e] <= 'Z'))) ++e;
        const std::string_view w = s.substr(i + 1, e - i - 1);
        if (is_accent_command(w)) {
          i = e;
          while (i < s.size() && s[i] == ' ') ++i;
          continue;
        }
        if (const char* letter = letter_command(w)) {
          put_str(letter);
          i = e;
          if (i < s.size() && s[i] == ' ' && i + 1 < s.size() && s[i + 1] != ' ') ++i;
          continue;
        }
        put_str(w);
        i = e;
        continue;
      }
      // Escaped punctuation such as \& or \%.
      put(n);
      i += 2;
      continue;
    }
    if (c == '{' || c == '}') {
      ++i;
      continue;
    }
    const auto lead = static_cast<unsigned char>(c);
    if (lead >= 0x80) {
      const std::size_t len = std::min(utf8_length(lead), s.size() - i);
      const std::u32string cp = utf8_decode(s.substr(i, len));
      if (cp.size() == 1 && cp[0] >= 0xC0 && cp[0] <= 0x17F) {
        put_str(kLatinFold[cp[0] - 0xC0]);
      } else {
        out.append(s.substr(i, len));
      }
      i += len;
      continue;
    }
    put(c);
    ++i;
  }
  return out;
}

std::string normalize(std::string_view s) {
  std::string folded = fold_accents(plain(s), true);
  std::string out;
  out.reserve(folded.size());
  for (std::size_t i = 0; i < folded.size(); ++i) {
    char c = folded[i];
    if (c == '$') continue;
    // En and em dashes read as a hyphen; runs of dashes collapse.
    if (folded.compare(i, 2, "\xE2\x80") == 0 && i + 2 < folded.size() &&
        (folded[i + 2] == '\x93' || folded[i + 2] == '\x94')) {
      c = '-';
      i += 2;
    }
    if (c == '-' && !out.empty() && out.back() == '-') continue;
    out += c == '~' ? ' ' : c;
  }
  return collapse_whitespace(out);
}

std::u32string utf8_decode(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const auto lead = static_cast<unsigned char>(s[i]);
    const std::size_t len = utf8_length(lead);
    if (len == 1 || i + len > s.size()) {
      out += static_cast<char32_t>(lead);
      ++i;
      continue;
    }
    char32_t cp = lead & (0xFF >> (len + 1));
    bool ok = true;
    for (std::size_t k = 1; k < len; ++k) {
      const auto b = static_cast<unsigned char>(s[i + k]);
      if ((b & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (b & 0x3F);
    }
    if (!ok) {
      out += static_cast<char32_t>(lead);
      ++i;
      continue;
    }
    out += cp;
    i += len;
  }
  return out;
}

std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double similarity(std::string_view a, std::string_view b) {
  const std::u32string x = utf8_decode(normalize(a));
  const std::u32string y = utf8_decode(normalize(b));
  const std::size_t longest = std::max(x.size(), y.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(levenshtein(x, y)) / static_cast<double>(longest);
}

}  // namespace texlogic::text
