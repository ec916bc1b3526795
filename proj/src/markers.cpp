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
#include <cctype>

#include "texlogic/document_model.hpp"
#include "texlogic/text.hpp"

namespace texlogic {

namespace {

struct SymbolForm {
  std::string_view form;
  MarkerSymbol symbol;
};

// Control-word names without backslash; `\|` and `\S` / `\P` handled too.
constexpr std::array<SymbolForm, 17> kSymbolWords = {{
    {"ast", MarkerSymbol::Asterisk},
    {"textasteriskcentered", MarkerSymbol::Asterisk},
    {"dag", MarkerSymbol::Dagger},
    {"dagger", MarkerSymbol::Dagger},
    {"textdagger", MarkerSymbol::Dagger},
    {"ddag", MarkerSymbol::DoubleDagger},
    {"ddagger", MarkerSymbol::DoubleDagger},
    {"textdaggerdbl", MarkerSymbol::DoubleDagger},
    {"S", MarkerSymbol::SectionSign},
    {"textsection", MarkerSymbol::SectionSign},
    {"P", MarkerSymbol::Pilcrow},
    {"textparagraph", MarkerSymbol::Pilcrow},
    {"parallel", MarkerSymbol::Parallel},
    {"Vert", MarkerSymbol::Parallel},
    {"textbardbl", MarkerSymbol::Parallel},
    {"|", MarkerSymbol::Parallel},
    {"star", MarkerSymbol::Asterisk},
}};

constexpr std::array<SymbolForm, 8> kSymbolChars = {{
    {"*", MarkerSymbol::Asterisk},
    {"\xE2\x88\x97", MarkerSymbol::Asterisk},
    {"\xE2\x80\xA0", MarkerSymbol::Dagger},
    {"\xE2\x80\xA1", MarkerSymbol::DoubleDagger},
    {"\xC2\xA7", MarkerSymbol::SectionSign},
    {"\xC2\xB6", MarkerSymbol::Pilcrow},
    {"\xE2\x80\x96", MarkerSymbol::Parallel},
    {"\xE2\x80\xA2", MarkerSymbol::Asterisk},
}};

// Text-mode symbol commands that may stand alone after a name.
constexpr std::array<std::string_view, 6> kTextSymbolWords = {"dag", "ddag", "textdagger", "textdaggerdbl",
                                                             "textasteriskcentered", "textbardbl"};

std::optional<MarkerSymbol> symbol_word(std::string_view w) {
  for (const auto& f : kSymbolWords) {
    if (f.form == w) return f.symbol;
  }
  return std::nullopt;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '~'; }

std::string_view trim_view(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool starts_with_word(std::string_view s, std::string_view word) {
  if (s.size() <= word.size() || s[0] != '\\' || s.substr(1, word.size()) != word) return false;
  const std::size_t after = word.size() + 1;
  return after >= s.size() || !std::isalpha(static_cast<unsigned char>(s[after]));
}

// Index just past the brace group opening at s[open], or npos.
std::size_t group_end(std::string_view s, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < s.size(); ++i) {
    if (s[i] == '\\') {
      ++i;
      continue;
    }
    if (s[i] == '{') ++depth;
    if (s[i] == '}' && --depth == 0) return i + 1;
  }
  return std::string_view::npos;
}

// Peels math shifts, superscript carets, braces and font wrappers.
std::string_view peel(std::string_view s) {
  for (;;) {
    s = trim_view(s);
    const std::string_view before = s;
    if (s.size() >= 2 && s.front() == '$' && s.back() == '$') {
      s = s.substr(1, s.size() - 2);
      continue;
    }
    if (!s.empty() && s.front() == '^') {
      s.remove_prefix(1);
      continue;
    }
    if (!s.empty() && s.front() == '{' && group_end(s, 0) == s.size()) {
      s = s.substr(1, s.size() - 2);
      continue;
    }
    for (std::string_view w : {"textsuperscript", "mathrm", "mbox", "text", "rm", "it", "scriptsize", "footnotesize",
                               "small", "normalfont", "mathit", "textrm", "bf", "mathbf"}) {
      if (!starts_with_word(s, w)) continue;
      std::string_view rest = trim_view(s.substr(w.size() + 1));
      if (!rest.empty() && rest.front() == '{' && group_end(rest, 0) == rest.size()) {
        s = rest.substr(1, rest.size() - 2);
      } else if (rest.empty() || rest.front() != '{') {
        s = rest;
      }
      break;
    }
    if (s == before) return s;
  }
}

// Splits a symbol sequence such as `\dagger\dagger\ddagger` into markers.
bool parse_symbols(std::string_view s, std::vector<Marker>& out) {
  std::vector<MarkerSymbol> seq;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (is_space(c) || c == '{' || c == '}') {
      ++i;
      continue;
    }
    if (c == '\\') {
      std::size_t e = i + 1;
      while (e < s.size() && std::isalpha(static_cast<unsigned char>(s[e]))) ++e;
      if (e == i + 1 && e < s.size()) ++e;
      const auto sym = symbol_word(s.substr(i + 1, e - i - 1));
      if (!sym) return false;
      seq.push_back(*sym);
      i = e;
      continue;
    }
    bool matched = false;
    for (const auto& f : kSymbolChars) {
      if (s.substr(i, f.form.size()) == f.form) {
        seq.push_back(f.symbol);
        i += f.form.size();
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  if (seq.empty()) return false;
  for (std::size_t k = 0; k < seq.size();) {
    std::size_t r = k;
    while (r < seq.size() && seq[r] == seq[k]) ++r;
    out.push_back(Marker{seq[k], static_cast<int>(r - k), {}});
    k = r;
  }
  return true;
}

bool parse_item(std::string_view item, std::vector<Marker>& out) {
  item = peel(item);
  if (item.empty()) return false;
  if (std::all_of(item.begin(), item.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    if (item.size() > 3) return false;
    out.push_back(Marker{MarkerSymbol::Digit, std::stoi(std::string(item)), {}});
    return true;
  }
  if (item.size() == 1 && std::isalpha(static_cast<unsigned char>(item[0]))) {
    out.push_back(Marker{MarkerSymbol::Letter, item[0], {}});
    return true;
  }
  return parse_symbols(item, out);
}

std::vector<Marker> parse_list(std::string_view s) {
  s = peel(s);
  std::vector<Marker> out;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size() && s[i] == '{') ++depth;
    if (i < s.size() && s[i] == '}') --depth;
    if (i == s.size() || (s[i] == ',' && depth == 0)) {
      if (!parse_item(s.substr(start, i - start), out)) return {};
      start = i + 1;
    }
  }
  return out;
}

std::string collapse_trim(const std::string& s) { return text::collapse_whitespace(s); }

}  // namespace

const char* to_string(MarkerSymbol symbol) {
  switch (symbol) {
    case MarkerSymbol::Asterisk: return "asterisk";
    case MarkerSymbol::Dagger: return "dagger";
    case MarkerSymbol::DoubleDagger: return "ddagger";
    case MarkerSymbol::SectionSign: return "section-sign";
    case MarkerSymbol::Pilcrow: return "pilcrow";
    case MarkerSymbol::Parallel: return "parallel";
    case MarkerSymbol::Digit: return "digit";
    case MarkerSymbol::Letter: return "letter";
  }
  return "?";
}

std::string Marker::name() const {
  if (symbol == MarkerSymbol::Digit) return "digit(" + std::to_string(value) + ")";
  if (symbol == MarkerSymbol::Letter) return std::string("letter(") + static_cast<char>(value) + ")";
  std::string n = to_string(symbol);
  if (value > 1) n += "*" + std::to_string(value);
  return n;
}

std::vector<Marker> parse_marker_list(std::string_view rendering) {
  std::vector<Marker> out = parse_list(rendering);
  for (Marker& m : out) m.rendering = std::string(rendering);
  return out;
}

std::optional<Marker> normalize_marker(std::string_view rendering) {
  const std::string_view t = trim_view(rendering);
  if (starts_with_word(t, "footnotemark") || starts_with_word(t, "fnmark")) {
    std::string_view rest = trim_view(t.substr(t.find('k') + 1));
    if (rest.size() >= 2 && (rest.front() == '[' || rest.front() == '{')) {
      const char close = rest.front() == '[' ? ']' : '}';
      const std::size_t e = rest.find(close);
      if (e != std::string_view::npos && e + 1 == rest.size()) {
        auto inner = parse_list(rest.substr(1, e - 1));
        if (inner.size() == 1) {
          inner[0].rendering = std::string(rendering);
          return inner[0];
        }
      }
    }
    return std::nullopt;
  }
  auto list = parse_marker_list(rendering);
  if (list.size() != 1) return std::nullopt;
  return list[0];
}

std::vector<MarkerSite> find_marker_sites(std::string_view raw) {
  const BlockTree tree = parse(std::string(raw));
  const TokenStream& ts = tree.tokens();
  std::vector<MarkerSite> sites;
  auto add = [&](std::size_t start, std::size_t end, std::vector<Marker> markers) {
    for (Marker& m : markers) m.rendering = std::string(raw.substr(start, end - start));
    if (!sites.empty() && sites.back().span.end == start) {
      sites.back().span.end = end;
      for (Marker& m : markers) sites.back().markers.push_back(std::move(m));
      return;
    }
    sites.push_back({SourceSpan{start, end, 1}, std::move(markers)});
  };

  const std::vector<Node>& nodes = tree.nodes();
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const Node& n = nodes[k];
    if (n.kind == NodeKind::Math && n.math == MathKind::Inline && n.closed) {
      const std::string_view inner = raw.substr(n.inner.start, n.inner.size());
      const std::string_view t = trim_view(inner);
      auto markers = parse_list(inner);
      const bool superscript = !t.empty() && t.front() == '^';
      const bool symbolic = !markers.empty() && markers.front().symbol != MarkerSymbol::Digit &&
                            markers.front().symbol != MarkerSymbol::Letter;
      if (!markers.empty() && (superscript || symbolic)) add(n.span.start, n.span.end, std::move(markers));
      continue;
    }
    if (!n.is_leaf()) continue;
    const Token& t = ts[n.token];
    if (t.kind == TokenKind::ControlWord) {
      const std::string_view w = ts.name(t);
      if (w == "textsuperscript" && k + 1 < nodes.size() && nodes[k + 1].kind == NodeKind::Group) {
        const Node& g = nodes[k + 1];
        auto markers = parse_list(raw.substr(g.inner.start, g.inner.size()));
        if (!markers.empty()) {
          add(t.span.start, g.span.end, std::move(markers));
          ++k;
        }
        continue;
      }
      if (w == "footnotemark") {
        std::size_t end = t.span.end;
        if (k + 1 < nodes.size() && nodes[k + 1].is_leaf() && ts[nodes[k + 1].token].kind == TokenKind::Text) {
          const std::string_view arg = ts.text(ts[nodes[k + 1].token]);
          const std::size_t close = arg.find(']');
          if (!arg.empty() && arg.front() == '[' && close != std::string_view::npos)
            end = nodes[k + 1].span.start + close + 1;
        }
        if (auto m = normalize_marker(raw.substr(t.span.start, end - t.span.start))) {
          add(t.span.start, end, {*m});
        }
        continue;
      }
      if (std::find(kTextSymbolWords.begin(), kTextSymbolWords.end(), w) != kTextSymbolWords.end()) {
        std::vector<Marker> markers;
        parse_symbols(ts.text(t), markers);
        add(t.span.start, t.span.end, std::move(markers));
      }
      continue;
    }
    if (t.kind == TokenKind::Text && !t.opaque) {
      const std::string_view s = ts.text(t);
      for (std::size_t i = 0; i < s.size();) {
        bool matched = false;
        for (const auto& f : kSymbolChars) {
          if (f.form == "\xE2\x80\xA2" || s.substr(i, f.form.size()) != f.form) continue;
          add(t.span.start + i, t.span.start + i + f.form.size(), {Marker{f.symbol, 1, {}}});
          i += f.form.size();
          matched = true;
          break;
        }
        if (!matched) ++i;
      }
    }
  }
  // Merge adjacent repeats of one symbol (`**`, `\dag\dag`).
  for (MarkerSite& site : sites) {
    std::vector<Marker> merged;
    for (Marker& m : site.markers) {
      if (!merged.empty() && merged.back().symbol == m.symbol && m.symbol != MarkerSymbol::Digit &&
          m.symbol != MarkerSymbol::Letter && site.markers.size() > 1 && merged.back().rendering == m.rendering &&
          m.rendering.find(',') == std::string::npos) {
        merged.back().value += m.value;
        continue;
      }
      merged.push_back(std::move(m));
    }
    site.markers = std::move(merged);
  }
  return sites;
}

StrippedText strip_markers(std::string_view raw) {
  StrippedText out;
  out.sites = find_marker_sites(raw);
  std::string text;
  std::size_t pos = 0;
  for (const MarkerSite& site : out.sites) {
    text.append(raw.substr(pos, site.span.start - pos));
    pos = site.span.end;
    for (const Marker& m : site.markers) out.markers.push_back(m);
  }
  text.append(raw.substr(pos));
  out.text = collapse_trim(text);
  return out;
}

}  // namespace texlogic
