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

#include "oracles.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace oracle {

namespace {

const std::set<std::string> kStyle = {
    "bf", "it", "em", "sl", "sc", "rm", "sf", "tt", "emph", "textbf", "textit", "textsl", "textsc", "textrm",
    "textsf", "texttt", "textup", "textmd", "textnormal", "bfseries", "itshape", "slshape", "scshape", "mdseries",
    "upshape", "rmfamily", "sffamily", "ttfamily", "normalfont", "tiny", "scriptsize", "footnotesize", "small",
    "normalsize", "large", "Large", "LARGE", "huge", "Huge", "centerline", "underline", "boldmath", "unboldmath",
    "noindent", "indent", "par", "centering", "raggedright", "raggedleft", "medskip", "bigskip", "smallskip",
    "newline", "linebreak", "quad", "qquad", "hfill", "vfill", "break", "nobreak", "relax", "protect", "strut"};

const std::set<std::string> kDimension = {"vspace", "hspace", "vskip", "hskip", "rule"};

const std::string kAccents = "'`^\"~=.uvHcdbtrk";

// Latin letters with diacritics, enough for names and places in fixtures.
const std::map<char32_t, char> kFold = {
    {U'à', 'a'}, {U'á', 'a'}, {U'â', 'a'}, {U'ã', 'a'}, {U'ä', 'a'}, {U'å', 'a'}, {U'ç', 'c'}, {U'è', 'e'},
    {U'é', 'e'}, {U'ê', 'e'}, {U'ë', 'e'}, {U'ì', 'i'}, {U'í', 'i'}, {U'î', 'i'}, {U'ï', 'i'}, {U'ñ', 'n'},
    {U'ò', 'o'}, {U'ó', 'o'}, {U'ô', 'o'}, {U'õ', 'o'}, {U'ö', 'o'}, {U'ø', 'o'}, {U'ù', 'u'}, {U'ú', 'u'},
    {U'û', 'u'}, {U'ü', 'u'}, {U'ý', 'y'}, {U'ÿ', 'y'}, {U'À', 'a'}, {U'Á', 'a'}, {U'Â', 'a'}, {U'Ä', 'a'},
    {U'Å', 'a'}, {U'Ç', 'c'}, {U'È', 'e'}, {U'É', 'e'}, {U'Ê', 'e'}, {U'Í', 'i'}, {U'Ñ', 'n'}, {U'Ó', 'o'},
    {U'Ö', 'o'}, {U'Ø', 'o'}, {U'Ú', 'u'}, {U'Ü', 'u'}, {U'č', 'c'}, {U'Č', 'c'}, {U'ć', 'c'}, {U'š', 's'},
    {U'Š', 's'}, {U'ś', 's'}, {U'ž', 'z'}, {U'Ž', 'z'}, {U'ł', 'l'}, {U'Ł', 'l'}, {U'ń', 'n'}, {U'ř', 'r'},
    {U'ě', 'e'}, {U'ğ', 'g'}, {U'ı', 'i'}, {U'ş', 's'}, {U'ő', 'o'}, {U'ű', 'u'}, {U'ą', 'a'}, {U'ę', 'e'}};

void encode(char32_t c, std::string& out) {
  if (c < 0x80) {
    out += static_cast<char>(c);
  } else if (c < 0x800) {
    out += static_cast<char>(0xC0 | (c >> 6));
    out += static_cast<char>(0x80 | (c & 0x3F));
  } else if (c < 0x10000) {
    out += static_cast<char>(0xE0 | (c >> 12));
    out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (c & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (c >> 18));
    out += static_cast<char>(0x80 | ((c >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (c & 0x3F));
  }
}

// Skips one braced group starting at s[i] == '{'; returns the index past it.
std::size_t skip_group(const std::string& s, std::size_t i) {
  int depth = 0;
  for (; i < s.size(); ++i) {
    if (s[i] == '\\') {
      ++i;
      continue;
    }
    if (s[i] == '{') ++depth;
    if (s[i] == '}' && --depth == 0) return i + 1;
  }
  return s.size();
}

}  // namespace

std::u32string decode(const std::string& s) {
  std::u32string out;
  for (std::size_t i = 0; i < s.size();) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    int n = c < 0x80 ? 0 : (c >> 5) == 6 ? 1 : (c >> 4) == 14 ? 2 : (c >> 3) == 30 ? 3 : -1;
    if (n < 0 || i + static_cast<std::size_t>(n) >= s.size() + (n == 0 ? 1 : 0)) {
      out += static_cast<char32_t>(c);
      ++i;
      continue;
    }
    char32_t cp = n == 0 ? c : n == 1 ? (c & 0x1F) : n == 2 ? (c & 0x0F) : (c & 0x07);
    bool ok = true;
    for (int k = 1; k <= n; ++k) {
      const unsigned char cc = static_cast<unsigned char>(s[i + static_cast<std::size_t>(k)]);
      if ((cc & 0xC0) != 0x80) ok = false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (!ok) {
      out += static_cast<char32_t>(c);
      ++i;
      continue;
    }
    out += cp;
    i += static_cast<std::size_t>(n) + 1;
  }
  return out;
}

std::string normalize(const std::string& s) {
  std::string flat;
  bool math = false;
  for (std::size_t i = 0; i < s.size();) {
    const char c = s[i];
    if (c == '%') {
      while (i < s.size() && s[i] != '\n') ++i;
      continue;
    }
    if (c == '$') {
      math = !math;
      ++i;
      continue;
    }
    if (c == '{' || c == '}') {
      ++i;
      continue;
    }
    if (c == '~') {
      flat += ' ';
      ++i;
      continue;
    }
    if (c != '\\') {
      flat += c;
      ++i;
      continue;
    }
    if (i + 1 >= s.size()) break;
    const char n = s[i + 1];
    if (kAccents.find(n) != std::string::npos && !(std::isalpha(static_cast<unsigned char>(n)) &&
                                                    i + 2 < s.size() && std::isalpha(static_cast<unsigned char>(s[i + 2])))) {
      // Accent: keep the base letter only.
      std::size_t j = i + 2;
      while (j < s.size() && s[j] == ' ') ++j;
      if (j < s.size() && s[j] == '{') {
        const std::size_t e = skip_group(s, j);
        flat += normalize(s.substr(j + 1, e - j - 2));
        i = e;
      } else if (j < s.size()) {
        if (s[j] == '\\' && j + 1 < s.size() && (s[j + 1] == 'i' || s[j + 1] == 'j')) {
          flat += s[j + 1];
          j += 2;
        } else {
          flat += s[j++];
        }
        i = j;
      } else {
        i = j;
      }
      continue;
    }
    if (!std::isalpha(static_cast<unsigned char>(n))) {
      if (n == '\\' || n == ',' || n == ';' || n == ' ' || n == ':' || n == '!') {
        flat += ' ';
      } else if (n == '(' || n == ')' || n == '[' || n == ']') {
        flat += ' ';
      } else if (n != '{' && n != '}' && n != '$') {
        flat += n;
      }
      i += 2;
      continue;
    }
    std::size_t j = i + 1;
    while (j < s.size() && std::isalpha(static_cast<unsigned char>(s[j]))) ++j;
    const std::string word = s.substr(i + 1, j - i - 1);
    i = j;
    if (!math && kDimension.count(word)) {
      while (i < s.size() && (s[i] == ' ' || s[i] == '*')) ++i;
      if (i < s.size() && s[i] == '{') i = skip_group(s, i);
      continue;
    }
    if (!math && kStyle.count(word)) {
      flat += ' ';
      continue;
    }
    if (word == "and" || word == "AND" || word == "quad" || word == "qquad" || word == "newline" ||
        word == "linebreak" || word == "enspace") {
      flat += ' ';
      continue;
    }
    if (word == "i" || word == "j") {
      flat += word;
      continue;
    }
    if (word == "ss") {
      flat += "ss";
      continue;
    }
    if (word == "o" || word == "O") {
      flat += 'o';
      continue;
    }
    flat += word;
  }

  std::string out;
  bool space = true;
  for (char32_t cp : decode(flat)) {
    if (cp < 0x80) {
      const char ch = static_cast<char>(cp);
      if (std::isspace(static_cast<unsigned char>(ch))) {
        if (!space) out += ' ';
        space = true;
        continue;
      }
      if (ch == '-' && !out.empty() && out.back() == '-') continue;
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    } else if (cp == 0x2013 || cp == 0x2014) {
      if (out.empty() || out.back() != '-') out += '-';
    } else if (auto it = kFold.find(cp); it != kFold.end()) {
      out += it->second;
    } else {
      encode(cp, out);
    }
    space = false;
  }
  if (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::size_t levenshtein(const std::u32string& a, const std::u32string& b) {
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

double similarity(const std::string& a, const std::string& b) {
  const std::u32string x = decode(normalize(a)), y = decode(normalize(b));
  const std::size_t longest = std::max(x.size(), y.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(levenshtein(x, y)) / static_cast<double>(longest);
}

double f1(const std::vector<std::string>& got, const std::vector<std::string>& want) {
  if (got.empty() && want.empty()) return 1.0;
  std::vector<std::string> g, w;
  for (const auto& s : got) g.push_back(normalize(s));
  for (const auto& s : want) w.push_back(normalize(s));
  std::size_t tp = 0;
  for (const auto& s : g) {
    auto it = std::find(w.begin(), w.end(), s);
    if (it != w.end()) {
      w.erase(it);
      ++tp;
    }
  }
  if (tp == 0) return 0.0;
  const double p = static_cast<double>(tp) / static_cast<double>(got.size());
  const double r = static_cast<double>(tp) / static_cast<double>(want.size());
  return 2 * p * r / (p + r);
}

std::string splice(const std::string& source, const std::vector<Splice>& edits) {
  std::string out;
  std::size_t at = 0;
  for (const Splice& e : edits) {
    out.append(source, at, e.start - at);
    out += e.replacement;
    at = e.end;
  }
  out.append(source, at, std::string::npos);
  return out;
}

std::size_t imbalance(const std::string& s) {
  std::size_t bad = 0;
  long depth = 0;
  std::vector<std::string> envs;
  auto arg = [&](std::size_t i) -> std::pair<std::string, std::size_t> {
    if (i >= s.size() || s[i] != '{') return {"", i};
    const std::size_t close = s.find('}', i);
    if (close == std::string::npos) return {"", i};
    return {s.substr(i + 1, close - i - 1), close + 1};
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '%') {
      while (i < s.size() && s[i] != '\n') ++i;
      continue;
    }
    if (c == '{') {
      ++depth;
      continue;
    }
    if (c == '}') {
      if (depth == 0) {
        ++bad;
      } else {
        --depth;
      }
      continue;
    }
    if (c != '\\') continue;
    if (s.compare(i, 5, "\\verb") == 0 && i + 6 < s.size() && !std::isalpha(static_cast<unsigned char>(s[i + 5]))) {
      const char delim = s[i + 5];
      const std::size_t close = s.find(delim, i + 6);
      i = close == std::string::npos ? s.size() : close;
      continue;
    }
    if (s.compare(i, 7, "\\begin{") == 0) {
      auto [name, next] = arg(i + 6);
      if (name == "verbatim") {
        const std::size_t close = s.find("\\end{verbatim}", next);
        i = close == std::string::npos ? s.size() : close + 13;
        continue;
      }
      envs.push_back(name);
      i = next - 1;
      continue;
    }
    if (s.compare(i, 5, "\\end{") == 0) {
      auto [name, next] = arg(i + 4);
      if (!envs.empty() && envs.back() == name) {
        envs.pop_back();
      } else {
        ++bad;
      }
      i = next - 1;
      continue;
    }
    ++i;  // escaped character or first letter of a control word
  }
  return bad + static_cast<std::size_t>(depth) + envs.size();
}

}  // namespace oracle
