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

#include "texlogic/detector.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>

#include "layout.hpp"

namespace texlogic {

using layout::npos;

namespace {

bool one_of(std::string_view w, std::initializer_list<std::string_view> words) {
  return std::find(words.begin(), words.end(), w) != words.end();
}

// Weights in tenths so sums are exact.
int weight_tenths(CueKind kind) {
  switch (kind) {
    case CueKind::Centered: return 3;
    case CueKind::Bold: return 2;
    case CueKind::Italic: return 2;
    case CueKind::LargeFont: return 2;
    case CueKind::SolitaryParagraph: return 2;
    case CueKind::NumberPrefix: return 2;
    case CueKind::MarkerSymbol: return 3;
    case CueKind::LeadingKeyword: return 4;
    case CueKind::NearDocumentStart: return 2;
    case CueKind::InsideTitlepage: return 2;
  }
  return 0;
}

constexpr std::array<std::string_view, 7> kTheoremWords = {"Definition", "Theorem",  "Lemma",  "Proposition",
                                                           "Corollary",  "Remark",   "Example"};

constexpr std::array<std::string_view, 9> kKeywordLines = {"Keywords", "Key words", "Key Words", "PACS", "MSC",
                                                           "AMS",      "Mathematics Subject", "Index Terms",
                                                           "Subject classification"};

std::string trim(std::string_view s) { return text::trim(s); }

bool accepted(const Detection& d, double threshold) { return d.confidence + 1e-9 >= threshold; }

struct Finding {
  Detection d;
  std::vector<std::size_t> lines;
};

Detection make(DetectionKind kind, SourceSpan span, SourceSpan extent, std::vector<Cue> cues) {
  Detection d;
  d.kind = kind;
  d.span = span;
  d.extent = extent;
  d.cues = std::move(cues);
  d.confidence = score(d.cues);
  return d;
}

struct NumberParse {
  std::string number;
  int level = 1;
  std::string rest;
};

NumberParse parse_number(std::string_view s) {
  NumberParse out;
  std::size_t i = 0;
  auto skip_space = [&] {
    for (;;) {
      while (i < s.size() && (s[i] == ' ' || s[i] == '~' || s[i] == '\n' || s[i] == '\t')) ++i;
      if (s.substr(i, 2) == "\\ ") {
        i += 2;
        continue;
      }
      bool skipped = false;
      for (std::string_view w : {"\\quad", "\\qquad", "\\enspace", "\\enskip"}) {
        if (s.substr(i, w.size()) == w && (i + w.size() >= s.size() || !std::isalpha(static_cast<unsigned char>(s[i + w.size()])))) {
          i += w.size();
          skipped = true;
          break;
        }
      }
      if (!skipped) return;
    }
  };
  skip_space();
  bool section_sign = false;
  if (s.substr(i, 2) == "\\S" && (i + 2 >= s.size() || !std::isalpha(static_cast<unsigned char>(s[i + 2])))) {
    i += 2;
    section_sign = true;
  } else if (s.substr(i, 2) == "\xC2\xA7") {
    i += 2;
    section_sign = true;
  }
  if (section_sign) skip_space();
  const std::size_t start = i;
  if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    int components = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      ++components;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i + 1 < s.size() && s[i] == '.' && std::isdigit(static_cast<unsigned char>(s[i + 1]))) {
        ++i;
        continue;
      }
      break;
    }
    if (i < s.size() && s[i] == '.') ++i;
    const std::size_t end = i;
    if (i < s.size() && !(s[i] == ' ' || s[i] == '~' || s[i] == '\\' || s[i] == '\n')) return NumberParse{{}, 1, std::string(s)};
    skip_space();
    if (i >= s.size()) return NumberParse{{}, 1, std::string(s)};
    out.number = std::string(s.substr(start, end - start));
    out.level = section_sign ? 1 : std::min(components, 3);
    out.rest = trim(s.substr(i));
    return out;
  }
  if (!section_sign) {
    while (i < s.size() && (s[i] == 'I' || s[i] == 'V' || s[i] == 'X')) ++i;
    if (i > start && i < s.size() && s[i] == '.') {
      const std::size_t end = ++i;
      skip_space();
      if (i < s.size() && i > end) {
        out.number = std::string(s.substr(start, end - start));
        out.level = 1;
        out.rest = trim(s.substr(i));
        return out;
      }
    }
  }
  out.rest = trim(s);
  return out;
}

struct TheoremLabel {
  std::string keyword;
  std::string note;
};

std::optional<TheoremLabel> theorem_label(std::string_view plain) {
  for (std::string_view kw : kTheoremWords) {
    if (plain.substr(0, kw.size()) != kw) continue;
    std::string_view rest = plain.substr(kw.size());
    if (!rest.empty() && std::isalpha(static_cast<unsigned char>(rest[0]))) continue;
    TheoremLabel label{std::string(kw), {}};
    std::size_t i = 0;
    while (i < rest.size() && rest[i] == ' ') ++i;
    while (i < rest.size() && (std::isdigit(static_cast<unsigned char>(rest[i])) || rest[i] == '.')) ++i;
    while (i < rest.size() && rest[i] == ' ') ++i;
    if (i < rest.size() && rest[i] == '(') {
      const std::size_t close = rest.find(')', i);
      if (close == std::string_view::npos) return std::nullopt;
      label.note = std::string(rest.substr(i + 1, close - i - 1));
      i = close + 1;
    }
    while (i < rest.size() && (rest[i] == '.' || rest[i] == ':' || rest[i] == ' ')) ++i;
    if (i != rest.size()) return std::nullopt;
    return label;
  }
  return std::nullopt;
}

bool is_keyword_line(std::string_view plain) {
  return std::any_of(kKeywordLines.begin(), kKeywordLines.end(),
                     [&](std::string_view k) { return plain.substr(0, k.size()) == k; });
}

bool is_label_word(std::string_view w) {
  std::string lower;
  for (char c : w) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return lower == "abstract" || lower == "summary";
}

std::string strip_label_punctuation(std::string s) {
  while (!s.empty() && (s.back() == '.' || s.back() == ':' || s.back() == ' ' || s.back() == '-')) s.pop_back();
  for (std::string_view dash : {"\xE2\x80\x94", "\xE2\x80\x93"}) {
    if (s.size() >= dash.size() && s.compare(s.size() - dash.size(), dash.size(), dash) == 0) {
      s.resize(s.size() - dash.size());
      while (!s.empty() && s.back() == ' ') s.pop_back();
    }
  }
  return s;
}

struct NamePiece {
  std::string name;
  std::vector<Marker> markers;
  std::vector<std::string> notes;
};

std::optional<std::vector<NamePiece>> split_names(const std::string& content) {
  const std::vector<MarkerSite> sites = find_marker_sites(content);
  std::string s;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    s += content.substr(pos, sites[i].span.start - pos);
    s += '\x01';
    s += static_cast<char>('A' + std::min<std::size_t>(i, 60));
    pos = sites[i].span.end;
  }
  s += content.substr(pos);

  const BlockTree tree = parse(s);
  const TokenStream& ts = tree.tokens();
  const auto& nodes = tree.nodes();
  std::vector<std::string> raw_pieces(1);
  std::vector<std::vector<std::string>> notes(1);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const Node& n = nodes[k];
    if (n.is_leaf()) {
      const Token& t = ts[n.token];
      if (t.kind == TokenKind::Alignment) {
        raw_pieces.emplace_back();
        notes.emplace_back();
        continue;
      }
      if (t.kind == TokenKind::ControlWord) {
        const std::string_view w = ts.name(t);
        if (w == "footnote" || w == "thanks") {
          std::size_t g = k + 1;
          while (g < nodes.size() && nodes[g].is_leaf() && ts[nodes[g].token].kind == TokenKind::Whitespace) ++g;
          if (g < nodes.size() && nodes[g].kind == NodeKind::Group) {
            notes.back().push_back(text::collapse_whitespace(trim(s.substr(nodes[g].inner.start, nodes[g].inner.size()))));
            k = g;
            continue;
          }
        }
        if (one_of(w, {"and", "AND", "quad", "qquad", "hfill", "newline", "hspace", "hskip"})) {
          raw_pieces.emplace_back();
          notes.emplace_back();
          if (w == "hspace" && k + 1 < nodes.size() && nodes[k + 1].kind == NodeKind::Group) ++k;
          continue;
        }
      }
      if (t.kind == TokenKind::Text) {
        std::string text(ts.text(t));
        // Word "and" becomes a separator.
        std::string buf;
        for (std::size_t i = 0; i < text.size(); ++i) {
          const bool start_ok = i == 0 || text[i - 1] == ' ' || text[i - 1] == '~';
          const bool end_ok = i + 3 >= text.size() || text[i + 3] == ' ' || text[i + 3] == '~';
          if (start_ok && end_ok && text.compare(i, 3, "and") == 0) {
            buf += '\x02';
            i += 2;
            continue;
          }
          buf += text[i];
        }
        for (char c : buf) {
          if (c == ',' || c == ';' || c == '\x02') {
            raw_pieces.emplace_back();
            notes.emplace_back();
          } else {
            raw_pieces.back() += c;
          }
        }
        continue;
      }
    }
    raw_pieces.back() += s.substr(n.span.start, n.span.size());
  }

  std::vector<NamePiece> out;
  for (std::size_t r = 0; r < raw_pieces.size(); ++r) {
    const std::string& rp = raw_pieces[r];
    NamePiece p;
    p.notes = notes[r];
    std::string name;
    for (std::size_t i = 0; i < rp.size(); ++i) {
      if (rp[i] == '\x01' && i + 1 < rp.size()) {
        const std::size_t idx = static_cast<std::size_t>(rp[i + 1] - 'A');
        if (idx < sites.size()) {
          for (const Marker& m : sites[idx].markers) p.markers.push_back(m);
        }
        ++i;
        continue;
      }
      name += rp[i];
    }
    name = text::unwrap(text::collapse_whitespace(trim(name)));
    while (!name.empty() && (name.back() == '.' && name.size() > 1 && name[name.size() - 2] == ' ')) name.pop_back();
    name = trim(name);
    if (name.empty()) {
      if (!out.empty()) {
        for (const Marker& m : p.markers) out.back().markers.push_back(m);
        for (std::string& note : p.notes) out.back().notes.push_back(std::move(note));
      }
      continue;
    }
    if (!is_name_shaped(name)) return std::nullopt;
    p.name = name;
    out.push_back(std::move(p));
  }
  if (out.empty()) return std::nullopt;
  return out;
}

struct AffiliationParse {
  bool marker_led = false;
  std::optional<Marker> marker;
  std::string text;
  std::string keyword;
};

// Content without \footnote{...} and \thanks{...} groups.
std::string without_notes(const std::string& content) {
  std::string out;
  std::size_t i = 0;
  while (i < content.size()) {
    std::size_t cmd = std::string::npos;
    for (std::string_view w : {"\\footnote", "\\thanks"}) {
      if (content.compare(i, w.size(), w) == 0) cmd = w.size();
    }
    if (cmd == std::string::npos) {
      out += content[i++];
      continue;
    }
    std::size_t j = i + cmd;
    while (j < content.size() && content[j] == ' ') ++j;
    if (j >= content.size() || content[j] != '{') {
      out += content[i++];
      continue;
    }
    int depth = 0;
    for (; j < content.size(); ++j) {
      if (content[j] == '\\') {
        ++j;
      } else if (content[j] == '{') {
        ++depth;
      } else if (content[j] == '}' && --depth == 0) {
        break;
      }
    }
    i = j + 1;
  }
  return out;
}

// Street numbers or a comma-separated place list, as in
// "Nordita, Blegdamsvej 17, Copenhagen, Denmark".
bool looks_like_address(const std::string& plain) {
  const std::size_t commas = static_cast<std::size_t>(std::count(plain.begin(), plain.end(), ','));
  if (commas < 2) return false;
  if (plain.find(". ") != std::string::npos) return false;
  return std::any_of(plain.begin(), plain.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
         commas >= 3;
}

AffiliationParse parse_affiliation(const std::string& content) {
  AffiliationParse a;
  const std::vector<MarkerSite> sites = find_marker_sites(content);
  const std::size_t lead = content.find_first_not_of(" \t\n");
  if (!sites.empty() && sites[0].span.start == lead && !sites[0].markers.empty()) {
    a.marker_led = true;
    a.marker = sites[0].markers[0];
    a.text = text::unwrap(trim(content.substr(sites[0].span.end)));
  } else {
    a.text = trim(content);
  }
  a.keyword = institution_keyword(a.text);
  return a;
}

class Detector {
 public:
  explicit Detector(const BlockTree& tree)
      : tree_(tree), ts_(tree.tokens()), src_(tree.source()), logical_(extract_logical(tree)),
        facts_(layout::maketitle_facts(tree)) {}

  const LogicalDocument& logical() const { return logical_; }
  const MaketitleFacts& facts() const { return facts_; }

  struct Region {
    SourceSpan span;
    bool fallback = false;
  };

  Region region() {
    const SourceSpan body = logical_.body;
    std::size_t end = npos;
    auto consider = [&](std::size_t at) { end = std::min(end, at); };
    for (const Node& n : layout::body_nodes(tree_)) {
      if (n.in_definition || n.span.start < body.start) continue;
      if (n.kind == NodeKind::Environment) {
        if (n.name == "abstract" || n.name == "titlepage") consider(n.span.end);
        continue;
      }
      if (!n.is_leaf() || ts_[n.token].kind != TokenKind::ControlWord) continue;
      const std::string_view w = ts_.name(ts_[n.token]);
      if (one_of(w, {"section", "chapter", "part", "subsection", "maketitle"})) consider(n.span.start);
      if (facts_.custom_invoked && w == facts_.custom_macro) consider(n.span.start);
    }
    for (const Finding& h : headers(body.start)) {
      const bool numbered = std::any_of(h.d.cues.begin(), h.d.cues.end(),
                                        [](const Cue& c) { return c.kind == CueKind::NumberPrefix; });
      if (numbered && accepted(h.d, kApplyThreshold)) {
        consider(h.d.extent.start);
        break;
      }
    }
    Region r;
    if (end == npos) {
      r.fallback = true;
      end = body.end;
      const std::string_view rest = std::string_view(src_).substr(body.start, body.size());
      if (rest.find_first_not_of(" \t\r\n") == std::string_view::npos) end = body.start;
    }
    r.span = SourceSpan{body.start, std::max(end, body.start), line_of(body.start)};
    return r;
  }

  void load_lines(const SourceSpan& region) {
    layout::Segmentation seg = layout::segment(tree_, region);
    lines_ = std::move(seg.lines);
    containers_ = std::move(seg.containers);
    claimed_.assign(lines_.size(), false);
  }

  std::vector<Line>& lines() { return lines_; }
  std::vector<Container>& containers() { return containers_; }

  // Ranked title candidates; the first one is the chosen title with any
  // continuation lines merged in.
  std::vector<Finding> titles() {
    std::vector<Finding> out;
    if (logical_.title) return out;
    for (std::size_t i = 0; i < lines_.size(); ++i) {
      const Line& l = lines_[i];
      if (l.logical || l.ordinal >= 4) continue;
      if (l.words == 0 || l.words > 30) continue;
      const std::string plain = text::plain(l.content);
      if (abstract_label(l) || layout::looks_like_date(plain) || layout::looks_like_email(l.content)) continue;
      if (parse_affiliation(l.content).marker_led) continue;
      std::vector<Cue> cues;
      if (l.centered) cues.push_back({CueKind::Centered, l.span, {}});
      if (l.bold) cues.push_back({CueKind::Bold, l.span, {}});
      if (l.large) cues.push_back({CueKind::LargeFont, l.span, {}});
      if (cues.empty()) continue;
      if (l.italic) cues.push_back({CueKind::Italic, l.span, {}});
      if (l.ordinal < 3) cues.push_back({CueKind::NearDocumentStart, l.span, {}});
      if (l.titlepage) cues.push_back({CueKind::InsideTitlepage, l.span, {}});
      const bool names = !find_marker_sites(l.content).empty() && split_names(l.content).has_value();
      if (names) continue;
      Finding f{make(DetectionKind::Title, l.span, l.extent, std::move(cues)), {i}};
      f.d.text = l.content;
      f.d.line = i;
      out.push_back(std::move(f));
    }
    std::stable_sort(out.begin(), out.end(), [](const Finding& a, const Finding& b) {
      if (a.d.confidence != b.d.confidence) return a.d.confidence > b.d.confidence;
      return a.d.span.start < b.d.span.start;
    });
    if (out.empty()) return out;
    Finding& best = out.front();
    const Line& first = lines_[best.d.line];
    for (std::size_t i = best.d.line + 1; i < lines_.size() && best.lines.size() < 4; ++i) {
      const Line& l = lines_[i];
      if (l.logical || l.container != first.container || l.bold != first.bold || l.large != first.large) break;
      if (!(l.bold || l.large) || l.words == 0 || l.words > 30) break;
      if (!find_marker_sites(l.content).empty() || abstract_label(l)) break;
      best.lines.push_back(i);
      best.d.text += " " + l.content;
      best.d.span.end = l.span.end;
      best.d.extent.end = l.extent.end;
    }
    best.d.text = text::collapse_whitespace(best.d.text);
    return out;
  }

  struct AuthorBlock {
    std::vector<Finding> authors;
    std::vector<Finding> affiliations;
    std::vector<Author> people;
    std::vector<Affiliation> places;
    std::vector<std::size_t> person_finding;  // index into authors
    std::vector<std::size_t> place_finding;   // index into affiliations (first line)
    std::size_t last_line = npos;
  };

  AuthorBlock authors(std::size_t first, std::size_t stop) {
    AuthorBlock b;
    if (!logical_.author_commands.empty()) return b;
    std::size_t current = npos;
    std::size_t current_line = npos;
    bool marker_mode = false;
    bool near_start = false;
    for (std::size_t i = first; i < stop && i < lines_.size(); ++i) {
      const Line& l = lines_[i];
      if (claimed_[i]) continue;
      if (l.logical) {
        if (!b.people.empty()) break;
        continue;
      }
      if (l.words > 25) break;
      const std::string plain = text::plain(l.content);
      if (layout::looks_like_date(plain)) continue;
      const AffiliationParse aff = parse_affiliation(l.content);
      std::optional<std::vector<NamePiece>> names;
      if (!aff.marker_led && !layout::looks_like_email(without_notes(l.content))) names = split_names(l.content);
      if (names) {
        if (b.people.empty()) near_start = l.ordinal <= 3;
        std::vector<Cue> cues = line_cues(l, near_start);
        bool marked = false;
        for (const NamePiece& p : *names) marked = marked || !p.markers.empty();
        if (marked) cues.push_back({CueKind::MarkerSymbol, l.span, {}});
        Finding f{make(DetectionKind::AuthorLine, l.span, l.extent, std::move(cues)), {i}};
        f.d.text = l.content;
        f.d.line = i;
        for (std::size_t k = 0; k < names->size(); ++k) {
          Author a;
          a.name = StyledText::from_raw((*names)[k].name);
          a.markers = (*names)[k].markers;
          a.notes = (*names)[k].notes;
          a.span = SourceSpan{l.span.start + k, l.span.start + k + 1, l.span.line};
          b.people.push_back(std::move(a));
          b.person_finding.push_back(b.authors.size());
        }
        b.authors.push_back(std::move(f));
        b.last_line = i;
        current = npos;
        continue;
      }
      if (b.people.empty()) continue;
      const bool email = layout::looks_like_email(l.content);
      const bool address = aff.keyword.empty() && !marker_mode && current == npos && looks_like_address(plain);
      const bool starts_new =
          !email && (aff.marker_led || address || (!aff.keyword.empty() && (!marker_mode || current == npos)));
      if (starts_new) {
        Affiliation place;
        place.text = StyledText::from_raw(aff.text);
        place.marker = aff.marker;
        place.span = l.span;
        marker_mode = marker_mode || aff.marker_led;
        current = b.places.size();
        current_line = i;
        b.place_finding.push_back(b.affiliations.size());
        b.places.push_back(std::move(place));
        b.affiliations.push_back(affiliation_finding(l, i, aff, near_start));
        b.last_line = i;
        continue;
      }
      const Line& prev = lines_[current_line == npos ? i : current_line];
      const bool continuation = current != npos && l.words <= 15 && l.centered == prev.centered &&
                                l.bold == prev.bold && (!l.paragraph_start || prev.container == l.container);
      if (continuation || (email && current != npos)) {
        Affiliation& place = b.places[current];
        place.text = StyledText::from_raw(place.text.raw + " " + aff.text);
        b.affiliations.push_back(affiliation_finding(l, i, aff, near_start));
        current_line = i;
        b.last_line = i;
        continue;
      }
      if (email) continue;
      break;
    }
    return b;
  }

  struct Label {
    std::size_t end = 0;  // absolute offset after the label and its punctuation
    bool bold = false;
    bool italic = false;
    std::string word;
  };

  std::optional<Label> abstract_label(const Line& l) const {
    const BlockTree t = parse(l.raw);
    const TokenStream& ts = t.tokens();
    const auto& nodes = t.nodes();
    text::StyleState st;
    std::size_t k = 0;
    for (; k < nodes.size(); ++k) {
      const Node& n = nodes[k];
      if (n.is_leaf() && ts[n.token].kind == TokenKind::Whitespace) continue;
      if (n.is_leaf() && ts[n.token].kind == TokenKind::ControlWord) {
        const std::string_view w = ts.name(ts[n.token]);
        if (text::apply_switch(w, st) || one_of(w, {"noindent", "indent", "centering", "leavevmode"})) continue;
      }
      break;
    }
    if (k >= nodes.size()) return std::nullopt;
    Label label;
    std::size_t end = 0;
    const Node& n = nodes[k];
    auto check = [&](const std::string& raw) {
      const std::string words = strip_label_punctuation(text::plain(text::unwrap(raw)));
      return is_label_word(words) ? std::optional<std::string>(words) : std::nullopt;
    };
    if (n.kind == NodeKind::Group) {
      const std::string raw = l.raw.substr(n.span.start, n.span.size());
      auto w = check(raw);
      if (!w) return std::nullopt;
      bool centered = false;
      const text::StyleState s = layout::line_style(raw, st, centered);
      label.bold = s.bold || s.smallcaps;
      label.italic = s.italic;
      label.word = *w;
      end = n.span.end;
    } else if (n.is_leaf() && ts[n.token].kind == TokenKind::ControlWord && k + 1 < nodes.size() &&
               nodes[k + 1].kind == NodeKind::Group) {
      const std::string_view w = ts.name(ts[n.token]);
      text::StyleState s = st;
      if (w == "emph" || !text::apply_wrapper(w, s)) return std::nullopt;
      const Node& g = nodes[k + 1];
      const std::string raw = l.raw.substr(g.span.start, g.span.size());
      auto word = check(raw);
      if (!word) return std::nullopt;
      bool centered = false;
      s = layout::line_style(raw, s, centered);
      label.bold = s.bold || s.smallcaps;
      label.italic = s.italic;
      label.word = *word;
      end = g.span.end;
      ++k;
    } else if (n.is_leaf() && ts[n.token].kind == TokenKind::Text) {
      const std::string_view t = ts.text(ts[n.token]);
      std::size_t e = 0;
      while (e < t.size() && std::isalpha(static_cast<unsigned char>(t[e]))) ++e;
      if (!is_label_word(t.substr(0, e))) return std::nullopt;
      if (e < t.size() && t[e] != '.' && t[e] != ':' && t[e] != ' ') return std::nullopt;
      if (e < t.size() && t[e] == ' ' && e + 1 < t.size() && t[e + 1] != '-' && t.substr(e + 1, 3) != "\xE2\x80\x94")
        return std::nullopt;
      label.word = std::string(t.substr(0, e));
      label.bold = st.bold;
      label.italic = st.italic;
      end = n.span.start + e;
      while (end < n.span.end && (l.raw[end] == '.' || l.raw[end] == ':' || l.raw[end] == ' ' || l.raw[end] == '-'))
        ++end;
    } else {
      return std::nullopt;
    }
    // Punctuation written after the styled label.
    if (nodes[k].kind != NodeKind::Leaf) {
      std::size_t j = k + 1;
      while (j < nodes.size() && nodes[j].is_leaf() && ts[nodes[j].token].kind == TokenKind::Whitespace) ++j;
      if (j < nodes.size() && nodes[j].is_leaf() && ts[nodes[j].token].kind == TokenKind::Text) {
        const Node& p = nodes[j];
        std::size_t e = p.span.start;
        for (;;) {
          if (e < p.span.end && (l.raw[e] == '.' || l.raw[e] == ':' || l.raw[e] == '-')) {
            ++e;
          } else if (e + 3 <= p.span.end && (l.raw.compare(e, 3, "\xe2\x80\x94") == 0 || l.raw.compare(e, 3, "\xe2\x80\x93") == 0)) {
            e += 3;  // em or en dash
          } else {
            break;
          }
        }
        if (e > p.span.start) end = e;
      }
    }
    label.end = l.span.start + end;
    return label;
  }

  // Lines after `from` that belong to an abstract starting there.
  std::optional<Finding> abstract_from(std::size_t from, std::size_t stop) {
    if (logical_.abstract_env) return std::nullopt;
    for (std::size_t i = from; i < stop && i < lines_.size(); ++i) {
      if (claimed_[i] || lines_[i].logical) continue;
      auto label = abstract_label(lines_[i]);
      if (!label) continue;
      const Line& l = lines_[i];
      Finding f;
      f.lines.push_back(i);
      std::size_t text_start = label->end;
      while (text_start < l.span.end && std::isspace(static_cast<unsigned char>(src_[text_start]))) ++text_start;
      std::size_t text_end = l.span.end;
      std::size_t extent_end = l.extent.end;
      const bool standalone = text_start >= l.span.end;
      bool started = !standalone;
      for (std::size_t j = i + 1; j < stop && j < lines_.size(); ++j) {
        const Line& n = lines_[j];
        if (n.logical || claimed_[j]) break;
        const std::string plain = text::plain(n.content);
        if (is_keyword_line(plain) || abstract_label(n)) break;
        if (n.content.front() == '\\' && n.words <= 1) break;
        if (!standalone && n.paragraph_start) break;
        if (!started) {
          text_start = n.span.start;
          started = true;
        }
        f.lines.push_back(j);
        text_end = n.span.end;
        extent_end = n.extent.end;
      }
      if (text_start >= text_end) return std::nullopt;
      const std::string raw = src_.substr(text_start, text_end - text_start);
      std::vector<Cue> cues;
      cues.push_back({CueKind::LeadingKeyword, SourceSpan{l.span.start, label->end, l.span.line}, label->word});
      if (label->bold) cues.push_back({CueKind::Bold, l.span, {}});
      bool centered = false;
      const text::StyleState body_style = layout::line_style(raw, {}, centered);
      if (label->italic || body_style.italic) cues.push_back({CueKind::Italic, l.span, {}});
      if (l.centered) cues.push_back({CueKind::Centered, l.span, {}});
      if (l.titlepage) cues.push_back({CueKind::InsideTitlepage, l.span, {}});
      SourceSpan extent{l.span.start, std::max(text_end, extent_end), l.span.line};
      extent = expand_to_containers(extent, f.lines);
      f.d = make(DetectionKind::Abstract, SourceSpan{text_start, text_end, line_of(text_start)}, extent, std::move(cues));
      f.d.text = text::unwrap(raw);
      f.d.word = label->word;
      f.d.line = i;
      return f;
    }
    return std::nullopt;
  }

  std::optional<Finding> unlabeled_abstract(std::size_t from, std::size_t stop) {
    if (logical_.abstract_env) return std::nullopt;
    for (std::size_t i = from; i < stop && i < lines_.size(); ++i) {
      const Line& l = lines_[i];
      if (claimed_[i] || l.logical) continue;
      if (!(l.centered || l.small || l.italic)) continue;
      Finding f;
      f.lines.push_back(i);
      std::size_t words = l.words;
      std::size_t end = l.span.end, extent_end = l.extent.end;
      for (std::size_t j = i + 1; j < stop && j < lines_.size(); ++j) {
        const Line& n = lines_[j];
        if (n.logical || claimed_[j] || n.paragraph_start || n.container != l.container) break;
        f.lines.push_back(j);
        words += n.words;
        end = n.span.end;
        extent_end = n.extent.end;
      }
      if (words < 20) continue;
      const std::string raw = src_.substr(l.span.start, end - l.span.start);
      if (is_keyword_line(text::plain(text::unwrap(raw)))) continue;
      std::vector<Cue> cues;
      if (l.centered) cues.push_back({CueKind::Centered, l.span, {}});
      if (l.italic) cues.push_back({CueKind::Italic, l.span, {}});
      if (l.titlepage) cues.push_back({CueKind::InsideTitlepage, l.span, {}});
      SourceSpan extent = expand_to_containers(SourceSpan{l.span.start, extent_end, l.span.line}, f.lines);
      f.d = make(DetectionKind::Abstract, SourceSpan{l.span.start, end, l.span.line}, extent, std::move(cues));
      f.d.text = text::unwrap(raw);
      f.d.line = i;
      return f;
    }
    return std::nullopt;
  }

  // Grows an extent over containers whose every line is in `owned`.
  SourceSpan expand_to_containers(SourceSpan extent, const std::vector<std::size_t>& owned) const {
    const std::set<std::size_t> mine(owned.begin(), owned.end());
    bool grew = true;
    while (grew) {
      grew = false;
      for (const Container& c : containers_) {
        if (c.has_comment || c.lines.empty() || c.kind == "titlepage") continue;
        if (c.span.start >= extent.start && c.span.end <= extent.end) continue;
        if (!c.span.intersects(extent)) continue;
        if (!std::all_of(c.lines.begin(), c.lines.end(), [&](std::size_t i) { return mine.count(i) > 0; })) continue;
        extent.start = std::min(extent.start, c.span.start);
        extent.end = std::max(extent.end, c.span.end);
        grew = true;
      }
    }
    return extent;
  }

  void claim(const std::vector<std::size_t>& ls) {
    for (std::size_t i : ls) claimed_[i] = true;
  }

  // ---- body ----

  std::vector<const std::vector<Node>*> sibling_lists(std::size_t from) const {
    std::vector<const std::vector<Node>*> out;
    collect_lists(layout::body_nodes(tree_), from, out);
    return out;
  }

  std::vector<Finding> headers(std::size_t from) const {
    std::vector<Finding> out;
    for (const auto* list : sibling_lists(from)) {
      for (const layout::Paragraph& p : layout::paragraphs(ts_, *list, from)) {
        if (auto f = header_of(p)) out.push_back(std::move(*f));
      }
    }
    std::sort(out.begin(), out.end(), [](const Finding& a, const Finding& b) { return a.d.span.start < b.d.span.start; });
    return out;
  }

  std::vector<Finding> theorems(std::size_t from) const {
    std::vector<Finding> out;
    for (const auto* list : sibling_lists(from)) {
      for (const layout::Paragraph& p : layout::paragraphs(ts_, *list, from)) {
        if (auto f = theorem_of(p)) out.push_back(std::move(*f));
      }
    }
    std::sort(out.begin(), out.end(), [](const Finding& a, const Finding& b) { return a.d.span.start < b.d.span.start; });
    return out;
  }

  std::vector<Finding> emphases(std::size_t from, const std::vector<SourceSpan>& claimed) const {
    std::vector<Finding> out;
    emphasis_walk(layout::body_nodes(tree_), from, claimed, out);
    std::sort(out.begin(), out.end(), [](const Finding& a, const Finding& b) { return a.d.span.start < b.d.span.start; });
    return out;
  }

  std::size_t line_of(std::size_t offset) const {
    return 1 + static_cast<std::size_t>(std::count(src_.begin(), src_.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
  }

 private:
  std::vector<Cue> line_cues(const Line& l, bool near_start) const {
    std::vector<Cue> cues;
    if (l.centered) cues.push_back({CueKind::Centered, l.span, {}});
    if (l.bold) cues.push_back({CueKind::Bold, l.span, {}});
    if (l.italic) cues.push_back({CueKind::Italic, l.span, {}});
    if (near_start) cues.push_back({CueKind::NearDocumentStart, l.span, {}});
    if (l.titlepage) cues.push_back({CueKind::InsideTitlepage, l.span, {}});
    return cues;
  }

  Finding affiliation_finding(const Line& l, std::size_t i, const AffiliationParse& aff, bool near_start) const {
    std::vector<Cue> cues = line_cues(l, near_start);
    if (aff.marker_led) cues.push_back({CueKind::MarkerSymbol, l.span, {}});
    if (!aff.keyword.empty()) cues.push_back({CueKind::LeadingKeyword, l.span, aff.keyword});
    Finding f{make(DetectionKind::AffiliationLine, l.span, l.extent, std::move(cues)), {i}};
    f.d.text = aff.text;
    f.d.line = i;
    return f;
  }

  static bool excluded_environment(std::string_view name) {
    return one_of(name, {"thebibliography", "tabular", "tabular*", "tabularx", "table", "table*", "figure", "figure*",
                         "array", "tikzpicture", "picture", "titlepage", "abstract", "verbatim", "lstlisting"});
  }

  void collect_lists(const std::vector<Node>& nodes, std::size_t from,
                     std::vector<const std::vector<Node>*>& out) const {
    out.push_back(&nodes);
    for (const Node& n : nodes) {
      if (n.span.end <= from || n.in_definition) continue;
      if (n.kind == NodeKind::Environment && !excluded_environment(n.name)) collect_lists(n.children, from, out);
    }
  }

  std::string_view word(const Node* n) const {
    if (!n->is_leaf() || ts_[n->token].kind != TokenKind::ControlWord) return {};
    return ts_.name(ts_[n->token]);
  }
  bool is_ws(const Node* n) const { return n->is_leaf() && ts_[n->token].kind == TokenKind::Whitespace; }
  bool is_text(const Node* n, std::string_view t) const {
    return n->is_leaf() && ts_[n->token].kind == TokenKind::Text && ts_.text(ts_[n->token]) == t;
  }

  // Skips leading spacing/indent commands; returns the first content index.
  std::size_t skip_leading(const std::vector<const Node*>& nodes, std::size_t i, std::size_t j) const {
    while (i < j) {
      const Node* n = nodes[i];
      if (is_ws(n)) {
        ++i;
        continue;
      }
      const std::string_view w = word(n);
      if (!w.empty() && (layout::is_vertical_spacing(w) || one_of(w, {"noindent", "indent", "par", "leavevmode"}))) {
        ++i;
        if (text::takes_dimension_argument(w)) {
          while (i < j && (is_ws(nodes[i]) || is_text(nodes[i], "*"))) ++i;
          if (i < j && nodes[i]->kind == NodeKind::Group) ++i;
        } else if (w == "vskip") {
          while (i < j && is_ws(nodes[i])) ++i;
          if (i < j && nodes[i]->is_leaf() && ts_[nodes[i]->token].kind == TokenKind::Text &&
              std::isdigit(static_cast<unsigned char>(ts_.text(ts_[nodes[i]->token])[0])))
            ++i;
        }
        continue;
      }
      break;
    }
    return i;
  }

  bool contains_break(const std::string& raw) const {
    return raw.find("\\\\") != std::string::npos || raw.find("\\par") != std::string::npos ||
           raw.find("\n\n") != std::string::npos || raw.find("\n \n") != std::string::npos;
  }

  std::optional<Finding> header_of(const layout::Paragraph& p) const {
    const auto& nodes = p.nodes;
    std::size_t j = nodes.size();
    std::size_t i = skip_leading(nodes, 0, j);
    std::string trailer;
    while (j > i) {
      const Node* n = nodes[j - 1];
      if (is_ws(n)) {
        --j;
        continue;
      }
      const std::string_view w = word(n);
      if (n->is_leaf() && (ts_.is_symbol(n->token, '\\') || one_of(w, {"nopagebreak", "newline", "medskip", "smallskip", "bigskip"}))) {
        --j;
        continue;
      }
      if (n->kind == NodeKind::Group && j >= i + 2) {
        std::size_t k = j - 2;
        while (k > i && is_ws(nodes[k])) --k;
        const std::string_view before = word(nodes[k]);
        if (before == "label") {
          trailer = src_.substr(nodes[k]->span.start, n->span.end - nodes[k]->span.start) + trailer;
          j = k;
          continue;
        }
        if (before == "vspace") {
          j = k;
          continue;
        }
      }
      break;
    }
    std::vector<const Node*> core;
    for (std::size_t k = i; k < j; ++k) {
      if (!is_ws(nodes[k])) core.push_back(nodes[k]);
    }
    if (core.empty()) return std::nullopt;
    if (core.size() == 1) {
      if (core[0]->kind != NodeKind::Group || !core[0]->closed) return std::nullopt;
    } else if (core.size() == 2) {
      if (word(core[0]) != "textbf" || core[1]->kind != NodeKind::Group) return std::nullopt;
    } else {
      return std::nullopt;
    }
    const SourceSpan core_span{core.front()->span.start, core.back()->span.end, core.front()->span.line};
    const std::string raw = src_.substr(core_span.start, core_span.size());
    if (contains_break(raw)) return std::nullopt;
    bool centered = false;
    const text::StyleState st = layout::line_style(raw, {}, centered);
    if (!st.bold && !st.large()) return std::nullopt;
    const std::string content = text::unwrap(raw);
    const std::string plain = text::plain(content);
    const std::size_t words = layout::count_words(plain);
    if (words == 0 || words > 15) return std::nullopt;
    if (theorem_label(plain) || plain.rfind("Proof", 0) == 0) return std::nullopt;
    NumberParse np = parse_number(content);
    if (np.rest.empty()) return std::nullopt;
    if (np.number.empty() && (plain.back() == '.' || plain.back() == ':')) return std::nullopt;
    std::vector<Cue> cues;
    if (st.bold) cues.push_back({CueKind::Bold, core_span, {}});
    if (st.large()) cues.push_back({CueKind::LargeFont, core_span, {}});
    cues.push_back({CueKind::SolitaryParagraph, p.span, {}});
    if (!np.number.empty()) cues.push_back({CueKind::NumberPrefix, core_span, np.number});
    const std::size_t end = p.par ? p.par->span.end : p.span.end;
    Finding f{make(DetectionKind::SectionHeader, core_span, SourceSpan{nodes.front()->span.start, end, p.span.line},
                   std::move(cues)),
              {}};
    f.d.level = np.level;
    f.d.word = np.number;
    f.d.text = np.rest;
    f.d.trailer = trailer;
    return f;
  }

  std::optional<Finding> theorem_of(const layout::Paragraph& p) const {
    const auto& nodes = p.nodes;
    std::size_t i = skip_leading(nodes, 0, nodes.size());
    if (i >= nodes.size()) return std::nullopt;
    std::size_t label_last = i;
    if (nodes[i]->kind == NodeKind::Group) {
      // ok
    } else if (word(nodes[i]) == "textbf" && i + 1 < nodes.size() && nodes[i + 1]->kind == NodeKind::Group) {
      label_last = i + 1;
    } else {
      return std::nullopt;
    }
    const SourceSpan label{nodes[i]->span.start, nodes[label_last]->span.end, nodes[i]->span.line};
    const std::string raw = src_.substr(label.start, label.size());
    if (contains_break(raw)) return std::nullopt;
    bool centered = false;
    const text::StyleState st = layout::line_style(raw, {}, centered);
    if (!st.bold) return std::nullopt;
    auto tl = theorem_label(text::plain(text::unwrap(raw)));
    if (!tl) return std::nullopt;
    std::size_t rest = label.end;
    while (rest < p.span.end && (std::isspace(static_cast<unsigned char>(src_[rest])) || src_[rest] == '.' || src_[rest] == ':'))
      ++rest;
    if (rest >= p.span.end) return std::nullopt;
    std::vector<Cue> cues{{CueKind::Bold, label, {}}, {CueKind::LeadingKeyword, label, tl->keyword}};
    Finding f{make(DetectionKind::TheoremLike, label, SourceSpan{nodes.front()->span.start, p.span.end, p.span.line},
                   std::move(cues)),
              {}};
    f.d.word = tl->keyword;
    f.d.optional = tl->note;
    f.d.text = trim(src_.substr(rest, p.span.end - rest));
    return f;
  }

  static bool excluded_argument_command(std::string_view w) {
    return one_of(w, {"bibinfo", "cite", "citep", "citet", "ref", "eqref", "label", "url", "href", "bibitem",
                      "newcommand", "renewcommand", "providecommand", "def", "title", "author", "affiliation",
                      "thanks", "section", "subsection", "subsubsection", "emph", "textsuperscript", "hspace",
                      "vspace", "includegraphics", "input", "include", "usepackage", "documentclass", "newtheorem",
                      "bibliography", "bibliographystyle", "setlength", "setcounter", "pagestyle", "thispagestyle",
                      "newenvironment", "renewenvironment", "date", "address", "email", "keywords", "begin", "end"});
  }

  void emphasis_walk(const std::vector<Node>& nodes, std::size_t from, const std::vector<SourceSpan>& claimed,
                     std::vector<Finding>& out) const {
    const std::vector<layout::Paragraph> paras = layout::paragraphs(ts_, nodes, from);
    auto running = [&](const Node& n) {
      for (const layout::Paragraph& p : paras) {
        if (!p.span.contains(n.span)) continue;
        std::size_t meaningful = 0;
        for (const Node* m : p.nodes) {
          if (is_ws(m)) continue;
          const std::string_view w = word(m);
          if (!w.empty() && (layout::is_vertical_spacing(w) || one_of(w, {"noindent", "indent", "par"}))) continue;
          ++meaningful;
        }
        return meaningful >= 2;
      }
      return false;
    };
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const Node& n = nodes[k];
      if (n.span.start < from || n.in_definition || n.kind == NodeKind::Math) continue;
      if (std::any_of(claimed.begin(), claimed.end(), [&](const SourceSpan& c) { return c.intersects(n.span); })) {
        if (!n.is_leaf() && !std::any_of(claimed.begin(), claimed.end(),
                                         [&](const SourceSpan& c) { return c.contains(n.span); }))
          emphasis_walk(n.children, from, claimed, out);
        continue;
      }
      if (n.kind == NodeKind::Environment) {
        if (!excluded_environment(n.name)) emphasis_walk(n.children, from, claimed, out);
        continue;
      }
      if (n.kind == NodeKind::Group) {
        if (auto f = group_emphasis(n); f && running(n)) {
          out.push_back(std::move(*f));
        } else {
          emphasis_walk(n.children, from, claimed, out);
        }
        continue;
      }
      const Token& t = ts_[n.token];
      if (t.kind != TokenKind::ControlWord || t.opaque) continue;
      const std::string_view w = ts_.name(t);
      std::size_t j = k + 1;
      while (j < nodes.size() && is_ws(&nodes[j])) ++j;
      if (excluded_argument_command(w)) {
        // Skip the optional argument and up to two braced arguments.
        std::size_t last = k;
        for (int args = 0; args < 3 && j < nodes.size(); ++args) {
          const Node& a = nodes[j];
          const bool opt = a.is_leaf() && ts_[a.token].kind == TokenKind::Text && ts_.text(ts_[a.token]).front() == '[';
          if (a.kind != NodeKind::Group && !opt && !is_text(&a, "*")) break;
          last = j++;
          while (j < nodes.size() && is_ws(&nodes[j])) ++j;
        }
        k = last;
        continue;
      }
      if (one_of(w, {"textbf", "textit", "textsl"}) && j < nodes.size() && nodes[j].kind == NodeKind::Group &&
          nodes[j].closed) {
        const Node& g = nodes[j];
        const std::string inner = src_.substr(g.inner.start, g.inner.size());
        if (emphasis_content_ok(g, inner) && running(n)) {
          const SourceSpan span{t.span.start, g.span.end, t.span.line};
          std::vector<Cue> cues{{w == "textbf" ? CueKind::Bold : CueKind::Italic, span, {}}};
          Finding f{make(DetectionKind::Emphasis, span, span, std::move(cues)), {}};
          f.d.text = trim(inner);
          out.push_back(std::move(f));
          k = j;
        }
      }
    }
  }

  bool emphasis_content_ok(const Node& g, const std::string& inner) const {
    if (trim(inner).empty() || contains_break(inner)) return false;
    if (inner.find("\\bibinfo") != std::string::npos || inner.find("\\cite") != std::string::npos) return false;
    std::vector<const Node*> stack;
    for (const Node& c : g.children) stack.push_back(&c);
    while (!stack.empty()) {
      const Node* c = stack.back();
      stack.pop_back();
      if (c->kind == NodeKind::Math) return false;
      if (c->kind == NodeKind::Environment) return false;
      if (c->is_leaf() && ts_[c->token].kind == TokenKind::Parameter) return false;
      for (const Node& d : c->children) stack.push_back(&d);
    }
    return !text::plain(inner).empty();
  }

  std::optional<Finding> group_emphasis(const Node& g) const {
    if (!g.closed) return std::nullopt;
    std::size_t k = 0;
    while (k < g.children.size() && is_ws(&g.children[k])) ++k;
    if (k >= g.children.size()) return std::nullopt;
    const std::string_view w = word(&g.children[k]);
    CueKind cue;
    if (one_of(w, {"bf", "bfseries"})) {
      cue = CueKind::Bold;
    } else if (one_of(w, {"it", "itshape", "sl", "slshape"})) {
      cue = CueKind::Italic;
    } else {
      return std::nullopt;
    }
    for (std::size_t i = k + 1; i < g.children.size(); ++i) {
      text::StyleState scratch;
      const std::string_view other = word(&g.children[i]);
      if (!other.empty() && text::apply_switch(other, scratch)) return std::nullopt;
    }
    std::size_t start = g.children[k].span.end;
    while (start < g.inner.end && std::isspace(static_cast<unsigned char>(src_[start]))) ++start;
    std::string inner = src_.substr(start, g.inner.end - start);
    // An italic correction belongs to the switch form only.
    while (!inner.empty() && std::isspace(static_cast<unsigned char>(inner.back()))) inner.pop_back();
    if (inner.size() >= 2 && inner.compare(inner.size() - 2, 2, "\\/") == 0) inner.resize(inner.size() - 2);
    if (!emphasis_content_ok(g, inner)) return std::nullopt;
    std::vector<Cue> cues{{cue, g.span, {}}};
    Finding f{make(DetectionKind::Emphasis, g.span, g.span, std::move(cues)), {}};
    f.d.text = trim(inner);
    return f;
  }

  const BlockTree& tree_;
  const TokenStream& ts_;
  const std::string& src_;
  LogicalDocument logical_;
  MaketitleFacts facts_;
  std::vector<Line> lines_;
  std::vector<Container> containers_;
  std::vector<bool> claimed_;
};

}  // namespace

const char* to_string(CueKind kind) {
  switch (kind) {
    case CueKind::Centered: return "Centered";
    case CueKind::Bold: return "Bold";
    case CueKind::Italic: return "Italic";
    case CueKind::LargeFont: return "LargeFont";
    case CueKind::SolitaryParagraph: return "SolitaryParagraph";
    case CueKind::NumberPrefix: return "NumberPrefix";
    case CueKind::MarkerSymbol: return "MarkerSymbol";
    case CueKind::LeadingKeyword: return "LeadingKeyword";
    case CueKind::NearDocumentStart: return "NearDocumentStart";
    case CueKind::InsideTitlepage: return "InsideTitlepage";
  }
  return "?";
}

double cue_weight(CueKind kind) { return weight_tenths(kind) / 10.0; }

double score(const std::vector<Cue>& cues) {
  std::set<CueKind> kinds;
  for (const Cue& c : cues) kinds.insert(c.kind);
  int tenths = 0;
  for (CueKind k : kinds) tenths += weight_tenths(k);
  return std::min(tenths, 10) / 10.0;
}

const char* to_string(DetectionKind kind) {
  switch (kind) {
    case DetectionKind::Title: return "Title";
    case DetectionKind::AuthorLine: return "AuthorLine";
    case DetectionKind::AffiliationLine: return "AffiliationLine";
    case DetectionKind::Abstract: return "Abstract";
    case DetectionKind::SectionHeader: return "SectionHeader";
    case DetectionKind::Emphasis: return "Emphasis";
    case DetectionKind::TheoremLike: return "TheoremLike";
  }
  return "?";
}

const char* to_string(FormattingKind kind) {
  switch (kind) {
    case FormattingKind::Logical: return "Logical";
    case FormattingKind::Mixed: return "Mixed";
    case FormattingKind::Visual: return "Visual";
  }
  return "?";
}

Analysis analyze(const BlockTree& tree, const DetectOptions& options) {
  Detector det(tree);
  Analysis a;
  a.logical = det.logical();
  a.maketitle = det.facts();
  const auto region = det.region();
  a.region = region.span;
  a.region_fallback = region.fallback;
  if (region.fallback) a.warnings.push_back("no front-matter boundary found; the whole body was searched");
  det.load_lines(a.region);

  std::vector<Finding> found;
  std::size_t next = 0;
  auto titles = det.titles();
  if (!titles.empty()) {
    Finding& t = titles.front();
    next = t.lines.back() + 1;
    det.claim(t.lines);
    found.push_back(t);
  }
  const std::size_t n_lines = det.lines().size();
  auto labeled = det.abstract_from(next, n_lines);
  const std::size_t stop = labeled ? labeled->lines.front() : n_lines;
  if (labeled) det.claim(labeled->lines);
  auto block = det.authors(next, stop);
  for (auto& f : block.authors) det.claim(f.lines);
  for (auto& f : block.affiliations) det.claim(f.lines);
  std::optional<Finding> abstract = std::move(labeled);
  if (!abstract) {
    const std::size_t after = block.last_line == npos ? next : block.last_line + 1;
    abstract = det.unlabeled_abstract(after, n_lines);
    if (abstract) det.claim(abstract->lines);
  }

  // Assemble front matter.
  const std::size_t author_base = found.size();
  for (auto& f : block.authors) found.push_back(std::move(f));
  const std::size_t affiliation_base = found.size();
  for (auto& f : block.affiliations) found.push_back(std::move(f));
  FrontMatter& fm = a.frontmatter;
  if (!titles.empty()) {
    fm.title = StyledText::from_raw(titles.front().d.text);
    fm.title_span = titles.front().d.span;
  }
  fm.authors = block.people;
  fm.affiliations = block.places;
  for (std::size_t i : block.person_finding) a.author_detection.push_back(author_base + i);
  for (std::size_t i : block.place_finding) a.affiliation_detection.push_back(affiliation_base + i);
  Resolution res = resolve_affiliations(fm.authors, fm.affiliations);
  fm.author_affiliation_edges = res.edges;
  fm.unresolved = res.unresolved;
  for (std::string& note : res.notes) a.warnings.push_back(std::move(note));

  std::size_t frontmatter_end = a.region.end;
  if (abstract) {
    fm.abstract = abstract->d.span;
    fm.abstract_text = abstract->d.text;
    frontmatter_end = std::min(frontmatter_end, std::max(abstract->d.extent.end, a.region.start));
    if (abstract->d.extent.end > a.region.end) frontmatter_end = abstract->d.extent.end;
    found.push_back(std::move(*abstract));
  } else if (a.logical.abstract_env) {
    fm.abstract = a.logical.abstract_env;
  }
  if (!a.logical.maketitle_sites.empty()) fm.maketitle_site = a.logical.maketitle_sites.front();
  fm.frontmatter_end = SourceSpan{frontmatter_end, frontmatter_end, det.line_of(frontmatter_end)};
  a.region.end = std::max(a.region.start, frontmatter_end);
  a.body = SourceSpan{frontmatter_end, std::max(frontmatter_end, a.logical.body.end), det.line_of(frontmatter_end)};

  // Body.
  std::vector<Finding> heads = det.headers(frontmatter_end);
  std::vector<SourceSpan> claimed;
  for (const Finding& h : heads) claimed.push_back(h.d.extent);
  std::vector<Finding> thms;
  if (options.theorems) {
    for (Finding& t : det.theorems(frontmatter_end)) {
      const bool clash = std::any_of(claimed.begin(), claimed.end(), [&](const SourceSpan& c) { return c.intersects(t.d.extent); });
      if (!clash) thms.push_back(std::move(t));
    }
    for (const Finding& t : thms) claimed.push_back(t.d.extent);
  }
  std::vector<Finding> emph = det.emphases(frontmatter_end, claimed);
  for (auto* group : {&heads, &thms, &emph}) {
    for (Finding& f : *group) found.push_back(std::move(f));
  }

  a.lines = std::move(det.lines());
  a.containers = std::move(det.containers());
  for (Finding& f : found) {
    a.detections.push_back(std::move(f.d));
    a.detection_lines.push_back(std::move(f.lines));
  }
  return a;
}

SourceSpan frontmatter_region(const BlockTree& tree) { return analyze(tree).region; }

std::vector<Detection> detect_title(const BlockTree& tree, const SourceSpan& region) {
  Detector det(tree);
  det.load_lines(region);
  std::vector<Detection> out;
  for (Finding& f : det.titles()) out.push_back(std::move(f.d));
  return out;
}

std::pair<std::vector<Detection>, std::vector<Detection>> detect_authors_affiliations(const BlockTree& tree,
                                                                                     const SourceSpan& region,
                                                                                     const Detection* title) {
  Detector det(tree);
  det.load_lines(region);
  std::size_t first = 0;
  const auto& lines = det.lines();
  if (title) {
    while (first < lines.size() && lines[first].span.start < title->extent.end) ++first;
  }
  auto labeled = det.abstract_from(first, lines.size());
  auto block = det.authors(first, labeled ? labeled->lines.front() : lines.size());
  std::pair<std::vector<Detection>, std::vector<Detection>> out;
  for (Finding& f : block.authors) out.first.push_back(std::move(f.d));
  for (Finding& f : block.affiliations) out.second.push_back(std::move(f.d));
  return out;
}

std::optional<Detection> detect_abstract(const BlockTree& tree, const SourceSpan& region) {
  Detector det(tree);
  det.load_lines(region);
  if (auto f = det.abstract_from(0, det.lines().size())) return f->d;
  auto titles = det.titles();
  std::size_t next = 0;
  if (!titles.empty()) {
    det.claim(titles.front().lines);
    next = titles.front().lines.back() + 1;
  }
  auto block = det.authors(next, det.lines().size());
  const std::size_t after = block.last_line == npos ? next : block.last_line + 1;
  if (auto f = det.unlabeled_abstract(after, det.lines().size())) return f->d;
  return std::nullopt;
}

std::vector<Detection> detect_section_headers(const BlockTree& tree, const SourceSpan& body) {
  Detector det(tree);
  std::vector<Detection> out;
  for (Finding& f : det.headers(body.start)) {
    if (f.d.span.end <= body.end) out.push_back(std::move(f.d));
  }
  return out;
}

std::vector<Detection> detect_emphasis_and_theorems(const BlockTree& tree, const SourceSpan& body) {
  Detector det(tree);
  std::vector<SourceSpan> claimed;
  for (const Finding& h : det.headers(body.start)) claimed.push_back(h.d.extent);
  std::vector<Detection> out;
  for (Finding& t : det.theorems(body.start)) {
    if (t.d.span.end > body.end) continue;
    claimed.push_back(t.d.extent);
    out.push_back(std::move(t.d));
  }
  for (Finding& e : det.emphases(body.start, claimed)) {
    if (e.d.span.end <= body.end) out.push_back(std::move(e.d));
  }
  std::sort(out.begin(), out.end(), [](const Detection& a, const Detection& b) { return a.span.start < b.span.start; });
  return out;
}

FormattingClass classify(const Analysis& a, double threshold) {
  FormattingClass c;
  double min_author = 2.0;
  bool any_author = false;
  for (const Detection& d : a.detections) {
    switch (d.kind) {
      case DetectionKind::Title:
      case DetectionKind::Abstract:
      case DetectionKind::SectionHeader:
        if (accepted(d, threshold)) ++c.visual;
        break;
      case DetectionKind::AuthorLine:
        any_author = true;
        min_author = std::min(min_author, d.confidence);
        break;
      default:
        break;
    }
  }
  if (any_author && min_author + 1e-9 >= threshold) ++c.visual;
  const LogicalDocument& l = a.logical;
  if (l.title) ++c.logical;
  if (!l.author_commands.empty()) ++c.logical;
  if (l.abstract_env) ++c.logical;
  c.logical += l.sections.size();
  const std::size_t total = c.visual + c.logical;
  c.score = total == 0 ? 0.0 : static_cast<double>(c.visual) / static_cast<double>(total);
  if (c.visual == 0) {
    c.kind = FormattingKind::Logical;
  } else if (c.score + 1e-9 >= 0.8 && !l.has_frontmatter_commands()) {
    c.kind = FormattingKind::Visual;
  } else {
    c.kind = FormattingKind::Mixed;
  }
  return c;
}

FormattingClass classify(const BlockTree& tree) { return classify(analyze(tree)); }

}  // namespace texlogic
