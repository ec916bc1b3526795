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

#ifndef TEXLOGIC_DOCUMENT_MODEL_HPP
#define TEXLOGIC_DOCUMENT_MODEL_HPP

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "texlogic/lexer.hpp"

namespace texlogic {

/// Source text plus its styling-free form.
struct StyledText {
  std::string raw;
  std::string plain;

  static StyledText from_raw(std::string_view raw);
  friend bool operator==(const StyledText& a, const StyledText& b) { return a.raw == b.raw; }
};

enum class MarkerSymbol { Asterisk, Dagger, DoubleDagger, SectionSign, Pilcrow, Parallel, Digit, Letter };

const char* to_string(MarkerSymbol symbol);

struct Marker {
  MarkerSymbol symbol = MarkerSymbol::Digit;
  // Digit: the number. Letter: the character. Symbols: repeat count (`**` is 2).
  int value = 1;
  std::string rendering;

  // Canonical name such as "dagger", "digit(2)" or "asterisk*2".
  std::string name() const;

  friend bool operator==(const Marker& a, const Marker& b) { return a.symbol == b.symbol && a.value == b.value; }
  friend bool operator<(const Marker& a, const Marker& b) {
    return a.symbol != b.symbol ? a.symbol < b.symbol : a.value < b.value;
  }
};

std::optional<Marker> normalize_marker(std::string_view rendering);
/// `$^{1,2}$` -> [1, 2]; `$^{\dagger\ddagger}$` -> [dagger, ddagger]. Empty
/// when the text is not a marker form.
std::vector<Marker> parse_marker_list(std::string_view rendering);

struct MarkerSite {
  SourceSpan span;  // relative to the stripped input
  std::vector<Marker> markers;
};

struct StrippedText {
  std::string text;
  std::vector<Marker> markers;
  std::vector<MarkerSite> sites;
};

/// Removes superscript/symbol marker renderings from a name or line.
StrippedText strip_markers(std::string_view raw);
/// Marker sites of `raw`, in order.
std::vector<MarkerSite> find_marker_sites(std::string_view raw);

struct Author {
  StyledText name;
  std::vector<Marker> markers;
  std::vector<std::string> notes;  // \footnote / \thanks text attached to the name
  SourceSpan span;
};

struct Affiliation {
  StyledText text;
  std::optional<Marker> marker;
  SourceSpan span;
};

using Edge = std::pair<std::size_t, std::size_t>;  // (author, affiliation)

struct Resolution {
  std::set<Edge> edges;
  std::vector<Marker> unresolved;
  std::vector<std::string> notes;
};

Resolution resolve_affiliations(const std::vector<Author>& authors, const std::vector<Affiliation>& affiliations);

struct FrontMatter {
  std::optional<StyledText> title;
  SourceSpan title_span;
  std::vector<Author> authors;
  std::vector<Affiliation> affiliations;
  std::set<Edge> author_affiliation_edges;
  std::vector<Marker> unresolved;
  std::optional<SourceSpan> abstract;
  std::string abstract_text;  // raw
  std::optional<SourceSpan> maketitle_site;
  SourceSpan frontmatter_end;

  // Affiliation texts of author i in edge order.
  std::vector<std::string> affiliations_of(std::size_t author) const;
};

}  // namespace texlogic

#endif  // TEXLOGIC_DOCUMENT_MODEL_HPP
