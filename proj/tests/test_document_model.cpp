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
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "texlogic/document_model.hpp"

using namespace texlogic;

namespace {

Marker digit(int n) { return Marker{MarkerSymbol::Digit, n, std::to_string(n)}; }
Marker symbol(MarkerSymbol s) { return Marker{s, 1, ""}; }

Author author(const std::string& name, std::vector<Marker> markers) {
  Author a;
  a.name = StyledText::from_raw(name);
  a.markers = std::move(markers);
  return a;
}

Affiliation affiliation(const std::string& text, std::optional<Marker> m) {
  Affiliation f;
  f.text = StyledText::from_raw(text);
  f.marker = m;
  return f;
}

}  // namespace

TEST_CASE("styled text keeps raw and strips styling for plain") {
  const StyledText t = StyledText::from_raw("  {\\bf Quantum}   \\it Groups ");
  CHECK(t.raw == "{\\bf Quantum}   \\it Groups");
  CHECK(t.plain == "Quantum Groups");
  CHECK(StyledText::from_raw("A") == StyledText::from_raw("A"));
}

TEST_CASE("marker renderings normalize") {
  auto m = normalize_marker("$^{\\dagger}$");
  REQUIRE(m);
  CHECK(m->symbol == MarkerSymbol::Dagger);
  CHECK(m->name() == "dagger");

  m = normalize_marker("^{1}");
  REQUIRE(m);
  CHECK(*m == digit(1));
  CHECK(m->name() == "digit(1)");

  m = normalize_marker("\\footnotemark[2]");
  REQUIRE(m);
  CHECK(*m == digit(2));

  m = normalize_marker("$^{\\ast}$");
  REQUIRE(m);
  CHECK(m->symbol == MarkerSymbol::Asterisk);

  m = normalize_marker("$^{**}$");
  REQUIRE(m);
  CHECK(m->symbol == MarkerSymbol::Asterisk);
  CHECK(m->value == 2);

  m = normalize_marker("\\textsuperscript{b}");
  REQUIRE(m);
  CHECK(m->symbol == MarkerSymbol::Letter);

  CHECK_FALSE(normalize_marker("Introduction"));
}

TEST_CASE("marker lists split on commas") {
  const auto a = parse_marker_list("$^{1,2}$");
  REQUIRE(a.size() == 2);
  CHECK(a[0] == digit(1));
  CHECK(a[1] == digit(2));

  const auto b = parse_marker_list("$^{\\dagger\\ddagger}$");
  REQUIRE(b.size() == 2);
  CHECK(b[0].symbol == MarkerSymbol::Dagger);
  CHECK(b[1].symbol == MarkerSymbol::DoubleDagger);

  CHECK(parse_marker_list("plain words").empty());
}

TEST_CASE("strip markers removes renderings") {
  const StrippedText s = strip_markers("Ana Silva$^{1,2}$");
  CHECK(s.text == "Ana Silva");
  REQUIRE(s.markers.size() == 2);
  CHECK(s.markers[1] == digit(2));
  REQUIRE(s.sites.size() == 1);

  const StrippedText u = strip_markers("Jan Nowak");
  CHECK(u.text == "Jan Nowak");
  CHECK(u.markers.empty());
}

TEST_CASE("dagger markers resolve many to many") {
  const std::vector<Author> authors = {author("A", {symbol(MarkerSymbol::Dagger)}),
                                       author("B", {symbol(MarkerSymbol::Dagger), symbol(MarkerSymbol::DoubleDagger)})};
  const std::vector<Affiliation> affs = {affiliation("X", symbol(MarkerSymbol::Dagger)),
                                         affiliation("Y", symbol(MarkerSymbol::DoubleDagger))};
  const Resolution r = resolve_affiliations(authors, affs);
  CHECK(r.edges == std::set<Edge>{{0, 0}, {1, 0}, {1, 1}});
  CHECK(r.unresolved.empty());
}

TEST_CASE("a single markerless author takes the single affiliation") {
  const Resolution r = resolve_affiliations({author("A", {})}, {affiliation("X", std::nullopt)});
  CHECK(r.edges == std::set<Edge>{{0, 0}});
}

TEST_CASE("unmatched marker is reported") {
  const Resolution r = resolve_affiliations({author("A", {symbol(MarkerSymbol::SectionSign)})},
                                            {affiliation("X", symbol(MarkerSymbol::Dagger))});
  CHECK(r.edges.empty());
  REQUIRE(r.unresolved.size() == 1);
  CHECK(r.unresolved[0].symbol == MarkerSymbol::SectionSign);
}

TEST_CASE("random marker assignments match brute-force matching") {
  std::mt19937 rng(11);
  for (int round = 0; round < 300; ++round) {
    const std::size_t na = 1 + rng() % 6, nf = 1 + rng() % 5;
    std::vector<Affiliation> affs;
    for (std::size_t f = 0; f < nf; ++f) affs.push_back(affiliation("Inst " + std::to_string(f), digit(int(f) + 1)));
    std::vector<Author> authors;
    for (std::size_t a = 0; a < na; ++a) {
      std::vector<Marker> ms;
      const std::size_t k = 1 + rng() % 3;
      std::set<int> seen;
      for (std::size_t j = 0; j < k; ++j) {
        const int v = 1 + int(rng() % (nf + 1));
        if (seen.insert(v).second) ms.push_back(digit(v));
      }
      authors.push_back(author("Person " + std::to_string(a), ms));
    }
    std::set<Edge> want;
    std::set<Marker> missing;
    for (std::size_t a = 0; a < na; ++a) {
      for (const Marker& m : authors[a].markers) {
        bool hit = false;
        for (std::size_t f = 0; f < nf; ++f) {
          if (affs[f].marker && *affs[f].marker == m) {
            want.insert({a, f});
            hit = true;
          }
        }
        if (!hit) missing.insert(m);
      }
    }
    const Resolution r = resolve_affiliations(authors, affs);
    CHECK(r.edges == want);
    CHECK(std::set<Marker>(r.unresolved.begin(), r.unresolved.end()) == missing);
  }
}

TEST_CASE("affiliations_of follows edges") {
  FrontMatter fm;
  fm.authors = {author("A", {}), author("B", {})};
  fm.affiliations = {affiliation("X", std::nullopt), affiliation("Y", std::nullopt)};
  fm.author_affiliation_edges = {{0, 1}, {1, 0}, {1, 1}};
  CHECK(fm.affiliations_of(0) == std::vector<std::string>{"Y"});
  CHECK(fm.affiliations_of(1) == std::vector<std::string>{"X", "Y"});
}
