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
#include <map>

#include "texlogic/document_model.hpp"
#include "texlogic/text.hpp"

namespace texlogic {

StyledText StyledText::from_raw(std::string_view raw) {
  StyledText t;
  t.raw = text::trim(raw);
  t.plain = text::plain(t.raw);
  return t;
}

std::vector<std::string> FrontMatter::affiliations_of(std::size_t author) const {
  std::vector<std::string> out;
  for (const auto& [a, f] : author_affiliation_edges) {
    if (a == author && f < affiliations.size()) out.push_back(affiliations[f].text.raw);
  }
  return out;
}

Resolution resolve_affiliations(const std::vector<Author>& authors, const std::vector<Affiliation>& affiliations) {
  Resolution r;
  std::map<Marker, std::vector<std::size_t>> by_marker;
  std::vector<std::size_t> plain_affiliations;
  for (std::size_t f = 0; f < affiliations.size(); ++f) {
    if (affiliations[f].marker) {
      by_marker[*affiliations[f].marker].push_back(f);
    } else {
      plain_affiliations.push_back(f);
    }
  }

  std::vector<std::size_t> plain_authors;
  for (std::size_t a = 0; a < authors.size(); ++a) {
    if (authors[a].markers.empty()) {
      plain_authors.push_back(a);
      continue;
    }
    for (const Marker& m : authors[a].markers) {
      auto it = by_marker.find(m);
      if (it == by_marker.end()) {
        if (std::find(r.unresolved.begin(), r.unresolved.end(), m) == r.unresolved.end()) r.unresolved.push_back(m);
        r.notes.push_back("unresolved marker " + m.name() + " on " + authors[a].name.plain);
        continue;
      }
      for (std::size_t f : it->second) r.edges.insert({a, f});
    }
  }
  if (plain_authors.empty() || plain_affiliations.empty()) return r;

  // Interleaved layout: each affiliation binds to the authors listed since the
  // previous affiliation.
  auto by_position = [&](auto& idx, const auto& items) {
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t x, std::size_t y) { return items[x].span.start < items[y].span.start; });
  };
  std::vector<std::size_t> pa = plain_authors, pf = plain_affiliations;
  by_position(pa, authors);
  by_position(pf, affiliations);
  bool interleaved = false;
  for (std::size_t f : pf) {
    const std::size_t at = affiliations[f].span.start;
    const bool authors_after = std::any_of(pa.begin(), pa.end(), [&](std::size_t a) {
      return authors[a].span.start > at;
    });
    const bool authors_before = std::any_of(pa.begin(), pa.end(), [&](std::size_t a) {
      return authors[a].span.end <= at;
    });
    if (authors_after && authors_before) interleaved = true;
  }
  if (interleaved) {
    std::size_t k = 0;
    std::vector<std::size_t> run;
    for (std::size_t f : pf) {
      const std::size_t at = affiliations[f].span.start;
      std::vector<std::size_t> current;
      while (k < pa.size() && authors[pa[k]].span.start < at) current.push_back(pa[k++]);
      if (!current.empty()) run = current;
      for (std::size_t a : run) r.edges.insert({a, f});
    }
    for (; k < pa.size(); ++k) {
      r.notes.push_back("no affiliation follows " + authors[pa[k]].name.plain);
    }
    return r;
  }
  if (plain_authors.size() > 1 && plain_affiliations.size() > 1) {
    r.notes.push_back("markerless authors connected to every markerless affiliation");
  }
  for (std::size_t a : plain_authors) {
    for (std::size_t f : plain_affiliations) r.edges.insert({a, f});
  }
  return r;
}

}  // namespace texlogic
