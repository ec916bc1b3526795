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

#ifndef TEXLOGIC_TESTS_ORACLES_HPP
#define TEXLOGIC_TESTS_ORACLES_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

// Reference implementations written separately from the library, used to
// cross-check it.
namespace oracle {

// Lowercase ASCII letters, accents folded to base letters (TeX and UTF-8),
// styling words and braces dropped, `$` removed, `~` and spacing commands
// such as \and as space, whitespace
// collapsed.
std::string normalize(const std::string& s);

// Classic two-row dynamic programme over Unicode code points.
std::size_t levenshtein(const std::u32string& a, const std::u32string& b);
std::u32string decode(const std::string& utf8);

// 1 - lev / max length on normalized input; 1 when both are empty.
double similarity(const std::string& a, const std::string& b);

// F1 of normalized multisets.
double f1(const std::vector<std::string>& got, const std::vector<std::string>& want);

struct Splice {
  std::size_t start, end;
  std::string replacement;
};

// `source` with every splice applied; splices must be sorted and disjoint.
std::string splice(const std::string& source, const std::vector<Splice>& edits);

// Net count of unmatched braces and \begin/\end pairs outside comments and
// \verb; 0 when balanced.
std::size_t imbalance(const std::string& source);

}  // namespace oracle

#endif
