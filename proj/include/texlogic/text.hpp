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

#ifndef TEXLOGIC_TEXT_HPP
#define TEXLOGIC_TEXT_HPP

#include <string>
#include <string_view>

namespace texlogic::text {

std::string trim(std::string_view s);
std::string collapse_whitespace(std::string_view s);

/// Drops styling, sizing and spacing commands, braces and comments while
/// keeping accent commands (with their arguments), math, and other macros
/// verbatim. Whitespace is collapsed.
std::string plain(std::string_view raw);

/// Strips whole-line presentation wrappers: surrounding groups, leading
/// font/size switches, \centerline / \textbf-style wrappers and trailing
/// line breaks. Inner styling is kept.
std::string unwrap(std::string_view raw);

/// Replaces TeX accent commands and accented UTF-8 letters by their base
/// letters; braces are dropped. Other control words keep their name without
/// the backslash.
std::string fold_accents(std::string_view s, bool lowercase);

/// Comparison form: plain(), accent folding, lowercase, no braces or math
/// shifts, `~` as space, collapsed whitespace.
std::string normalize(std::string_view s);

std::u32string utf8_decode(std::string_view s);
std::size_t levenshtein(std::u32string_view a, std::u32string_view b);

/// 1 - lev(a, b) / max(|a|, |b|) over code points of the normalized strings;
/// 1.0 when both normalize to empty.
double similarity(std::string_view a, std::string_view b);

// Presentation command tables shared by the detector and the degrader.
struct StyleState {
  bool bold = false;
  bool italic = false;
  bool smallcaps = false;
  int size = 0;  // < 0 smaller than \normalsize, > 0 larger

  bool large() const { return size > 0; }
  bool small() const { return size < 0; }
};

/// Applies a declaration such as \bf or \Large; false if `word` is not one.
bool apply_switch(std::string_view word, StyleState& state);
/// Applies a one-argument style command such as \textbf; false otherwise.
bool apply_wrapper(std::string_view word, StyleState& state);
/// Vertical spacing and paragraph-shape commands that carry no content.
bool is_spacing_command(std::string_view word);
/// Spacing commands whose single braced argument is a dimension.
bool takes_dimension_argument(std::string_view word);
bool is_accent_command(std::string_view word);

}  // namespace texlogic::text

#endif  // TEXLOGIC_TEXT_HPP
