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

#ifndef TEXLOGIC_SRC_LAYOUT_HPP
#define TEXLOGIC_SRC_LAYOUT_HPP

#include <string>
#include <string_view>
#include <vector>

#include "texlogic/detector.hpp"
#include "texlogic/text.hpp"

namespace texlogic::layout {

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

struct Segmentation {
  std::vector<Line> lines;
  std::vector<Container> containers;
};

/// Nodes of the document body (children of the document environment, or the
/// whole file when there is none).
const std::vector<Node>& body_nodes(const BlockTree& tree);

/// Splits the top-level body nodes inside `region` into lines.
Segmentation segment(const BlockTree& tree, const SourceSpan& region);

/// Style of a line of source text given the style in force at its start.
/// `centered` is set when a \centerline wrapper covers the whole line.
text::StyleState line_style(std::string_view raw, text::StyleState base, bool& centered);

/// Top-level switches in `raw` applied to `base`.
text::StyleState carry_style(std::string_view raw, text::StyleState base);

/// A run of sibling nodes between paragraph breaks (blank lines or \par).
struct Paragraph {
  std::vector<const Node*> nodes;  // without surrounding whitespace
  SourceSpan span;                 // first to last node
  const Node* par = nullptr;       // trailing \par leaf, if that ended it
};

std::vector<Paragraph> paragraphs(const TokenStream& ts, const std::vector<Node>& siblings, std::size_t from);

MaketitleFacts maketitle_facts(const BlockTree& tree);

bool is_vertical_spacing(std::string_view word);
bool is_marker_node(const TokenStream& ts, const std::vector<Node>& siblings, std::size_t k, std::size_t& last);
std::size_t count_words(std::string_view plain);
bool looks_like_date(std::string_view plain);
bool looks_like_email(std::string_view raw);

}  // namespace texlogic::layout

#endif  // TEXLOGIC_SRC_LAYOUT_HPP
