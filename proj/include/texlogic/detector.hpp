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

#ifndef TEXLOGIC_DETECTOR_HPP
#define TEXLOGIC_DETECTOR_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "texlogic/document_model.hpp"
#include "texlogic/lexer.hpp"
#include "texlogic/logical.hpp"

namespace texlogic {

enum class CueKind {
  Centered,
  Bold,
  Italic,
  LargeFont,
  SolitaryParagraph,
  NumberPrefix,
  MarkerSymbol,
  LeadingKeyword,
  NearDocumentStart,
  InsideTitlepage,
};

const char* to_string(CueKind kind);
double cue_weight(CueKind kind);

struct Cue {
  CueKind kind;
  SourceSpan evidence;
  std::string word;  // LeadingKeyword only
};

/// Sum of cue weights (each kind counted once), capped at 1.
double score(const std::vector<Cue>& cues);

inline constexpr double kApplyThreshold = 0.5;

enum class DetectionKind { Title, AuthorLine, AffiliationLine, Abstract, SectionHeader, Emphasis, TheoremLike };

const char* to_string(DetectionKind kind);

struct Detection {
  DetectionKind kind = DetectionKind::Title;
  SourceSpan span;    // the formatted element itself
  SourceSpan extent;  // bytes a rewrite replaces (labels, wrappers, trailing breaks)
  std::vector<Cue> cues;
  double confidence = 0.0;
  int level = 0;         // SectionHeader
  std::string word;      // section number prefix or theorem keyword
  std::string text;      // recovered content
  std::string trailer;   // source kept after a rewritten header (\label)
  std::string optional;  // theorem note such as "(Zorn)"
  std::size_t line = static_cast<std::size_t>(-1);
};

enum class FormattingKind { Logical, Mixed, Visual };

const char* to_string(FormattingKind kind);

struct FormattingClass {
  FormattingKind kind = FormattingKind::Logical;
  double score = 0.0;
  std::size_t visual = 0;   // structural elements found in visual form
  std::size_t logical = 0;  // structural elements found as semantic commands
};

/// A front-matter line: the unit between breaks (`\\`, paragraph breaks,
/// spacing commands, `\centerline`).
struct Line {
  SourceSpan span;
  SourceSpan extent;  // span plus trailing break glue
  bool bold = false;
  bool italic = false;
  bool large = false;
  bool small = false;
  bool centered = false;
  bool titlepage = false;
  bool paragraph_start = false;
  bool logical = false;  // holds a semantic front-matter command
  std::size_t container = static_cast<std::size_t>(-1);
  std::size_t ordinal = 0;  // position among non-logical lines
  std::string raw;
  std::string content;  // presentation wrappers stripped
  std::size_t words = 0;
};

struct Container {
  std::string kind;  // environment name, "group" or "centerline"
  SourceSpan span;
  std::size_t parent = static_cast<std::size_t>(-1);
  std::vector<std::size_t> lines;
  bool has_comment = false;
};

struct MaketitleFacts {
  bool present = false;        // \maketitle or a macro that expands to it is invoked
  bool redefined = false;      // \maketitle itself is (re)defined
  std::string custom_macro;    // a macro whose body calls \maketitle
  bool custom_invoked = false;
};

struct Analysis {
  LogicalDocument logical;
  SourceSpan region;  // front matter
  SourceSpan body;    // after the front matter
  bool region_fallback = false;
  std::vector<Line> lines;
  std::vector<Container> containers;
  std::vector<Detection> detections;
  std::vector<std::vector<std::size_t>> detection_lines;  // lines claimed by each detection
  FrontMatter frontmatter;
  std::vector<std::size_t> author_detection;       // per frontmatter author: detection index
  std::vector<std::size_t> affiliation_detection;  // per frontmatter affiliation: first detection index
  MaketitleFacts maketitle;
  std::vector<std::string> warnings;
};

struct DetectOptions {
  bool theorems = true;
};

/// Runs every detector over a parsed document.
Analysis analyze(const BlockTree& tree, const DetectOptions& options = {});

SourceSpan frontmatter_region(const BlockTree& tree);
std::vector<Detection> detect_title(const BlockTree& tree, const SourceSpan& region);
std::pair<std::vector<Detection>, std::vector<Detection>> detect_authors_affiliations(const BlockTree& tree,
                                                                                     const SourceSpan& region,
                                                                                     const Detection* title);
std::optional<Detection> detect_abstract(const BlockTree& tree, const SourceSpan& region);
std::vector<Detection> detect_section_headers(const BlockTree& tree, const SourceSpan& body);
std::vector<Detection> detect_emphasis_and_theorems(const BlockTree& tree, const SourceSpan& body);
FormattingClass classify(const BlockTree& tree);
FormattingClass classify(const Analysis& analysis, double threshold = kApplyThreshold);

/// Two to six capitalized words, initials and lowercase particles allowed,
/// no institution keywords.
bool is_name_shaped(std::string_view raw);
/// First institution keyword found in the text, or empty.
std::string institution_keyword(std::string_view raw);

}  // namespace texlogic

#endif  // TEXLOGIC_DETECTOR_HPP
