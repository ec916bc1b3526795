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

#ifndef TEXLOGIC_VALIDATOR_HPP
#define TEXLOGIC_VALIDATOR_HPP

#include <optional>
#include <string>
#include <vector>

#include "texlogic/arxiv_client.hpp"
#include "texlogic/converter.hpp"

namespace texlogic {

/// Diagnostics of one kind that the converted text has in excess.
struct StructuralDiagnostic {
  ImbalanceKind kind;
  std::string what;
  std::size_t added = 0;
  SourceSpan first;  // first occurrence in the converted text
  std::string message() const;
};

std::vector<StructuralDiagnostic> validate_structure(const std::string& original, const std::string& converted);

struct BodyCheck {
  bool preserved = true;
  std::optional<std::size_t> first_difference;  // offset in the converted text
};

BodyCheck check_body_preservation(const std::string& original, const std::string& converted, const RewritePlan& plan);

struct MetadataScores {
  std::optional<double> title_similarity;
  std::optional<double> author_set_f1;
  std::optional<double> abstract_similarity;
  std::vector<std::string> notes;  // MissingReference entries
};

/// F1 between normalized name multisets.
double author_f1(const std::vector<std::string>& extracted, const std::vector<std::string>& reference);

MetadataScores compare_metadata(const FrontMatter& extracted, const ArxivRecord& reference);

struct Thresholds {
  double title = 0.9;
  double authors = 0.9;
  double abstract = 0.85;
};

enum class Verdict { Pass, Warn, Fail };

const char* to_string(Verdict verdict);

struct ValidationReport {
  std::vector<StructuralDiagnostic> structural;
  bool body_preserved = true;
  std::optional<std::size_t> first_difference;
  MetadataScores scores;
  Thresholds thresholds;
  Verdict verdict = Verdict::Pass;
};

Verdict verdict_of(const ValidationReport& report);

/// Front matter of a converted document: logical commands first, then any
/// detections that remain.
FrontMatter extract_frontmatter(const std::string& source);

ValidationReport validate(const std::string& original, const std::string& converted, const RewritePlan& plan,
                          const std::optional<ArxivRecord>& reference, const Thresholds& thresholds = {});

}  // namespace texlogic

#endif  // TEXLOGIC_VALIDATOR_HPP
