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

#ifndef TEXLOGIC_CONVERTER_HPP
#define TEXLOGIC_CONVERTER_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "texlogic/detector.hpp"

namespace texlogic {

enum class Scope { MetadataOnly, Full };
enum class AffiliationCommand { Thanks, Affiliation };

const char* to_string(Scope scope);
const char* to_string(AffiliationCommand command);

struct ConversionPolicy {
  Scope scope = Scope::Full;
  AffiliationCommand affiliation_command = AffiliationCommand::Thanks;
  double apply_threshold = kApplyThreshold;
  bool aggressive = false;  // apply every detection regardless of confidence
};

struct Edit {
  SourceSpan span;
  std::string replacement;
  std::string origin;  // detection kind, "Maketitle" or "Preamble"
};

/// Sorted, non-overlapping edits.
struct RewritePlan {
  std::vector<Edit> edits;
};

struct AppliedDetection {
  Detection detection;
  Edit edit;
};

struct SkippedDetection {
  Detection detection;
  std::string reason;
};

struct PlanResult {
  RewritePlan plan;
  std::vector<AppliedDetection> applied;
  std::vector<SkippedDetection> skipped;
  std::vector<std::string> warnings;
};

struct ConversionReport {
  std::vector<AppliedDetection> applied;
  std::vector<SkippedDetection> skipped;
  std::vector<std::string> warnings;
  FormattingClass before;
  FormattingClass after;
  RewritePlan plan;
};

class OverlapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PolicyViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

PlanResult plan(const Analysis& analysis, const BlockTree& tree, const ConversionPolicy& policy);

/// Throws OverlapError if edits are unsorted or intersect.
std::string apply(const std::string& source, const RewritePlan& plan);

std::pair<std::string, ConversionReport> convert(const std::string& source, const ConversionPolicy& policy = {});

}  // namespace texlogic

#endif  // TEXLOGIC_CONVERTER_HPP
