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

#ifndef TEXLOGIC_DEGRADER_HPP
#define TEXLOGIC_DEGRADER_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "texlogic/detector.hpp"

namespace texlogic {

enum class Profile {
  CenterlineStyle,
  CenterEnv,
  NumberedMarkers,
  SymbolMarkers,
  UnlabeledAbstract,
  BoldSolitarySections,
  InlineEmphasis,
};

const char* to_string(Profile profile);
std::optional<Profile> profile_from_string(std::string_view name);
const std::vector<Profile>& all_profiles();

/// Knobs: "title-size" (e.g. \Large), "label" (Abstract, Summary),
/// "emphasis" (it, textit). Unset knobs are drawn from the seed.
struct DegradationProfile {
  Profile name = Profile::CenterlineStyle;
  std::map<std::string, std::string> parameters;
};

struct GroundTruthAuthor {
  std::string name;
  std::vector<std::string> affiliations;
  bool operator==(const GroundTruthAuthor&) const = default;
};

struct GroundTruthSection {
  int level = 1;
  std::string heading;
  bool operator==(const GroundTruthSection&) const = default;
};

struct GroundTruth {
  std::string title;
  std::vector<GroundTruthAuthor> authors;
  std::vector<std::string> affiliations;
  std::string abstract;
  std::vector<GroundTruthSection> sections;
  std::size_t emphases = 0;

  std::string to_json() const;
  static GroundTruth from_json(const std::string& text);
  bool operator==(const GroundTruth&) const = default;
};

class NotLogical : public std::runtime_error {
 public:
  NotLogical(FormattingClass found, const std::string& what) : std::runtime_error(what), found_(found) {}
  FormattingClass found() const { return found_; }

 private:
  FormattingClass found_;
};

/// Captured from logical commands only.
GroundTruth ground_truth(const std::string& source);

struct Degraded {
  std::string source;
  GroundTruth truth;
};

/// Throws NotLogical unless the source classifies Logical.
Degraded degrade(const std::string& source, const std::vector<DegradationProfile>& profiles, std::uint64_t seed);
Degraded degrade(const std::string& source, const std::vector<Profile>& profiles, std::uint64_t seed);

struct ManifestRow {
  std::string source;
  std::string original;
  std::string visual;
  std::string sidecar;
  std::vector<std::string> profiles;
  std::uint64_t seed = 0;
  std::string original_sha256;
  std::string visual_sha256;
  std::string sidecar_sha256;
  std::string skipped;  // reason, rows without artifacts
};

struct Manifest {
  std::vector<ManifestRow> rows;
  std::size_t pairs() const;
  std::size_t skips() const;
  std::string to_jsonl() const;
};

/// Degrades every .tex file in `corpus` (a directory or one file) under each profile set and seed,
/// writing artifacts and manifest.jsonl into `out`.
Manifest emit_pairs(const std::filesystem::path& corpus, const std::filesystem::path& out,
                    const std::vector<std::vector<Profile>>& profile_sets, const std::vector<std::uint64_t>& seeds);

}  // namespace texlogic

#endif  // TEXLOGIC_DEGRADER_HPP
