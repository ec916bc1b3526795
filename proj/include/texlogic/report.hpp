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

#ifndef TEXLOGIC_REPORT_HPP
#define TEXLOGIC_REPORT_HPP

#include <string>

#include "texlogic/converter.hpp"
#include "texlogic/detector.hpp"
#include "texlogic/validator.hpp"

namespace texlogic {

enum class ReportFormat { Human, Machine };

/// Line diff with `context` lines around each hunk; empty when equal.
std::string unified_diff(const std::string& before, const std::string& after, const std::string& label_before,
                         const std::string& label_after, std::size_t context = 3);

// Machine reports are one JSON object per line.
std::string detection_report(const std::string& path, const Analysis& analysis, const FormattingClass& cls,
                             ReportFormat format);
std::string conversion_report(const std::string& path, const std::string& source, const std::string& output,
                              const ConversionReport& report, ReportFormat format);
std::string validation_report(const std::string& path, const ValidationReport& report, ReportFormat format);

}  // namespace texlogic

#endif  // TEXLOGIC_REPORT_HPP
