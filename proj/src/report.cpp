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

#include "texlogic/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace texlogic {

using nlohmann::json;

namespace {

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < s.size()) {
    const std::size_t nl = s.find('\n', start);
    if (nl == std::string::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, nl - start + 1));
    start = nl + 1;
  }
  return out;
}

enum class Op { Keep, Delete, Insert };

// Myers shortest edit script.
std::vector<Op> edit_script(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  const long n = static_cast<long>(a.size()), m = static_cast<long>(b.size());
  const long max = n + m;
  const long offset = max + 1;
  std::vector<long> v(static_cast<std::size_t>(2 * max + 3), 0);
  std::vector<std::vector<long>> trace;
  long found = -1;
  for (long d = 0; d <= max && found < 0; ++d) {
    trace.push_back(v);
    for (long k = -d; k <= d; k += 2) {
      long x;
      if (k == -d || (k != d && v[static_cast<std::size_t>(k - 1 + offset)] < v[static_cast<std::size_t>(k + 1 + offset)])) {
        x = v[static_cast<std::size_t>(k + 1 + offset)];
      } else {
        x = v[static_cast<std::size_t>(k - 1 + offset)] + 1;
      }
      long y = x - k;
      while (x < n && y < m && a[static_cast<std::size_t>(x)] == b[static_cast<std::size_t>(y)]) {
        ++x;
        ++y;
      }
      v[static_cast<std::size_t>(k + offset)] = x;
      if (x >= n && y >= m) {
        found = d;
        break;
      }
    }
  }
  std::vector<Op> ops;
  long x = n, y = m;
  for (long d = found; d > 0; --d) {
    const std::vector<long>& pv = trace[static_cast<std::size_t>(d)];
    const long k = x - y;
    long prev_k;
    if (k == -d || (k != d && pv[static_cast<std::size_t>(k - 1 + offset)] < pv[static_cast<std::size_t>(k + 1 + offset)])) {
      prev_k = k + 1;
    } else {
      prev_k = k - 1;
    }
    const long prev_x = pv[static_cast<std::size_t>(prev_k + offset)];
    const long prev_y = prev_x - prev_k;
    while (x > prev_x && y > prev_y) {
      ops.push_back(Op::Keep);
      --x;
      --y;
    }
    ops.push_back(x == prev_x ? Op::Insert : Op::Delete);
    x = prev_x;
    y = prev_y;
  }
  while (x > 0 && y > 0) {
    ops.push_back(Op::Keep);
    --x;
    --y;
  }
  std::reverse(ops.begin(), ops.end());
  return ops;
}

std::string range(std::size_t start, std::size_t count) {
  if (count == 1) return std::to_string(start + 1);
  return std::to_string(count == 0 ? start : start + 1) + "," + std::to_string(count);
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

json span_json(const Detection& d) {
  return json{{"kind", to_string(d.kind)}, {"start", d.span.start}, {"end", d.span.end}, {"line", d.span.line},
              {"confidence", d.confidence}};
}

json cues_json(const Detection& d) {
  json cues = json::array();
  for (const Cue& c : d.cues) cues.push_back(to_string(c.kind));
  return cues;
}

json optional_score(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

std::string unified_diff(const std::string& before, const std::string& after, const std::string& label_before,
                         const std::string& label_after, std::size_t context) {
  if (before == after) return {};
  const auto a = split_lines(before), b = split_lines(after);
  const std::vector<Op> ops = edit_script(a, b);
  struct Row {
    Op op;
    std::size_t ai, bi;
  };
  std::vector<Row> rows;
  std::size_t ai = 0, bi = 0;
  for (Op op : ops) {
    rows.push_back({op, ai, bi});
    if (op != Op::Insert) ++ai;
    if (op != Op::Delete) ++bi;
  }
  std::ostringstream out;
  out << "--- " << label_before << "\n+++ " << label_after << "\n";
  auto line_of = [&](const std::string& s) { return s.empty() || s.back() != '\n' ? s + "\n\\ No newline at end of file\n" : s; };
  std::size_t i = 0;
  while (i < rows.size()) {
    if (rows[i].op == Op::Keep) {
      ++i;
      continue;
    }
    // Hunk: extend while changes are within 2*context of each other.
    std::size_t start = i >= context ? i - context : 0;
    std::size_t end = i;
    std::size_t last_change = i;
    while (end < rows.size()) {
      if (rows[end].op != Op::Keep) last_change = end;
      if (end - last_change > 2 * context) break;
      ++end;
    }
    end = std::min(rows.size(), last_change + context + 1);
    std::size_t a_count = 0, b_count = 0;
    for (std::size_t r = start; r < end; ++r) {
      a_count += rows[r].op != Op::Insert;
      b_count += rows[r].op != Op::Delete;
    }
    out << "@@ -" << range(rows[start].ai, a_count) << " +" << range(rows[start].bi, b_count) << " @@\n";
    for (std::size_t r = start; r < end; ++r) {
      switch (rows[r].op) {
        case Op::Keep: out << ' ' << line_of(a[rows[r].ai]); break;
        case Op::Delete: out << '-' << line_of(a[rows[r].ai]); break;
        case Op::Insert: out << '+' << line_of(b[rows[r].bi]); break;
      }
    }
    i = end;
  }
  return out.str();
}

std::string detection_report(const std::string& path, const Analysis& analysis, const FormattingClass& cls,
                             ReportFormat format) {
  if (format == ReportFormat::Machine) {
    json j;
    j["record"] = "detection";
    j["path"] = path;
    j["class"] = to_string(cls.kind);
    j["score"] = cls.score;
    j["visual"] = cls.visual;
    j["logical"] = cls.logical;
    j["detections"] = json::array();
    for (const Detection& d : analysis.detections) {
      json e = span_json(d);
      e["cues"] = cues_json(d);
      e["text"] = d.text;
      if (d.kind == DetectionKind::SectionHeader) e["level"] = d.level;
      j["detections"].push_back(std::move(e));
    }
    j["warnings"] = analysis.warnings;
    return j.dump() + "\n";
  }
  std::ostringstream out;
  out << path << ": " << to_string(cls.kind) << " (score " << fixed(cls.score) << ", " << cls.visual << " visual, "
      << cls.logical << " logical)\n";
  for (const Detection& d : analysis.detections) {
    out << "  line " << d.span.line << "  " << to_string(d.kind) << "  " << fixed(d.confidence) << "  [";
    for (std::size_t i = 0; i < d.cues.size(); ++i) out << (i ? " " : "") << to_string(d.cues[i].kind);
    std::string text = d.text.size() > 60 ? d.text.substr(0, 57) + "..." : d.text;
    std::replace(text.begin(), text.end(), '\n', ' ');
    out << "]  " << text << "\n";
  }
  for (const std::string& w : analysis.warnings) out << "  warning: " << w << "\n";
  return out.str();
}

std::string conversion_report(const std::string& path, const std::string& source, const std::string& output,
                              const ConversionReport& report, ReportFormat format) {
  if (format == ReportFormat::Machine) {
    json j;
    j["record"] = "conversion";
    j["path"] = path;
    j["class_before"] = to_string(report.before.kind);
    j["score_before"] = report.before.score;
    j["class_after"] = to_string(report.after.kind);
    j["score_after"] = report.after.score;
    j["edits"] = report.plan.edits.size();
    j["applied"] = json::array();
    for (const AppliedDetection& a : report.applied) {
      json e = span_json(a.detection);
      e["edit_start"] = a.edit.span.start;
      e["edit_end"] = a.edit.span.end;
      j["applied"].push_back(std::move(e));
    }
    j["skipped"] = json::array();
    for (const SkippedDetection& s : report.skipped) {
      json e = span_json(s.detection);
      e["reason"] = s.reason;
      j["skipped"].push_back(std::move(e));
    }
    j["warnings"] = report.warnings;
    return j.dump() + "\n";
  }
  std::ostringstream out;
  out << path << ": " << to_string(report.before.kind) << " -> " << to_string(report.after.kind) << ", "
      << report.applied.size() << " applied, " << report.skipped.size() << " skipped, " << report.plan.edits.size()
      << " edits\n";
  for (const SkippedDetection& s : report.skipped) {
    out << "  skipped line " << s.detection.span.line << " " << to_string(s.detection.kind) << " ("
        << fixed(s.detection.confidence) << "): " << s.reason << "\n";
  }
  for (const std::string& w : report.warnings) out << "  warning: " << w << "\n";
  out << unified_diff(source, output, path, path + " (converted)");
  return out.str();
}

std::string validation_report(const std::string& path, const ValidationReport& report, ReportFormat format) {
  if (format == ReportFormat::Machine) {
    json j;
    j["record"] = "validation";
    j["path"] = path;
    j["verdict"] = to_string(report.verdict);
    j["structural"] = json::array();
    for (const StructuralDiagnostic& d : report.structural) {
      j["structural"].push_back({{"kind", to_string(d.kind)}, {"what", d.what}, {"added", d.added}, {"line", d.first.line}});
    }
    j["body_preserved"] = report.body_preserved;
    j["first_difference"] = report.first_difference ? json(*report.first_difference) : json(nullptr);
    j["metadata_scores"] = {{"title_similarity", optional_score(report.scores.title_similarity)},
                            {"author_set_f1", optional_score(report.scores.author_set_f1)},
                            {"abstract_similarity", optional_score(report.scores.abstract_similarity)}};
    j["thresholds"] = {{"title", report.thresholds.title},
                       {"authors", report.thresholds.authors},
                       {"abstract", report.thresholds.abstract}};
    j["notes"] = report.scores.notes;
    return j.dump() + "\n";
  }
  std::ostringstream out;
  out << path << ": " << to_string(report.verdict) << "\n";
  out << "  body preserved: " << (report.body_preserved ? "yes" : "no");
  if (report.first_difference) out << " (first difference at byte " << *report.first_difference << ")";
  out << "\n";
  for (const StructuralDiagnostic& d : report.structural) out << "  structural: " << d.message() << "\n";
  auto score = [&](const char* name, const std::optional<double>& v, double t) {
    out << "  " << name << ": " << (v ? fixed(*v) : std::string("n/a")) << " (threshold " << fixed(t) << ")\n";
  };
  const MetadataScores& m = report.scores;
  if (m.title_similarity || m.author_set_f1 || m.abstract_similarity) {
    score("title similarity", m.title_similarity, report.thresholds.title);
    score("author F1", m.author_set_f1, report.thresholds.authors);
    score("abstract similarity", m.abstract_similarity, report.thresholds.abstract);
  } else if (m.notes.empty()) {
    out << "  metadata: no reference record\n";
  }
  for (const std::string& n : report.scores.notes) out << "  note: " << n << "\n";
  return out.str();
}

}  // namespace texlogic
