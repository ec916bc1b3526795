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

#include "texlogic/validator.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "texlogic/text.hpp"

namespace texlogic {

namespace {

using Key = std::pair<ImbalanceKind, std::string>;

std::map<Key, std::vector<SourceSpan>> tally(const BlockTree& tree) {
  std::map<Key, std::vector<SourceSpan>> out;
  for (const Imbalance& d : tree.diagnostics()) out[{d.kind, d.what}].push_back(d.span);
  return out;
}

}  // namespace

std::string StructuralDiagnostic::message() const {
  return std::string(to_string(kind)) + " '" + what + "' x" + std::to_string(added) + " (first at line " +
         std::to_string(first.line) + ")";
}

std::vector<StructuralDiagnostic> validate_structure(const std::string& original, const std::string& converted) {
  const auto before = tally(parse(original));
  const auto after = tally(parse(converted));
  std::vector<StructuralDiagnostic> delta;
  for (const auto& [key, spans] : after) {
    auto it = before.find(key);
    const std::size_t had = it == before.end() ? 0 : it->second.size();
    if (spans.size() > had) delta.push_back({key.first, key.second, spans.size() - had, spans.front()});
  }
  return delta;
}

BodyCheck check_body_preservation(const std::string& original, const std::string& converted, const RewritePlan& plan) {
  BodyCheck out;
  std::size_t pos = 0;   // original
  std::size_t cpos = 0;  // converted
  auto fail = [&](std::size_t at) {
    out.preserved = false;
    out.first_difference = at;
    return out;
  };
  auto compare = [&](std::size_t n) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < n; ++i) {
      if (cpos + i >= converted.size() || converted[cpos + i] != original[pos + i]) return cpos + i;
    }
    return std::nullopt;
  };
  for (const Edit& e : plan.edits) {
    if (e.span.start < pos || e.span.end > original.size()) return fail(cpos);
    if (auto d = compare(e.span.start - pos)) return fail(*d);
    cpos += e.span.start - pos;
    if (converted.compare(cpos, e.replacement.size(), e.replacement) != 0) {
      std::size_t i = 0;
      while (cpos + i < converted.size() && i < e.replacement.size() && converted[cpos + i] == e.replacement[i]) ++i;
      return fail(cpos + i);
    }
    cpos += e.replacement.size();
    pos = e.span.end;
  }
  if (auto d = compare(original.size() - pos)) return fail(*d);
  cpos += original.size() - pos;
  if (cpos != converted.size()) return fail(cpos);
  return out;
}

double author_f1(const std::vector<std::string>& extracted, const std::vector<std::string>& reference) {
  if (extracted.empty() && reference.empty()) return 1.0;
  if (extracted.empty() || reference.empty()) return 0.0;
  std::map<std::string, std::size_t> want;
  for (const std::string& r : reference) ++want[text::normalize(r)];
  std::size_t hits = 0;
  for (const std::string& e : extracted) {
    auto it = want.find(text::normalize(e));
    if (it != want.end() && it->second > 0) {
      --it->second;
      ++hits;
    }
  }
  const double precision = static_cast<double>(hits) / static_cast<double>(extracted.size());
  const double recall = static_cast<double>(hits) / static_cast<double>(reference.size());
  return hits == 0 ? 0.0 : 2 * precision * recall / (precision + recall);
}

namespace {

// Record fields are plain text: a bare % is a literal percent sign.
std::string escape_percent(const std::string& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%' && (i == 0 || s[i - 1] != '\\')) out += '\\';
    out += s[i];
  }
  return out;
}

}  // namespace

MetadataScores compare_metadata(const FrontMatter& extracted, const ArxivRecord& reference) {
  MetadataScores s;
  if (reference.title.empty()) {
    s.notes.push_back("MissingReference: title");
  } else {
    s.title_similarity = text::similarity(extracted.title ? extracted.title->raw : "", escape_percent(reference.title));
  }
  if (reference.authors.empty()) {
    s.notes.push_back("MissingReference: authors");
  } else {
    std::vector<std::string> names;
    for (const Author& a : extracted.authors) names.push_back(a.name.raw);
    s.author_set_f1 = author_f1(names, reference.authors);
  }
  if (reference.abstract.empty()) {
    s.notes.push_back("MissingReference: abstract");
  } else {
    s.abstract_similarity = text::similarity(extracted.abstract_text, escape_percent(reference.abstract));
  }
  return s;
}

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Pass: return "Pass";
    case Verdict::Warn: return "Warn";
    case Verdict::Fail: return "Fail";
  }
  return "?";
}

Verdict verdict_of(const ValidationReport& r) {
  if (!r.structural.empty() || !r.body_preserved) return Verdict::Fail;
  const auto below = [](const std::optional<double>& v, double t) { return v && *v + 1e-12 < t; };
  if (below(r.scores.title_similarity, r.thresholds.title) || below(r.scores.author_set_f1, r.thresholds.authors) ||
      below(r.scores.abstract_similarity, r.thresholds.abstract))
    return Verdict::Warn;
  return Verdict::Pass;
}

FrontMatter extract_frontmatter(const std::string& source) {
  const Analysis a = analyze(parse(source));
  FrontMatter fm = a.logical.to_frontmatter(source);
  if (!fm.title && a.frontmatter.title) {
    fm.title = a.frontmatter.title;
    fm.title_span = a.frontmatter.title_span;
  }
  if (fm.authors.empty()) {
    fm.authors = a.frontmatter.authors;
    fm.affiliations = a.frontmatter.affiliations;
    fm.author_affiliation_edges = a.frontmatter.author_affiliation_edges;
    fm.unresolved = a.frontmatter.unresolved;
  }
  if (!fm.abstract && a.frontmatter.abstract) {
    fm.abstract = a.frontmatter.abstract;
    fm.abstract_text = a.frontmatter.abstract_text;
  }
  return fm;
}

ValidationReport validate(const std::string& original, const std::string& converted, const RewritePlan& plan,
                          const std::optional<ArxivRecord>& reference, const Thresholds& thresholds) {
  ValidationReport r;
  r.thresholds = thresholds;
  r.structural = validate_structure(original, converted);
  const BodyCheck body = check_body_preservation(original, converted, plan);
  r.body_preserved = body.preserved;
  r.first_difference = body.first_difference;
  if (reference) r.scores = compare_metadata(extract_frontmatter(converted), *reference);
  r.verdict = verdict_of(r);
  return r;
}

}  // namespace texlogic
