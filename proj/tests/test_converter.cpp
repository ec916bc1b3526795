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

#include <algorithm>
#include <string>

#include "corpus.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "texlogic/converter.hpp"
#include "texlogic/degrader.hpp"
#include "texlogic/text.hpp"
#include "texlogic/validator.hpp"

using namespace texlogic;

namespace {

std::string doc(const std::string& body, const std::string& preamble = "") {
  return "\\documentclass{article}\n" + preamble + "\\begin{document}\n" + body + "\\end{document}\n";
}

std::vector<oracle::Splice> splices(const RewritePlan& p) {
  std::vector<oracle::Splice> out;
  for (const Edit& e : p.edits) out.push_back({e.span.start, e.span.end, e.replacement});
  return out;
}

const std::string kVisual = doc(
    "\\centerline{\\bf On Symmetry}\n\\centerline{Giuseppe Gaeta}\n\\centerline{\\it Dipartimento di Matematica, "
    "Universit\\`a di Milano}\n\\bigskip\n{\\bf Abstract. }{\\it We prove X.}\n\n"
    "\\medskip\\noindent{\\bf 1. Introduction}\\par\nThis is an {\\bf important} remark.\n\n"
    "\\medskip\\noindent{\\bf 2. Results}\\par\nMore text.\n");

}  // namespace

TEST_CASE("title, abstract and header rewrites") {
  const auto [out, r] = convert(kVisual);
  const auto title = std::find_if(r.applied.begin(), r.applied.end(),
                                  [](const AppliedDetection& x) { return x.detection.kind == DetectionKind::Title; });
  REQUIRE(title != r.applied.end());
  const SourceSpan s = title->detection.extent;
  CHECK(kVisual.substr(s.start, s.size()) == "\\centerline{\\bf On Symmetry}");
  CHECK(title->edit.span.start == s.start);
  CHECK(title->edit.replacement.starts_with("\\title{On Symmetry}\n"));
  CHECK(out.find("\\begin{abstract}We prove X.\\end{abstract}") != std::string::npos);
  CHECK(out.find("\\section{Introduction}") != std::string::npos);
  CHECK(out.find("\\section{Results}") != std::string::npos);
  CHECK(out.find("\\author{Giuseppe Gaeta\\thanks{Dipartimento di Matematica, Universit\\`a di Milano}}") !=
        std::string::npos);
  CHECK(out.find("\\maketitle") > out.find("\\end{abstract}"));
  CHECK(r.before.kind == FormattingKind::Visual);
  CHECK(r.after.kind == FormattingKind::Logical);
}

TEST_CASE("lone title becomes a title command") {
  const std::string src = doc("\\centerline{\\bf On Symmetry}\n\nBody text here.\n");
  const auto [out, r] = convert(src);
  REQUIRE(r.plan.edits.size() == 1);
  CHECK(src.substr(r.plan.edits[0].span.start, r.plan.edits[0].span.size()) == "\\centerline{\\bf On Symmetry}");
  CHECK(r.plan.edits[0].replacement == "\\title{On Symmetry}\n\\maketitle");
}

TEST_CASE("emphasis rewrite when applied") {
  ConversionPolicy p;
  p.aggressive = true;
  const auto [out, r] = convert(kVisual, p);
  CHECK(out.find("This is an \\emph{important} remark.") != std::string::npos);
}

TEST_CASE("affiliation command variant") {
  ConversionPolicy p;
  p.affiliation_command = AffiliationCommand::Affiliation;
  const auto [out, r] = convert(kVisual, p);
  CHECK(out.find("\\author{Giuseppe Gaeta}") != std::string::npos);
  CHECK(out.find("\\affiliation{Dipartimento di Matematica, Universit\\`a di Milano}") != std::string::npos);
}

TEST_CASE("empty analysis plans nothing") {
  const std::string src = doc("Just text.\n");
  const BlockTree tree = parse(src);
  Analysis a = analyze(tree);
  a.detections.clear();
  const PlanResult p = plan(a, tree, {});
  CHECK(p.plan.edits.empty());
  CHECK(p.applied.empty());
}

TEST_CASE("apply is identity on an empty plan") {
  CHECK(texlogic::apply(kVisual, {}) == kVisual);
  CHECK(texlogic::apply("", {}) == "");
}

TEST_CASE("apply leaves bytes outside edits alone") {
  const std::string src = "0123456789abcdefghijklmnopqrstuvwxyz";
  RewritePlan p;
  p.edits.push_back({SourceSpan{10, 20, 1}, "XY", "test"});
  const std::string out = texlogic::apply(src, p);
  CHECK(out.substr(0, 10) == src.substr(0, 10));
  CHECK(out.substr(12) == src.substr(20));
  CHECK(out == oracle::splice(src, splices(p)));
}

TEST_CASE("apply rejects overlapping or unsorted edits") {
  RewritePlan p;
  p.edits.push_back({SourceSpan{0, 5, 1}, "a", "x"});
  p.edits.push_back({SourceSpan{3, 8, 1}, "b", "y"});
  CHECK_THROWS_AS(texlogic::apply("0123456789", p), OverlapError);
  RewritePlan q;
  q.edits.push_back({SourceSpan{5, 6, 1}, "a", "x"});
  q.edits.push_back({SourceSpan{1, 2, 1}, "b", "y"});
  CHECK_THROWS_AS(texlogic::apply("0123456789", q), OverlapError);
}

TEST_CASE("duplicated detections surface as an overlap") {
  const BlockTree tree = parse(kVisual);
  Analysis a = analyze(tree);
  auto h = std::find_if(a.detections.begin(), a.detections.end(),
                        [](const Detection& d) { return d.kind == DetectionKind::SectionHeader; });
  REQUIRE(h != a.detections.end());
  a.detections.push_back(*h);
  CHECK_THROWS_AS(plan(a, tree, {}), OverlapError);
}

TEST_CASE("body edits under metadata scope are a policy violation") {
  const BlockTree tree = parse(kVisual);
  Analysis a = analyze(tree);
  a.frontmatter.frontmatter_end = SourceSpan{0, 0, 1};
  ConversionPolicy p;
  p.scope = Scope::MetadataOnly;
  CHECK_THROWS_AS(plan(a, tree, p), PolicyViolation);
}

TEST_CASE("metadata scope leaves the body untouched") {
  ConversionPolicy p;
  p.scope = Scope::MetadataOnly;
  const auto [out, r] = convert(kVisual, p);
  CHECK(out.find("\\title{On Symmetry}") != std::string::npos);
  CHECK(out.find("\\noindent{\\bf 1. Introduction}\\par") != std::string::npos);
  const std::size_t body = kVisual.find("\\medskip\\noindent");
  for (const Edit& e : r.plan.edits) CHECK(e.span.end <= body);
}

TEST_CASE("already logical source is unchanged") {
  for (const auto& f : corpus::tex_files(corpus::fixtures() / "logical")) {
    const std::string src = corpus::read(f);
    const auto [out, r] = convert(src);
    CHECK_MESSAGE(out == src, f.string());
    CHECK(r.applied.empty());
    CHECK(r.plan.edits.empty());
  }
}

TEST_CASE("defined maketitle is respected") {
  const std::string src = doc("\\centerline{\\bf A Fine Title}\n\\centerline{Ana Silva}\n\\mytitle\n\n"
                              "\\medskip\\noindent{\\bf 1. Introduction}\\par\nText.\n",
                              "\\def\\mytitle{\\maketitle\\thispagestyle{empty}}\n");
  const auto [out, r] = convert(src);
  CHECK(out.find("\\title{A Fine Title}") != std::string::npos);
  std::size_t count = 0;
  for (std::size_t p = out.find("\\maketitle"); p != std::string::npos; p = out.find("\\maketitle", p + 1)) ++count;
  CHECK(count == 1);

  const std::string redefined = doc("\\centerline{\\bf A Fine Title}\n\\centerline{Ana Silva}\n\nText.\n",
                                    "\\def\\maketitle{\\centerline{\\bf custom}}\n");
  const auto [out2, r2] = convert(redefined);
  CHECK(out2.find("\\maketitle\n") == std::string::npos);
}

TEST_CASE("every detection is applied or skipped") {
  for (std::size_t i = 0; i < 15; ++i) {
    const Degraded d = degrade(corpus::seed_document(i), corpus::roundtrip_profile_sets()[i % 5], 9);
    const Analysis a = analyze(parse(d.source));
    const auto [out, r] = convert(d.source);
    CHECK(r.applied.size() + r.skipped.size() == a.detections.size());
    for (const SkippedDetection& s : r.skipped) CHECK_FALSE(s.reason.empty());
  }
}

TEST_CASE("fully degraded seed converts back to its ground truth") {
  const Degraded d = degrade(corpus::seed_document(0), all_profiles(), 0);
  ConversionPolicy p;
  p.aggressive = true;
  const auto [out, r] = convert(d.source, p);
  const FrontMatter fm = extract_frontmatter(out);
  REQUIRE(fm.title);
  CHECK(text::normalize(fm.title->raw) == text::normalize(d.truth.title));
  std::vector<std::string> names, want;
  for (const Author& a : fm.authors) names.push_back(a.name.raw);
  for (const GroundTruthAuthor& a : d.truth.authors) want.push_back(a.name);
  CHECK(oracle::f1(names, want) == 1.0);
  CHECK(oracle::similarity(fm.abstract_text, d.truth.abstract) == 1.0);
  const GroundTruth back = ground_truth(out);
  CHECK(back.sections.size() == d.truth.sections.size());
  for (std::size_t i = 0; i < std::min(back.sections.size(), d.truth.sections.size()); ++i) {
    CHECK(back.sections[i].level == d.truth.sections[i].level);
    CHECK(oracle::normalize(back.sections[i].heading) == oracle::normalize(d.truth.sections[i].heading));
  }
  for (std::size_t i = 0; i < fm.authors.size() && i < d.truth.authors.size(); ++i) {
    std::vector<std::string> got = fm.affiliations_of(i), exp = d.truth.authors[i].affiliations;
    CHECK(oracle::f1(got, exp) == 1.0);
  }
}

TEST_CASE("plan edits are sorted and disjoint and match the output") {
  for (std::size_t i = 0; i < 30; ++i) {
    const Degraded d = degrade(corpus::seed_document(i), corpus::roundtrip_profile_sets()[i % 5], i);
    const auto [out, r] = convert(d.source);
    for (std::size_t k = 1; k < r.plan.edits.size(); ++k) {
      CHECK(r.plan.edits[k - 1].span.end <= r.plan.edits[k].span.start);
    }
    CHECK(out == oracle::splice(d.source, splices(r.plan)));
  }
}

TEST_CASE("math carried into a replacement stays outside the edits") {
  const std::string src = doc("\\centerline{\\bf On $SU(2)$ Symmetry}\n\\centerline{Ana Silva}\n\\bigskip\n"
                              "{\\bf Abstract. }{\\it We bound $\\|x\\|_2$ and \\verb|{\\bf v}|.}\n\nBody.\n");
  const auto [out, r] = convert(src);
  CHECK(out.find("\\title{On $SU(2)$ Symmetry}") != std::string::npos);
  CHECK(out.find("\\begin{abstract}We bound $\\|x\\|_2$ and \\verb|{\\bf v}|.\\end{abstract}") != std::string::npos);
  const BlockTree tree = parse(src);
  for (const Edit& e : r.plan.edits) {
    for (const SourceSpan& m : math_spans(tree)) CHECK_FALSE((e.span.start < m.end && m.start < e.span.end));
    const std::size_t verb = src.find("\\verb");
    CHECK_FALSE((e.span.start < verb + 14 && verb < e.span.end));
  }
  CHECK(out == oracle::splice(src, splices(r.plan)));
}
