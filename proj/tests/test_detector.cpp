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
#include <fstream>
#include <set>
#include <string>

#include "corpus.hpp"
#include "doctest.h"
#include "texlogic/degrader.hpp"
#include "texlogic/detector.hpp"

using namespace texlogic;

namespace {

std::string doc(const std::string& body, const std::string& preamble = "") {
  return "\\documentclass{article}\n" + preamble + "\\begin{document}\n" + body + "\\end{document}\n";
}

std::set<CueKind> cue_set(const Detection& d) {
  std::set<CueKind> out;
  for (const Cue& c : d.cues) out.insert(c.kind);
  return out;
}

std::vector<Detection> of_kind(const Analysis& a, DetectionKind k) {
  std::vector<Detection> out;
  std::copy_if(a.detections.begin(), a.detections.end(), std::back_inserter(out),
               [&](const Detection& d) { return d.kind == k; });
  return out;
}

Analysis analyze_source(const std::string& src) { return analyze(parse(src)); }

const std::string kLogical = doc(
    "\\title{A}\n\\author{B C}\n\\maketitle\n\\begin{abstract}\nText.\n\\end{abstract}\n\\section{Intro}\nBody.\n");

}  // namespace

TEST_CASE("cue weights and score") {
  CHECK(cue_weight(CueKind::Centered) == doctest::Approx(0.3));
  CHECK(cue_weight(CueKind::LeadingKeyword) == doctest::Approx(0.4));
  CHECK(cue_weight(CueKind::Bold) == doctest::Approx(0.2));
  const SourceSpan s{};
  CHECK(score({}) == 0.0);
  CHECK(score({{CueKind::Centered, s, {}}, {CueKind::Bold, s, {}}}) == doctest::Approx(0.5));
  CHECK(score({{CueKind::Bold, s, {}}, {CueKind::Bold, s, {}}}) == doctest::Approx(0.2));
  CHECK(score({{CueKind::Centered, s, {}},
               {CueKind::MarkerSymbol, s, {}},
               {CueKind::LeadingKeyword, s, {}},
               {CueKind::Bold, s, {}}}) == doctest::Approx(1.0));
}

TEST_CASE("front matter region stops at maketitle") {
  const std::string src = doc("\\maketitle\nIntro text\n\\section{Intro}\nBody\n");
  const BlockTree tree = parse(src);
  const SourceSpan r = frontmatter_region(tree);
  CHECK(r.end == src.find("\\maketitle"));
}

TEST_CASE("front matter region of an empty body is empty") {
  const BlockTree tree = parse(doc(""));
  CHECK(frontmatter_region(tree).empty());
}

TEST_CASE("front matter region covers a titlepage") {
  const std::string src =
      doc("\\begin{titlepage}\n\\centerline{\\bf T}\n\\begin{abstract}\nA.\n\\end{abstract}\n\\end{titlepage}\nBody\n");
  const SourceSpan r = frontmatter_region(parse(src));
  CHECK(r.end == src.find("\\end{titlepage}") + std::string("\\end{titlepage}").size());
}

TEST_CASE("centerline bold title") {
  const Analysis a = analyze_source(doc("\\centerline{\\bf On the Symmetry of X}\n\nSome text.\n"));
  const auto t = of_kind(a, DetectionKind::Title);
  REQUIRE(t.size() == 1);
  CHECK(cue_set(t[0]) == std::set<CueKind>{CueKind::Centered, CueKind::Bold, CueKind::NearDocumentStart});
  CHECK(t[0].text == "On the Symmetry of X");
  CHECK(t[0].confidence >= kApplyThreshold);
}

TEST_CASE("no title detection when title is logical") {
  CHECK(of_kind(analyze_source(kLogical), DetectionKind::Title).empty());
  const BlockTree tree = parse(kLogical);
  CHECK(detect_title(tree, frontmatter_region(tree)).empty());
}

TEST_CASE("center environment title") {
  const Analysis a = analyze_source(doc("\\begin{center}{\\Large\\bf T}\\end{center}\n\nBody.\n"));
  const auto t = of_kind(a, DetectionKind::Title);
  REQUIRE(t.size() == 1);
  const auto cues = cue_set(t[0]);
  CHECK(cues.count(CueKind::Centered));
  CHECK(cues.count(CueKind::LargeFont));
  CHECK(cues.count(CueKind::Bold));
}

TEST_CASE("author line after the title") {
  const Analysis a = analyze_source(doc("\\centerline{\\bf Title Words}\n\\centerline{Giuseppe Gaeta}\n\nBody.\n"));
  const auto authors = of_kind(a, DetectionKind::AuthorLine);
  REQUIRE(authors.size() == 1);
  CHECK(authors[0].text == "Giuseppe Gaeta");
  REQUIRE(a.frontmatter.authors.size() == 1);
  CHECK(a.frontmatter.authors[0].name.plain == "Giuseppe Gaeta");
}

TEST_CASE("nothing after the title gives no authors") {
  const BlockTree tree = parse(doc("\\centerline{\\bf Title Words}\n"));
  const SourceSpan region = frontmatter_region(tree);
  const auto titles = detect_title(tree, region);
  REQUIRE(titles.size() == 1);
  const auto [authors, affiliations] = detect_authors_affiliations(tree, region, &titles[0]);
  CHECK(authors.empty());
  CHECK(affiliations.empty());
}

TEST_CASE("numbered markers from the degrader") {
  const std::string logical = doc(
      "\\title{Marked Authors}\n\\author{Ana Silva\\thanks{Department of Physics, University of Tokyo}\n"
      "\\and Ben Okafor\\thanks{Department of Physics, University of Tokyo}\\thanks{CERN, Geneva}}\n\\maketitle\n"
      "\\begin{abstract}\nWe study markers.\n\\end{abstract}\n\\section{Intro}\nBody.\n");
  const Degraded d = degrade(logical, std::vector<Profile>{Profile::CenterlineStyle, Profile::NumberedMarkers}, 1);
  const Analysis a = analyze_source(d.source);
  const auto authors = of_kind(a, DetectionKind::AuthorLine);
  const auto affs = of_kind(a, DetectionKind::AffiliationLine);
  CHECK(a.frontmatter.authors.size() == 2);
  CHECK(affs.size() == 2);
  REQUIRE_FALSE(authors.empty());
  for (const Detection& x : authors) CHECK(cue_set(x).count(CueKind::MarkerSymbol));
  for (const Detection& x : affs) CHECK(cue_set(x).count(CueKind::MarkerSymbol));
  CHECK(a.frontmatter.author_affiliation_edges == std::set<Edge>{{0, 0}, {1, 0}, {1, 1}});
}

TEST_CASE("bold abstract label with italic body") {
  const Analysis a = analyze_source(
      doc("\\centerline{\\bf A Title Here}\n\\centerline{Jan Nowak}\n\n{\\bf Abstract. }{\\it We study things.}\n\n"
          "Body.\n"));
  const auto abs = of_kind(a, DetectionKind::Abstract);
  REQUIRE(abs.size() == 1);
  const auto cues = cue_set(abs[0]);
  CHECK(cues.count(CueKind::LeadingKeyword));
  CHECK(cues.count(CueKind::Bold));
  CHECK(cues.count(CueKind::Italic));
  const auto kw = std::find_if(abs[0].cues.begin(), abs[0].cues.end(),
                               [](const Cue& c) { return c.kind == CueKind::LeadingKeyword; });
  CHECK(kw->word == "Abstract");
  CHECK(abs[0].text == "We study things.");
}

TEST_CASE("abstract environment means no abstract detection") {
  const BlockTree tree = parse(kLogical);
  CHECK_FALSE(detect_abstract(tree, frontmatter_region(tree)));
}

TEST_CASE("unlabeled abstract stays below the apply threshold") {
  const std::string logical = corpus::seed_document(3);
  const Degraded d = degrade(logical, std::vector<Profile>{Profile::CenterEnv, Profile::UnlabeledAbstract}, 2);
  const auto abs = of_kind(analyze_source(d.source), DetectionKind::Abstract);
  REQUIRE(abs.size() == 1);
  CHECK(abs[0].confidence < kApplyThreshold);
}

TEST_CASE("bold large numbered solitary paragraph is a section") {
  const Analysis a = analyze_source(doc("\\maketitle\n\n\\textbf{\\large 1 Introduction}\n\nText follows.\n",
                                        "\\title{T}\n"));
  const auto h = of_kind(a, DetectionKind::SectionHeader);
  REQUIRE(h.size() == 1);
  CHECK(h[0].level == 1);
  CHECK(h[0].text == "Introduction");
  CHECK(cue_set(h[0]) ==
        std::set<CueKind>{CueKind::Bold, CueKind::LargeFont, CueKind::NumberPrefix, CueKind::SolitaryParagraph});
}

TEST_CASE("numbering depth sets the level") {
  const Analysis a = analyze_source(doc("\\maketitle\n\n{\\bf 2.1 Setting}\n\nText.\n\n{\\bf 2.1.3 Detail}\n\nMore.\n",
                                        "\\title{T}\n"));
  const auto h = of_kind(a, DetectionKind::SectionHeader);
  REQUIRE(h.size() == 2);
  CHECK(h[0].level == 2);
  CHECK(h[1].level == 3);
}

TEST_CASE("bold inside math is never a detection") {
  const std::string src = doc("\\maketitle\n\n${\\bf v}$\n\n\\[ {\\bf 1 Introduction} \\]\n\n"
                              "\\begin{equation}{\\bf A}\\end{equation}\n",
                              "\\title{T}\n");
  const Analysis a = analyze_source(src);
  const auto math = math_spans(parse(src));
  for (const Detection& d : a.detections) {
    for (const SourceSpan& m : math) CHECK_FALSE(d.span.intersects(m));
  }
  CHECK(of_kind(a, DetectionKind::SectionHeader).empty());
}

TEST_CASE("logical section is not detected") {
  CHECK(of_kind(analyze_source(kLogical), DetectionKind::SectionHeader).empty());
}

TEST_CASE("inline bold word is emphasis") {
  const std::string src = doc("\\maketitle\n\nThis is an {\\bf important} point of the argument.\n", "\\title{T}\n");
  const auto e = of_kind(analyze_source(src), DetectionKind::Emphasis);
  REQUIRE(e.size() == 1);
  CHECK(e[0].text == "important");
}

TEST_CASE("bold definition label is theorem-like") {
  const std::string src =
      doc("\\maketitle\n\n{\\bf Definition 2.} A graph is sparse if it has few edges.\n\nNext.\n", "\\title{T}\n");
  const auto t = of_kind(analyze_source(src), DetectionKind::TheoremLike);
  REQUIRE(t.size() == 1);
  CHECK(t[0].word == "Definition");
}

TEST_CASE("bold inside bibliography is ignored") {
  const std::string src = doc(
      "\\maketitle\n\nText.\n\n\\begin{thebibliography}{9}\n\\bibitem{a} A. Author, J. Math. "
      "\\textbf{\\bibinfo{volume}{3}} (1999) 1.\n\\bibitem{b} B. Author, Ann. {\\bf 12} (2001).\n"
      "\\end{thebibliography}\n",
      "\\title{T}\n");
  const Analysis a = analyze_source(src);
  CHECK(of_kind(a, DetectionKind::Emphasis).empty());
  CHECK(of_kind(a, DetectionKind::SectionHeader).empty());
  CHECK(of_kind(analyze_source(doc("Ref \\textbf{\\bibinfo{volume}{3}} here.\n")), DetectionKind::Emphasis).empty());
}

TEST_CASE("classification") {
  const FormattingClass logical = classify(parse(kLogical));
  CHECK(logical.kind == FormattingKind::Logical);
  CHECK(logical.score == 0.0);

  const Degraded d = degrade(corpus::seed_document(0), all_profiles(), 5);
  CHECK(classify(parse(d.source)).kind == FormattingKind::Visual);

  const std::string mixed = doc(
      "\\maketitle\n\n\\medskip\\noindent{\\bf 1. Introduction}\\par\nText.\n\n"
      "\\medskip\\noindent{\\bf 2. Method}\\par\nMore.\n",
      "\\title{Logical Title}\n\\author{Ana Silva}\n");
  CHECK(classify(parse(mixed)).kind == FormattingKind::Mixed);
}

TEST_CASE("classification of the labeled desk corpus") {
  std::ifstream in(corpus::fixtures() / "desk" / "labels.tsv");
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const std::size_t tab = line.find('\t');
    const std::string path = line.substr(0, tab), label = line.substr(tab + 1);
    const FormattingClass c = classify(parse(corpus::read(corpus::fixtures() / path)));
    CHECK_MESSAGE(to_string(c.kind) == label, path);
    ++n;
  }
  CHECK(n == 22);
}

TEST_CASE("detection is deterministic") {
  for (std::size_t i = 0; i < 10; ++i) {
    const Degraded d = degrade(corpus::seed_document(i), corpus::roundtrip_profile_sets()[i % 5], i);
    const Analysis a = analyze_source(d.source), b = analyze_source(d.source);
    REQUIRE(a.detections.size() == b.detections.size());
    for (std::size_t k = 0; k < a.detections.size(); ++k) {
      CHECK(a.detections[k].span == b.detections[k].span);
      CHECK(a.detections[k].kind == b.detections[k].kind);
      CHECK(a.detections[k].confidence == b.detections[k].confidence);
    }
  }
}

TEST_CASE("name shape and institution keywords") {
  CHECK(is_name_shaped("Giuseppe Gaeta"));
  CHECK(is_name_shaped("J. R. R. Tolkien"));
  CHECK(is_name_shaped("Ludwig van Beethoven"));
  CHECK_FALSE(is_name_shaped("Department of Physics"));
  CHECK_FALSE(is_name_shaped("We"));
  CHECK(institution_keyword("Department of Physics, Kyoto") == "Department");
  CHECK(institution_keyword("Giuseppe Gaeta").empty());
}
