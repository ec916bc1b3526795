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

#include <random>
#include <string>

#include "corpus.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "texlogic/converter.hpp"
#include "texlogic/degrader.hpp"
#include "texlogic/validator.hpp"

using namespace texlogic;

namespace {

// Biased toward TeX syntax so that groups, math and commands show up often.
std::string random_source(std::mt19937_64& rng) {
  static const std::string alphabet = "\\{}$%&#^_~[]() \n\t\r abcXYZ019.,*@";
  static const char* words[] = {"\\begin{", "\\end{", "center}", "abstract}", "\\centerline{", "\\bf ", "\\verb|",
                                "\\def\\x{", "\\\\", "\\[", "\\]", "$$", "\\section{", "\\title{", "\\maketitle",
                                "\\begin{verbatim}", "\\end{verbatim}", "\n\n", "{\\bf 1. Intro}\\par", "\xc3\xa9",
                                "\xff", "\x00"};
  std::string s;
  const std::size_t n = rng() % 200;
  while (s.size() < n) {
    const auto r = rng() % 10;
    if (r < 3) {
      const char* w = words[rng() % std::size(words)];
      s += std::string(w, w[0] ? std::char_traits<char>::length(w) : 1);
    } else if (r < 4) {
      s += static_cast<char>(rng() & 0xff);
    } else {
      s += alphabet[rng() % alphabet.size()];
    }
  }
  return s;
}

}  // namespace

TEST_CASE("random input never breaks the pipeline") {
  std::mt19937_64 rng(20240601);
  std::size_t converted = 0;
  for (int i = 0; i < 10000; ++i) {
    const std::string s = random_source(rng);
    std::string joined;
    const TokenStream ts = tokenize(s);
    for (const Token& t : ts.tokens()) joined += ts.text(t);
    REQUIRE(joined == s);
    BlockTree tree;
    REQUIRE_NOTHROW(tree = parse(s));
    CHECK(validate_structure(s, s).empty());
    if (i % 10 == 0) {
      std::string out;
      ConversionReport r;
      REQUIRE_NOTHROW(std::tie(out, r) = convert(s));
      CHECK(check_body_preservation(s, out, r.plan).preserved);
      CHECK(oracle::imbalance(out) <= oracle::imbalance(s));
      ++converted;
    }
  }
  CHECK(converted == 1000);
}

TEST_CASE("conversion is deterministic") {
  for (std::size_t i = 0; i < 25; ++i) {
    const Degraded d = degrade(corpus::seed_document(i), all_profiles(), i);
    const auto [a, ra] = convert(d.source);
    const auto [b, rb] = convert(d.source);
    CHECK(a == b);
    REQUIRE(ra.plan.edits.size() == rb.plan.edits.size());
    for (std::size_t k = 0; k < ra.plan.edits.size(); ++k) {
      CHECK(ra.plan.edits[k].span == rb.plan.edits[k].span);
      CHECK(ra.plan.edits[k].replacement == rb.plan.edits[k].replacement);
    }
  }
}

TEST_CASE("converting a conversion changes nothing") {
  for (std::size_t i = 0; i < 60; ++i) {
    const Degraded d = degrade(corpus::seed_document(i), corpus::roundtrip_profile_sets()[i % 5], 100 + i);
    const auto [once, r1] = convert(d.source);
    const auto [twice, r2] = convert(once);
    CHECK(twice == once);
    CHECK(r2.plan.edits.empty());
  }
}

TEST_CASE("seed documents are logical and stable") {
  for (std::size_t i = 0; i < 50; ++i) {
    const std::string s = corpus::seed_document(i);
    CHECK(s == corpus::seed_document(i));
    CHECK(classify(parse(s)).kind == FormattingKind::Logical);
    CHECK(oracle::imbalance(s) == 0);
  }
}
