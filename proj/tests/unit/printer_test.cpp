// Copyright 2026 The Xapi Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "support.hpp"

namespace xapi {
namespace {

std::string canonical(std::string_view text) { return print_canonical(parse_sentence(text, testing::lexicon())); }

TEST(Printer, NormalizesWhitespace) { EXPECT_EQ(canonical("An   apple/exists ."), "An apple / exists."); }

TEST(Printer, ArticleFollowsFirstAttribute) {
  EXPECT_EQ(canonical("A apple / exists."), "An apple / exists.");
  EXPECT_EQ(canonical("an box / exists."), "A box / exists.");
  EXPECT_EQ(canonical("\"Johnny\" / gives / a apple."), "\"Johnny\" / gives / an apple.");
}

TEST(Printer, LabeledThus) { EXPECT_EQ(canonical("\"JayLeno\" / thus   #A jokes."), "\"JayLeno\" / thus #A jokes."); }

TEST(Printer, Macro) {
  EXPECT_EQ(canonical("$NewScene #Attempt, fictional-future,\n   man \"John\" -> man \"John\",\n   cat -> cat, box -> box"),
            "$NewScene #Attempt, fictional-future, man \"John\" -> man \"John\", cat -> cat, box -> box");
  EXPECT_EQ(canonical("$NewSceneCurrent #yesterday, none,\n apple-> apple, \"John\""),
            "$NewSceneCurrent #yesterday, none, apple -> apple, \"John\"");
}

TEST(Printer, Sentences) {
  EXPECT_EQ(canonical("\"Me\" / sees in #Television //\n  \"BradPitt\" / laughs."),
            "\"Me\" / sees in #Television // \"BradPitt\" / laughs.");
  EXPECT_EQ(canonical("the shield -- of -- \"Achilles\" / is-a / big."), "The shield -- of -- \"Achilles\" / is-a / big.");
  EXPECT_EQ(canonical("Scene #yesterday / is-yesterday-of /\n   scene \"current\"."),
            "Scene #yesterday / is-yesterday-of / scene \"current\".");
  EXPECT_EQ(canonical("\"Caesar\" + \"Cicero\" /\n in-summary meet-and-greet-each-other."),
            "\"Caesar\" + \"Cicero\" / in-summary meet-and-greet-each-other.");
  EXPECT_EQ(canonical("\"Cicero\" / utters / text \"Ave!\"."), "\"Cicero\" / utters / text \"Ave!\".");
  EXPECT_EQ(canonical("I / goes-to / a kitchen."), "I / goes-to / a kitchen.");
  EXPECT_EQ(canonical("John / picks / the apple."), "\"John\" / picks / the apple.");
  EXPECT_EQ(canonical("The kitchen / is-identical / the kitchen -- in -- \"plan\"."),
            "The kitchen / is-identical / the kitchen -- in -- \"plan\".");
}

TEST(Printer, CorpusRoundTrip) {
  for (const auto& name : testing::corpus_names()) {
    for (const auto& s : parse_story(testing::corpus_text(name), testing::lexicon())) {
      std::string text = print_canonical(s);
      EXPECT_EQ(parse_sentence(text, testing::lexicon()), s) << name << ": " << text;
    }
  }
}

}  // namespace
}  // namespace xapi
