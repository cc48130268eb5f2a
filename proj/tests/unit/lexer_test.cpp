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

std::vector<TokenKind> kinds(const std::vector<Token>& tokens) {
  std::vector<TokenKind> out;
  for (const auto& t : tokens) out.push_back(t.kind);
  return out;
}

TEST(Lexer, SvoWithNames) {
  auto tokens = tokenize("\"Achilles\" / hits / \"Hector\".");
  using K = TokenKind;
  EXPECT_EQ(kinds(tokens), (std::vector<K>{K::proper_name, K::slash, K::word, K::slash, K::proper_name, K::period}));
  EXPECT_EQ(tokens[0].text, "Achilles");
  EXPECT_EQ(tokens[2].text, "hits");
  EXPECT_EQ(tokens[4].text, "Hector");
}

TEST(Lexer, EmptyInput) {
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_TRUE(tokenize("  % only a comment\n\n").empty());
}

TEST(Lexer, RelationPath) {
  auto tokens = tokenize("The shield -- of -- \"Achilles\" / is-a / big.");
  int dash = 0;
  bool of = false;
  for (const auto& t : tokens) {
    dash += t.kind == TokenKind::dash_dash;
    of |= t.kind == TokenKind::word && t.text == "of";
  }
  EXPECT_EQ(dash, 2);
  EXPECT_TRUE(of);
  EXPECT_EQ(tokens[0].text, "the");
}

TEST(Lexer, ProperNamesKeepSpacingAndCase) {
  auto tokens = tokenize("\"Old  McDonald\"");
  ASSERT_EQ(tokens.size(), 1u);
  EXPECT_EQ(tokens[0].text, "Old  McDonald");
}

TEST(Lexer, Punctuation) {
  auto tokens = tokenize("$NewScene #Attempt, fictional-future,\n   man \"John\" -> man \"John\", apple-> apple\n"
                         "$..// I / drink / a milk. \"A\" + \"B\" / utters / text \"Ave!\". Scene / x.");
  using K = TokenKind;
  EXPECT_EQ(tokens[0].kind, K::macro_head);
  EXPECT_EQ(tokens[0].text, "$NewScene");
  EXPECT_EQ(tokens[1].kind, K::label);
  EXPECT_EQ(tokens[1].text, "Attempt");
  EXPECT_EQ(tokens[3].text, "fictional-future");
  EXPECT_EQ(tokens[7].kind, K::arrow);
  EXPECT_EQ(tokens[11].text, "apple");
  EXPECT_EQ(tokens[12].kind, K::arrow);
  EXPECT_EQ(tokens[14].kind, K::macro_head);
  EXPECT_EQ(tokens[14].text, "$..");
  EXPECT_EQ(tokens[15].kind, K::double_slash);
  bool plus = false, text = false, scene = false;
  for (const auto& t : tokens) {
    plus |= t.kind == K::plus;
    if (t.kind == K::text_literal) {
      text = true;
      EXPECT_EQ(t.text, "Ave!");
    }
    scene |= t.kind == K::scene_keyword;
  }
  EXPECT_TRUE(plus && text && scene);
}

TEST(Lexer, Positions) {
  auto tokens = tokenize("A apple / exists.\n  \"Mary\" / receives / the apple.");
  EXPECT_EQ(tokens[0].pos, (SourcePos{1, 1}));
  EXPECT_EQ(tokens[1].pos, (SourcePos{1, 3}));
  EXPECT_EQ(tokens[5].pos, (SourcePos{2, 3}));
}

TEST(Lexer, Errors) {
  try {
    tokenize("A apple / exists.\n\"Mary / receives.");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unterminated_name);
    EXPECT_EQ(e.pos(), (SourcePos{2, 1}));
  }
  try {
    tokenize("A apple ! exists.");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::illegal_character);
    EXPECT_EQ(e.pos(), (SourcePos{1, 9}));
  }
  EXPECT_THROW(tokenize("a - b"), Error);
  EXPECT_THROW(tokenize("# x"), Error);
}

TEST(Lexer, PositionsStrictlyIncreaseOverCorpus) {
  for (const auto& name : testing::corpus_names()) {
    auto tokens = tokenize(testing::corpus_text(name));
    for (std::size_t k = 1; k < tokens.size(); ++k) EXPECT_LT(tokens[k - 1].pos, tokens[k].pos) << name << " #" << k;
  }
}

}  // namespace
}  // namespace xapi
