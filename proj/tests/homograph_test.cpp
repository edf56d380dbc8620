// Copyright (c) 2026 The g2pkit Authors
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

#include "g2p/homograph.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace g2p {
namespace {

const char* kWoundJson = R"([
  {
    "word": "wound",
    "cases": [
      {
        "genre": "verb",
        "phonemes": "W AW N D",
        "definition": "past tense of wind: to twist or coil",
        "examples": ["His string was wound very tight"]
      },
      {
        "genre": "noun",
        "phonemes": "W UW N D",
        "definition": "an injury to living tissue",
        "examples": ["Let me see the wound on your leg"]
      }
    ]
  }
])";

TEST(HomographDict, LoadsValidTwoCaseEntry) {
  std::istringstream in(kWoundJson);
  auto dict = HomographDict::load(in);
  EXPECT_EQ(dict.size(), 1u);

  const auto* entry = dict.find(Word::parse("WOUND").value());
  ASSERT_NE(entry, nullptr);
  ASSERT_EQ(entry->cases().size(), 2u);
  EXPECT_EQ(entry->cases()[0].genre, "verb");
  EXPECT_EQ(entry->cases()[0].phonemes.to_string(), "W AW N D");
  EXPECT_EQ(entry->cases()[1].phonemes.to_string(), "W UW N D");
  ASSERT_FALSE(entry->cases()[1].examples.empty());
}

TEST(HomographDict, LookupIsCaseInsensitiveViaNormalization) {
  std::istringstream in(kWoundJson);
  auto dict = HomographDict::load(in);
  EXPECT_TRUE(dict.contains(Word::parse("wound").value()));
}

TEST(HomographDict, SingleCaseEntryViolatesInvariant) {
  std::istringstream in(R"([
    {"word": "the", "cases": [
      {"genre": "article", "phonemes": "DH AH", "definition": "", "examples": ["the cat"]}
    ]}
  ])");
  EXPECT_THROW(HomographDict::load(in), InvariantViolation);
}

TEST(HomographDict, DuplicateCasePhonemesViolateInvariant) {
  std::istringstream in(R"([
    {"word": "bow", "cases": [
      {"genre": "noun", "phonemes": "B OW", "definition": "a weapon", "examples": ["the bow of Vishnu"]},
      {"genre": "noun", "phonemes": "B OW", "definition": "a knot", "examples": ["a bow on the gift"]}
    ]}
  ])");
  EXPECT_THROW(HomographDict::load(in), InvariantViolation);
}

TEST(HomographDict, EmptyExamplesViolateInvariant) {
  std::istringstream in(R"([
    {"word": "bow", "cases": [
      {"genre": "noun", "phonemes": "B OW", "definition": "a weapon", "examples": []},
      {"genre": "verb", "phonemes": "B AW", "definition": "to bend forward", "examples": ["bow to the queen"]}
    ]}
  ])");
  EXPECT_THROW(HomographDict::load(in), InvariantViolation);
}

TEST(HomographDict, DistinctCasesAreValid) {
  std::istringstream in(R"([
    {"word": "bow", "cases": [
      {"genre": "noun", "phonemes": "B OW", "definition": "a weapon for arrows", "examples": ["the bow of Vishnu"]},
      {"genre": "verb", "phonemes": "B AW", "definition": "to bend forward", "examples": ["bow to the queen"]}
    ]}
  ])");
  auto dict = HomographDict::load(in);
  const auto* entry = dict.find(Word::parse("BOW").value());
  ASSERT_NE(entry, nullptr);
  EXPECT_EQ(entry->cases()[0].phonemes.to_string(), "B OW");
  EXPECT_EQ(entry->cases()[1].phonemes.to_string(), "B AW");
}

TEST(HomographDict, RepeatedWordIsRejected) {
  std::istringstream in(R"([
    {"word": "bow", "cases": [
      {"genre": "noun", "phonemes": "B OW", "definition": "a", "examples": ["x"]},
      {"genre": "verb", "phonemes": "B AW", "definition": "b", "examples": ["y"]}
    ]},
    {"word": "BOW", "cases": [
      {"genre": "noun", "phonemes": "B OW", "definition": "a", "examples": ["x"]},
      {"genre": "verb", "phonemes": "B AW", "definition": "b", "examples": ["y"]}
    ]}
  ])");
  EXPECT_THROW(HomographDict::load(in), DuplicateWord);
}

TEST(HomographDict, MissingFieldReportsPath) {
  std::istringstream in(R"([
    {"word": "bow", "cases": [
      {"genre": "noun", "definition": "a weapon", "examples": ["x"]},
      {"genre": "verb", "phonemes": "B AW", "definition": "b", "examples": ["y"]}
    ]}
  ])");
  try {
    HomographDict::load(in);
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.path(), "[0].cases[0].phonemes");
  }
}

TEST(HomographDict, BadPhonemesReportPath) {
  std::istringstream in(R"([
    {"word": "bow", "cases": [
      {"genre": "noun", "phonemes": "B QX", "definition": "a", "examples": ["x"]},
      {"genre": "verb", "phonemes": "B AW", "definition": "b", "examples": ["y"]}
    ]}
  ])");
  try {
    HomographDict::load(in);
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.path(), "[0].cases[0].phonemes");
  }
}

TEST(HomographDict, NonArrayDocumentIsSchemaError) {
  std::istringstream in(R"({"word": "bow"})");
  EXPECT_THROW(HomographDict::load(in), SchemaError);
}

TEST(HomographDict, ShippedAssetLoadsCleanly) {
  auto dict = HomographDict::load_file(std::string(G2P_DATA_DIR) +
                                       "/homographs.json");
  EXPECT_GE(dict.size(), 10u);
  // The Table 1 pair must be present with both pronunciations.
  const auto* wound = dict.find(Word::parse("WOUND").value());
  ASSERT_NE(wound, nullptr);
  std::set<std::string> prons;
  for (const auto& c : wound->cases()) prons.insert(c.phonemes.to_string());
  EXPECT_TRUE(prons.count("W AW N D"));
  EXPECT_TRUE(prons.count("W UW N D"));
}

TEST(HomographDict, JsonRoundTrip) {
  std::istringstream in(kWoundJson);
  auto dict = HomographDict::load(in);
  auto restored = HomographDict::from_json(dict.to_json());
  EXPECT_EQ(restored.size(), dict.size());
  EXPECT_TRUE(restored.contains(Word::parse("WOUND").value()));
}

}  // namespace
}  // namespace g2p
