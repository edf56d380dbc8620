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

#include "g2p/pipeline.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "g2p/hash.hpp"
#include "g2p/mock_backend.hpp"
#include "testutil.hpp"

namespace g2p {
namespace {

Word W(const std::string& s) { return Word::parse(s).value(); }
PhonemeSequence P(const std::string& s) { return parse_phoneme_string(s); }

Dictionaries table1_dicts() {
  Dictionaries dicts;
  dicts.homographs.insert(HomographEntry::create(
      W("WOUND"),
      {HomographCase{"verb", P("W AW N D"), "to twist or coil",
                     {"His string was wound very tight"}},
       HomographCase{"noun", P("W UW N D"), "an injury to living tissue",
                     {"Let me see the wound on your leg"}}}));
  for (const auto& [word, phonemes] :
       std::vector<std::pair<std::string, std::string>>{
           {"HIS", "HH IH Z"},
           {"STRING", "S T R IH NG"},
           {"WAS", "W AA Z"},
           {"VERY", "V EH R IY"},
           {"TIGHT", "T AY T"},
           {"THE", "DH AH"},
           {"LET", "L EH T"},
           {"ME", "M IY"},
           {"SEE", "S IY"},
           {"ON", "AA N"},
           {"YOUR", "Y AO R"},
           {"LEG", "L EH G"}}) {
    dicts.lexicon.insert(W(word), P(phonemes), "cmu");
  }
  return dicts;
}

MockBackend table1_mock() {
  nlohmann::json script = {
      {"rules",
       {{{"word", "WOUND"},
         {"sentence", "His string was wound very tight"},
         {"case", 1}},
        {{"word", "WOUND"},
         {"sentence", "Let me see the wound on your leg"},
         {"case", 2}},
        {{"word", "ZORBLAT"}, {"phonemes", "Z AO R B L AE T"}}}}};
  return MockBackend::from_script(script);
}

TEST(ConvertWord, HomographTakesPhonemesFromChosenCase) {
  auto dicts = table1_dicts();
  auto mock = table1_mock();
  PromptLibrary prompts;
  ConversionContext ctx{dicts, mock, prompts, {}};

  auto result = convert_word(ctx, W("WOUND"),
                             "His string was wound very tight");
  EXPECT_EQ(result.phonemes.to_string(), "W AW N D");
  ASSERT_TRUE(std::holds_alternative<HomographCasePick>(result.provenance));
  EXPECT_EQ(std::get<HomographCasePick>(result.provenance).case_index, 0u);
}

TEST(ConvertWord, LexiconHitMakesNoBackendCalls) {
  auto dicts = table1_dicts();
  auto mock = table1_mock();
  PromptLibrary prompts;
  ConversionContext ctx{dicts, mock, prompts, {}};

  auto result = convert_word(ctx, W("THE"), "the wound");
  EXPECT_EQ(result.phonemes.to_string(), "DH AH");
  ASSERT_TRUE(std::holds_alternative<LexiconHit>(result.provenance));
  EXPECT_EQ(std::get<LexiconHit>(result.provenance).source, "cmu");
  EXPECT_EQ(mock.call_count(), 0);
}

TEST(ConvertWord, OovPhonemesAreGenerated) {
  auto dicts = table1_dicts();
  auto mock = table1_mock();
  PromptLibrary prompts;
  ConversionContext ctx{dicts, mock, prompts, {}};

  auto result = convert_word(ctx, W("ZORBLAT"), "the zorblat hummed");
  EXPECT_EQ(result.phonemes.to_string(), "Z AO R B L AE T");
  EXPECT_TRUE(std::holds_alternative<LlmGenerated>(result.provenance));
}

TEST(ConvertSentence, AssemblesWordPhonemesInOrder) {
  auto dicts = table1_dicts();
  auto mock = table1_mock();
  PromptLibrary prompts;
  ConversionContext ctx{dicts, mock, prompts, {}};

  auto result = convert_sentence(ctx, "Let me see the wound on your leg");
  EXPECT_EQ(result.phonemes.to_string(),
            "L EH T M IY S IY DH AH W UW N D AA N Y AO R L EH G");
  ASSERT_EQ(result.words.size(), 8u);
  EXPECT_EQ(result.words[4].word.str(), "WOUND");
  EXPECT_EQ(result.words[4].phonemes.to_string(), "W UW N D");

  // Assembly invariant: concatenation of non-failed word phonemes.
  PhonemeSequence expected;
  for (const auto& w : result.words) {
    for (auto t : w.phonemes) expected.push_back(t);
  }
  EXPECT_EQ(result.phonemes, expected);
}

TEST(ConvertSentence, EmptySentenceYieldsEmptyResult) {
  auto dicts = table1_dicts();
  auto mock = table1_mock();
  PromptLibrary prompts;
  ConversionContext ctx{dicts, mock, prompts, {}};

  auto result = convert_sentence(ctx, "");
  EXPECT_TRUE(result.words.empty());
  EXPECT_TRUE(result.phonemes.empty());
}

TEST(ConvertSentence, AllOovSentenceKeepsOrder) {
  Dictionaries dicts;
  nlohmann::json script = {{"rules",
                            {{{"word", "FLIB"}, {"phonemes", "F L IH B"}},
                             {{"word", "ZORB"}, {"phonemes", "Z AO R B"}},
                             {{"word", "QUUX"}, {"phonemes", "K W AH K S"}}}}};
  auto mock = MockBackend::from_script(script);
  PromptLibrary prompts;
  ConversionContext ctx{dicts, mock, prompts, {}};

  auto result = convert_sentence(ctx, "flib zorb quux");
  ASSERT_EQ(result.words.size(), 3u);
  for (const auto& w : result.words) {
    EXPECT_TRUE(std::holds_alternative<LlmGenerated>(w.provenance));
  }
  EXPECT_EQ(result.phonemes.to_string(), "F L IH B Z AO R B K W AH K S");
}

TEST(ConvertSentence, DictionaryClosedSentencesMakeZeroCalls) {
  auto dicts = table1_dicts();
  auto mock = table1_mock();
  PromptLibrary prompts;
  ConversionContext ctx{dicts, mock, prompts, {}};

  auto result = convert_sentence(ctx, "His string was very tight");
  EXPECT_EQ(mock.call_count(), 0);
  EXPECT_EQ(result.phonemes.to_string(),
            "HH IH Z S T R IH NG W AA Z V EH R IY T AY T");
}

TEST(ConvertSentence, HomographOutputsAlwaysComeFromCaseSet) {
  auto dicts = table1_dicts();
  auto mock = table1_mock();
  PromptLibrary prompts;
  ConversionContext ctx{dicts, mock, prompts, {}};

  const auto* entry = dicts.homographs.find(W("WOUND"));
  std::set<std::string> case_set;
  for (const auto& c : entry->cases()) case_set.insert(c.phonemes.to_string());

  for (const auto* sentence : {"His string was wound very tight",
                               "Let me see the wound on your leg"}) {
    auto result = convert_sentence(ctx, sentence);
    for (const auto& w : result.words) {
      if (w.word == W("WOUND")) {
        ASSERT_TRUE(std::holds_alternative<HomographCasePick>(w.provenance));
        EXPECT_TRUE(case_set.count(w.phonemes.to_string()));
      }
    }
  }
}

TEST(ConvertSentence, DeterministicUnderMock) {
  auto dicts = table1_dicts();
  PromptLibrary prompts;

  auto run = [&] {
    auto mock = table1_mock();
    ConversionContext ctx{dicts, mock, prompts, {}};
    return convert_sentence(ctx, "Let me see the wound on your leg")
        .phonemes.to_string();
  };
  EXPECT_EQ(run(), run());
}

TEST(ConvertSentence, ConcurrentResolutionMatchesSequential) {
  Dictionaries dicts;
  nlohmann::json rules = nlohmann::json::array();
  std::string sentence;
  for (int i = 0; i < 8; ++i) {
    std::string word = "NOVEL" + std::to_string(i);
    rules.push_back({{"word", word},
                     {"phonemes", std::string(i % 2 ? "N AA V" : "N OW V")}});
    if (i) sentence += ' ';
    sentence += word;
  }
  nlohmann::json script = {{"rules", rules}};
  PromptLibrary prompts;

  auto mock_seq = MockBackend::from_script(script);
  ConversionContext seq_ctx{dicts, mock_seq, prompts, {}};
  auto sequential = convert_sentence(seq_ctx, sentence);

  auto mock_par = MockBackend::from_script(script);
  PipelineOptions options;
  options.concurrency = 4;
  ConversionContext par_ctx{dicts, mock_par, prompts, options};
  auto parallel = convert_sentence(par_ctx, sentence);

  ASSERT_EQ(parallel.words.size(), sequential.words.size());
  for (std::size_t i = 0; i < parallel.words.size(); ++i) {
    EXPECT_EQ(parallel.words[i].word, sequential.words[i].word);
    EXPECT_EQ(parallel.words[i].phonemes, sequential.words[i].phonemes);
  }
  EXPECT_EQ(parallel.phonemes, sequential.phonemes);
  EXPECT_EQ(mock_par.call_count(), 8);
}

TEST(ConvertSentence, SkipPolicyRecordsFailureAndContinues) {
  auto dicts = table1_dicts();
  // No rule for UNSCRIPTED: its OOV prompt exhausts the retry budget.
  auto mock = table1_mock();
  PromptLibrary prompts;
  PipelineOptions options;
  options.max_attempts = 2;
  ConversionContext ctx{dicts, mock, prompts, options};

  // UNSCRIPTED has no rule; WOUND's rules are bound to other sentences, so
  // its case-matching prompt finds no response either. Both words fail,
  // conversion continues, and assembly skips them.
  auto result = convert_sentence(ctx, "the unscripted wound");
  ASSERT_EQ(result.words.size(), 3u);
  EXPECT_FALSE(result.words[0].failed());
  ASSERT_TRUE(result.words[1].failed());
  EXPECT_TRUE(result.words[1].phonemes.empty());
  EXPECT_TRUE(result.words[2].failed());
  EXPECT_EQ(result.phonemes.to_string(), "DH AH");
  EXPECT_EQ(mock.call_count(), 4);  // two failing words, two attempts each
}

TEST(ConvertSentence, AbortPolicyThrowsBackendExhausted) {
  auto dicts = table1_dicts();
  auto mock = table1_mock();
  PromptLibrary prompts;
  PipelineOptions options;
  options.fail_policy = FailPolicy::kAbort;
  options.max_attempts = 2;
  ConversionContext ctx{dicts, mock, prompts, options};

  EXPECT_THROW(convert_sentence(ctx, "the unscripted wound"),
               BackendExhausted);
}

TEST(ConvertSentence, RepeatedHomographsResolveIndependently) {
  Dictionaries dicts;
  dicts.homographs.insert(HomographEntry::create(
      W("WOUND"),
      {HomographCase{"verb", P("W AW N D"), "to twist", {"wound the clock"}},
       HomographCase{"noun", P("W UW N D"), "an injury", {"a deep wound"}}}));
  dicts.lexicon.insert(W("THE"), P("DH AH"), "cmu");
  dicts.lexicon.insert(W("WAS"), P("W AA Z"), "cmu");

  const std::string sentence = "The wound was wound tight";
  PromptLibrary prompts;
  const auto* entry = dicts.homographs.find(W("WOUND"));

  // The two occurrences render distinct prompts (occurrence note), so the
  // script can answer them differently by fingerprint.
  auto first = prompts.render_case_matching(W("WOUND"), sentence, *entry, 1, 2);
  auto second =
      prompts.render_case_matching(W("WOUND"), sentence, *entry, 2, 2);
  ASSERT_NE(first.user_content(), second.user_content());

  nlohmann::json script = {
      {"fingerprints",
       {{fnv1a64_hex(first.user_content()), "Case 2"},
        {fnv1a64_hex(second.user_content()), "Case 1"}}},
      {"rules", {{{"word", "TIGHT"}, {"phonemes", "T AY T"}}}}};
  auto mock = MockBackend::from_script(script);
  ConversionContext ctx{dicts, mock, prompts, {}};

  auto result = convert_sentence(ctx, sentence);
  ASSERT_EQ(result.words.size(), 5u);
  EXPECT_EQ(result.words[1].phonemes.to_string(), "W UW N D");
  EXPECT_EQ(result.words[3].phonemes.to_string(), "W AW N D");
  EXPECT_EQ(result.phonemes.to_string(),
            "DH AH W UW N D W AA Z W AW N D T AY T");
}

TEST(OneShotConvert, ParsesWholeSentenceResponse) {
  nlohmann::json script = {
      {"rules",
       {{{"sentence", "the wound"}, {"phonemes", "DH AH W UW1 N D"}}}}};
  auto mock = MockBackend::from_script(script);
  PromptLibrary prompts;

  auto seq = one_shot_convert(mock, prompts, "the wound");
  // Stress digits from the model are stripped.
  EXPECT_EQ(seq.to_string(), "DH AH W UW N D");
  EXPECT_EQ(mock.call_count(), 1);
}

TEST(OneShotConvert, ExhaustedRetriesLeaveNoPartialOutput) {
  MockBackend mock;
  mock.set_default_response("I cannot help with that");
  PromptLibrary prompts;
  EXPECT_THROW(one_shot_convert(mock, prompts, "the wound", 3),
               BackendExhausted);
  EXPECT_EQ(mock.call_count(), 3);
}

TEST(WordResultJson, SerializesProvenanceKinds) {
  WordResult lexicon_hit{W("THE"), P("DH AH"), LexiconHit{"cmu"}};
  auto j1 = to_json(lexicon_hit);
  EXPECT_EQ(j1["provenance"]["kind"], "lexicon");
  EXPECT_EQ(j1["provenance"]["source"], "cmu");

  WordResult pick{W("WOUND"), P("W AW N D"), HomographCasePick{0}};
  auto j2 = to_json(pick);
  EXPECT_EQ(j2["provenance"]["kind"], "homograph_case");
  EXPECT_EQ(j2["provenance"]["case"], 0);

  WordResult generated{W("ZORBLAT"), P("Z AO R B"), LlmGenerated{}};
  EXPECT_EQ(to_json(generated)["provenance"]["kind"], "llm");

  WordResult failed{W("X"), PhonemeSequence(), FailedWord{"backend down"}};
  auto j4 = to_json(failed);
  EXPECT_EQ(j4["provenance"]["kind"], "failed");
  EXPECT_EQ(j4["phonemes"], "");
}

}  // namespace
}  // namespace g2p
