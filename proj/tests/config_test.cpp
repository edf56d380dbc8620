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

#include "g2p/config.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace g2p {
namespace {

ConfigFile parse(const std::string& text) {
  std::istringstream in(text);
  return ConfigFile::parse(in, "test.toml");
}

TEST(ConfigParse, SectionsFlattenToDottedKeys) {
  auto cfg = parse(
      "mode = \"ickr\"\n"
      "\n"
      "[backend]\n"
      "kind = \"mock\"        # inline comment\n"
      "max_attempts = 3\n"
      "temperature = 0.25\n"
      "verbose = true\n"
      "\n"
      "[dictionary.sources.cmu]\n"
      "path = \"data/cmudict.txt\"\n");
  EXPECT_EQ(cfg.get_string("mode"), "ickr");
  EXPECT_EQ(cfg.get_string("backend.kind"), "mock");
  EXPECT_EQ(cfg.get_int_or("backend.max_attempts", 0), 3);
  EXPECT_DOUBLE_EQ(cfg.get_double_or("backend.temperature", 0), 0.25);
  EXPECT_TRUE(cfg.get_bool_or("backend.verbose", false));
  EXPECT_EQ(cfg.get_string("dictionary.sources.cmu.path"), "data/cmudict.txt");
}

TEST(ConfigParse, StringEscapes) {
  auto cfg = parse(R"(quote = "a \"quoted\" word")" "\n"
                   R"(path = "C:\\tmp")" "\n");
  EXPECT_EQ(cfg.get_string("quote"), "a \"quoted\" word");
  EXPECT_EQ(cfg.get_string("path"), "C:\\tmp");
}

TEST(ConfigParse, CommentsAndBlankLines) {
  auto cfg = parse(
      "# full line comment\n"
      "\n"
      "count = 7 # trailing\n"
      "[section] # comments after headers are fine\n"
      "inner = 1\n");
  EXPECT_EQ(cfg.get_int_or("count", 0), 7);
  EXPECT_EQ(cfg.get_int_or("section.inner", 0), 1);
  EXPECT_THROW(parse("[section] junk\n"), ConfigError);
}

TEST(ConfigParse, NegativeNumbersAndFloats) {
  auto cfg = parse("a = -3\nb = -0.5\nc = 1e3\n");
  EXPECT_EQ(cfg.get_int_or("a", 0), -3);
  EXPECT_DOUBLE_EQ(cfg.get_double_or("b", 0), -0.5);
  EXPECT_DOUBLE_EQ(cfg.get_double_or("c", 0), 1000.0);
}

TEST(ConfigParse, ErrorsCarryFileAndLine) {
  try {
    parse("good = 1\nbad line without equals\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("test.toml:2"), std::string::npos);
  }
}

TEST(ConfigParse, RejectsMalformedInput) {
  EXPECT_THROW(parse("x = unquoted words\n"), ConfigError);
  EXPECT_THROW(parse("x = \"unterminated\n"), ConfigError);
  EXPECT_THROW(parse("x = \"a\" trailing\n"), ConfigError);
  EXPECT_THROW(parse("[unterminated\n"), ConfigError);
  EXPECT_THROW(parse("[]\nx = 1\n"), ConfigError);
  EXPECT_THROW(parse("bad key! = 1\n"), ConfigError);
  EXPECT_THROW(parse("x = \"a\\q\"\n"), ConfigError);
  EXPECT_THROW(parse("x =\n"), ConfigError);
}

TEST(ConfigParse, TypeMismatchesAreErrors) {
  auto cfg = parse("s = \"text\"\nn = 3\n");
  EXPECT_THROW(cfg.get_int_or("s", 0), ConfigError);
  EXPECT_THROW(cfg.get_string("n"), ConfigError);
  EXPECT_THROW(cfg.get_bool_or("n", false), ConfigError);
  EXPECT_THROW(cfg.get_string("missing"), ConfigError);
  EXPECT_EQ(cfg.get_string_or("missing", "d"), "d");
  // Integers widen to double on demand.
  EXPECT_DOUBLE_EQ(cfg.get_double_or("n", 0), 3.0);
}

TEST(DictionarySpec, ParsesTheFourPaperVariants) {
  auto one = DictionarySpec::parse("cmu+librig2p_omit");
  ASSERT_EQ(one.sources.size(), 2u);
  EXPECT_EQ(one.sources[0].id, "cmu");
  EXPECT_EQ(one.sources[0].policy, MergePolicy::kCmuSingle);
  EXPECT_EQ(one.sources[1].id, "librig2p");
  EXPECT_EQ(one.sources[1].policy, MergePolicy::kLibrig2pOmit);

  auto two = DictionarySpec::parse("cmu+librig2p_freq");
  EXPECT_EQ(two.sources[1].policy, MergePolicy::kLibrig2pFreq);

  auto three = DictionarySpec::parse("librig2p_omit+cmu");
  EXPECT_EQ(three.sources[0].id, "librig2p");
  EXPECT_EQ(three.sources[0].policy, MergePolicy::kLibrig2pOmit);
  EXPECT_EQ(three.sources[1].id, "cmu");
  EXPECT_EQ(three.sources[1].policy, MergePolicy::kCmuSingle);

  auto four = DictionarySpec::parse("librig2p_freq+cmu");
  EXPECT_EQ(four.sources[0].policy, MergePolicy::kLibrig2pFreq);

  for (const char* text :
       {"cmu+librig2p_omit", "cmu+librig2p_freq", "librig2p_omit+cmu",
        "librig2p_freq+cmu"}) {
    EXPECT_EQ(DictionarySpec::parse(text).to_string(), text);
  }
}

TEST(DictionarySpec, RejectsDegenerateSpecs) {
  EXPECT_THROW(DictionarySpec::parse(""), ConfigError);
  EXPECT_THROW(DictionarySpec::parse("cmu+"), ConfigError);
  EXPECT_THROW(DictionarySpec::parse("+cmu"), ConfigError);
  EXPECT_THROW(DictionarySpec::parse("cmu+cmu"), ConfigError);
  EXPECT_THROW(DictionarySpec::parse("librig2p_omit+librig2p_freq"),
               ConfigError);
}

TEST(RunConfig, LoadsFullFile) {
  auto cfg = parse(
      "mode = \"one_shot\"\n"
      "fail_policy = \"abort\"\n"
      "[dictionary]\n"
      "spec = \"librig2p_freq+cmu\"\n"
      "dir = \"artifacts\"\n"
      "[dictionary.sources.cmu]\n"
      "path = \"cmu.txt\"\n"
      "format = \"cmu\"\n"
      "[dictionary.sources.librig2p]\n"
      "path = \"train.jsonl\"\n"
      "format = \"sentences-jsonl\"\n"
      "[homographs]\n"
      "path = \"homographs.json\"\n"
      "[backend]\n"
      "kind = \"http\"\n"
      "base_url = \"http://127.0.0.1:9999\"\n"
      "model = \"gpt-4-0613\"\n"
      "max_attempts = 5\n"
      "concurrency = 4\n"
      "[prompts]\n"
      "token_budget = 2048\n"
      "[convert]\n"
      "corpus = \"corpus.jsonl\"\n"
      "out = \"hyp.jsonl\"\n"
      "[evaluate]\n"
      "references = \"refs.jsonl\"\n"
      "report = \"report.json\"\n"
      "[evaluate.weights]\n"
      "lexicon = 0.40\n"
      "sentence = 0.51\n"
      "homograph = 0.09\n");
  auto run = RunConfig::from_config(cfg);
  EXPECT_EQ(run.mode, RunMode::kOneShot);
  EXPECT_EQ(run.fail_policy, FailPolicy::kAbort);
  EXPECT_EQ(run.dictionary.to_string(), "librig2p_freq+cmu");
  EXPECT_EQ(run.dict_dir, "artifacts");
  EXPECT_EQ(run.sources.at("librig2p").format, "sentences-jsonl");
  EXPECT_EQ(run.backend.kind, "http");
  EXPECT_EQ(run.backend.max_attempts, 5);
  EXPECT_EQ(run.backend.concurrency, 4);
  EXPECT_EQ(run.prompt_token_budget, 2048);
  EXPECT_EQ(run.hypotheses_path, "hyp.jsonl");  // defaults to convert.out
  ASSERT_TRUE(run.eval_weights.has_value());
  EXPECT_DOUBLE_EQ(run.eval_weights->at("sentence"), 0.51);
  EXPECT_NO_THROW(run.validate_for_convert());
  EXPECT_NO_THROW(run.validate_for_build_dict());
}

TEST(RunConfig, DefaultsAreUsable) {
  auto run = RunConfig::from_config(parse(""));
  EXPECT_EQ(run.mode, RunMode::kIckr);
  EXPECT_EQ(run.fail_policy, FailPolicy::kSkip);
  EXPECT_EQ(run.backend.kind, "mock");
  EXPECT_EQ(run.backend.max_attempts, 3);
  EXPECT_EQ(run.prompt_token_budget, 4096);
}

TEST(RunConfig, RejectsBadEnumsAndBounds) {
  EXPECT_THROW(RunConfig::from_config(parse("mode = \"both\"\n")), ConfigError);
  EXPECT_THROW(RunConfig::from_config(parse("fail_policy = \"retry\"\n")),
               ConfigError);
  EXPECT_THROW(RunConfig::from_config(parse("[backend]\nkind = \"local\"\n")),
               ConfigError);
  EXPECT_THROW(
      RunConfig::from_config(parse("[backend]\nmax_attempts = 0\n")),
      ConfigError);
  EXPECT_THROW(
      RunConfig::from_config(parse("[prompts]\ntoken_budget = -1\n")),
      ConfigError);
  EXPECT_THROW(RunConfig::from_config(parse(
                   "[dictionary.sources.cmu]\npath = \"x\"\nformat = "
                   "\"csv\"\n")),
               ConfigError);
  EXPECT_THROW(RunConfig::from_config(
                   parse("[dictionary.sources.cmu]\nformat = \"cmu\"\n")),
               ConfigError);
}

TEST(RunConfig, BackendInvariants) {
  // The mock backend needs a script; the http backend needs a base URL and
  // a credential env var name.
  auto mock_run = RunConfig::from_config(
      parse("[backend]\nkind = \"mock\"\n[convert]\ncorpus = \"c.jsonl\"\n"));
  EXPECT_THROW(mock_run.validate_backend(), ConfigError);

  auto http_run = RunConfig::from_config(
      parse("[backend]\nkind = \"http\"\n[convert]\ncorpus = \"c.jsonl\"\n"));
  EXPECT_THROW(http_run.validate_backend(), ConfigError);

  auto http_no_env = RunConfig::from_config(parse(
      "[backend]\nkind = \"http\"\nbase_url = \"http://x\"\napi_key_env = "
      "\"\"\n"));
  EXPECT_THROW(http_no_env.validate_backend(), ConfigError);

  auto ok = RunConfig::from_config(parse(
      "[backend]\nkind = \"http\"\nbase_url = \"http://x\"\n"));
  EXPECT_NO_THROW(ok.validate_backend());
}

TEST(RunConfig, ValidationIsPerCommand) {
  auto run = RunConfig::from_config(parse(""));
  EXPECT_THROW(run.validate_for_convert(), ConfigError);   // no corpus
  EXPECT_THROW(run.validate_for_evaluate(), ConfigError);  // no references
  EXPECT_THROW(run.validate_for_build_dict(), ConfigError);  // no sources
}

}  // namespace
}  // namespace g2p
