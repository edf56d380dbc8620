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

#ifndef G2P_PIPELINE_HPP_
#define G2P_PIPELINE_HPP_

#include <future>
#include <semaphore>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "g2p/errors.hpp"
#include "g2p/lexicon.hpp"
#include "g2p/llm.hpp"
#include "g2p/phoneme.hpp"
#include "g2p/prompts.hpp"
#include "g2p/text.hpp"

namespace g2p {

enum class FailPolicy { kSkip, kAbort };

// Where a word's phonemes came from.
struct LexiconHit {
  std::string source;
};
struct HomographCasePick {
  std::size_t case_index;
};
struct LlmGenerated {};
struct FailedWord {
  std::string error;
};
using WordProvenance =
    std::variant<LexiconHit, HomographCasePick, LlmGenerated, FailedWord>;

struct WordResult {
  Word word;
  PhonemeSequence phonemes;  // empty iff provenance is FailedWord
  WordProvenance provenance;

  bool failed() const {
    return std::holds_alternative<FailedWord>(provenance);
  }
};

struct ConversionResult {
  std::string sentence;
  std::vector<WordResult> words;  // in tokenize() order
  PhonemeSequence phonemes;       // concatenation of non-failed word phonemes
};

struct Dictionaries {
  HomographDict homographs;
  Lexicon lexicon;
};

struct PipelineOptions {
  FailPolicy fail_policy = FailPolicy::kSkip;
  int max_attempts = 3;
  int concurrency = 1;  // per-word backend calls within a sentence
};

struct ConversionContext {
  const Dictionaries& dicts;
  LlmBackend& backend;
  const PromptLibrary& prompts;
  PipelineOptions options;
};

// Resolves one word of a sentence:
//   homograph  -> the model picks a dictionary case; phonemes come from the
//                 chosen case, never from generation
//   in lexicon -> recorded phonemes, no backend call
//   OOV        -> the model generates phonemes in sentence context
// `occurrence` / `occurrence_total` identify which occurrence of a repeated
// word is being resolved; each occurrence gets its own prompt.
inline WordResult convert_word(const ConversionContext& ctx, const Word& word,
                               std::string_view sentence,
                               std::size_t occurrence = 1,
                               std::size_t occurrence_total = 1) {
  WordTag tag = tag_word(word, ctx.dicts.homographs, ctx.dicts.lexicon);

  if (const auto* hit = std::get_if<TagInLexicon>(&tag)) {
    return WordResult{word, *hit->phonemes,
                      LexiconHit{hit->source ? *hit->source : "unknown"}};
  }

  try {
    if (const auto* homograph = std::get_if<TagHomograph>(&tag)) {
      const HomographEntry& entry = *homograph->entry;
      LlmRequest request = ctx.prompts.render_case_matching(
          word, sentence, entry, occurrence, occurrence_total);
      CaseMatchResult match = request_with_retry(
          ctx.backend, request, ctx.options.max_attempts,
          [&entry](std::string text) { return parse_case_match(text, entry); });
      return WordResult{word, entry.cases()[match.case_index].phonemes,
                        HomographCasePick{match.case_index}};
    }

    LlmRequest request = ctx.prompts.render_oov(word, sentence);
    PhonemeSequence phonemes = request_with_retry(
        ctx.backend, request, ctx.options.max_attempts,
        [](std::string text) { return parse_phoneme_response(text); });
    return WordResult{word, std::move(phonemes), LlmGenerated{}};
  } catch (const BackendExhausted& e) {
    if (ctx.options.fail_policy == FailPolicy::kAbort) throw;
    return WordResult{word, PhonemeSequence(), FailedWord{e.what()}};
  } catch (const PromptTooLong& e) {
    if (ctx.options.fail_policy == FailPolicy::kAbort) throw;
    return WordResult{word, PhonemeSequence(), FailedWord{e.what()}};
  }
}

// Converts a whole sentence: tokenize, resolve every word, concatenate the
// surviving phonemes in original token order. Words needing backend calls
// may be resolved concurrently; results are reassembled by token index, so
// the output does not depend on completion order.
inline ConversionResult convert_sentence(const ConversionContext& ctx,
                                         std::string_view sentence) {
  std::vector<Word> words = tokenize(sentence);

  // Occurrence bookkeeping for repeated surfaces.
  std::unordered_map<Word, std::size_t> totals;
  for (const auto& w : words) ++totals[w];
  std::vector<std::size_t> occurrence(words.size());
  {
    std::unordered_map<Word, std::size_t> seen;
    for (std::size_t i = 0; i < words.size(); ++i) {
      occurrence[i] = ++seen[words[i]];
    }
  }

  std::vector<WordResult> results;
  results.reserve(words.size());

  if (ctx.options.concurrency > 1 && words.size() > 1) {
    std::counting_semaphore<> gate(ctx.options.concurrency);
    std::vector<std::future<WordResult>> futures;
    futures.reserve(words.size());
    for (std::size_t i = 0; i < words.size(); ++i) {
      futures.push_back(std::async(std::launch::async, [&, i] {
        gate.acquire();
        struct Release {
          std::counting_semaphore<>& s;
          ~Release() { s.release(); }
        } release{gate};
        return convert_word(ctx, words[i], sentence, occurrence[i],
                            totals[words[i]]);
      }));
    }
    for (auto& f : futures) results.push_back(f.get());
  } else {
    for (std::size_t i = 0; i < words.size(); ++i) {
      results.push_back(convert_word(ctx, words[i], sentence, occurrence[i],
                                     totals[words[i]]));
    }
  }

  PhonemeSequence assembled;
  for (const auto& r : results) {
    for (auto token : r.phonemes) assembled.push_back(token);
  }
  return ConversionResult{std::string(sentence), std::move(results),
                          std::move(assembled)};
}

// The baseline path: one prompt for the whole sentence, no dictionaries.
inline PhonemeSequence one_shot_convert(LlmBackend& backend,
                                        const PromptLibrary& prompts,
                                        std::string_view sentence,
                                        int max_attempts = 3) {
  LlmRequest request = prompts.render_one_shot(sentence);
  return request_with_retry(backend, request, max_attempts,
                            [](std::string text) {
                              return parse_phoneme_response(text);
                            });
}

inline nlohmann::ordered_json to_json(const WordProvenance& provenance) {
  nlohmann::ordered_json out;
  if (const auto* hit = std::get_if<LexiconHit>(&provenance)) {
    out["kind"] = "lexicon";
    out["source"] = hit->source;
  } else if (const auto* pick = std::get_if<HomographCasePick>(&provenance)) {
    out["kind"] = "homograph_case";
    out["case"] = pick->case_index;
  } else if (std::holds_alternative<LlmGenerated>(provenance)) {
    out["kind"] = "llm";
  } else {
    out["kind"] = "failed";
    out["error"] = std::get<FailedWord>(provenance).error;
  }
  return out;
}

inline nlohmann::ordered_json to_json(const WordResult& result) {
  return nlohmann::ordered_json{{"word", result.word.str()},
                                {"phonemes", result.phonemes.to_string()},
                                {"provenance", to_json(result.provenance)}};
}

}  // namespace g2p

#endif  // G2P_PIPELINE_HPP_
