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

#ifndef G2P_LEXICON_HPP_
#define G2P_LEXICON_HPP_

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "g2p/errors.hpp"
#include "g2p/homograph.hpp"
#include "g2p/phoneme.hpp"
#include "g2p/text.hpp"

namespace g2p {

// How a pronunciation source is reduced to one transcription per word.
//   kCmuSingle / kLibrig2pOmit: keep only words with a single distinct
//     transcription.
//   kLibrig2pFreq: keep the transcription that occurs most often; ties break
//     by first occurrence order in the source.
enum class MergePolicy { kCmuSingle, kLibrig2pOmit, kLibrig2pFreq };

inline std::string_view to_string(MergePolicy policy) {
  switch (policy) {
    case MergePolicy::kCmuSingle:
      return "cmu_single";
    case MergePolicy::kLibrig2pOmit:
      return "librig2p_omit";
    case MergePolicy::kLibrig2pFreq:
      return "librig2p_freq";
  }
  return "unknown";
}

inline std::optional<MergePolicy> parse_merge_policy(std::string_view text) {
  if (text == "cmu_single") return MergePolicy::kCmuSingle;
  if (text == "librig2p_omit" || text == "omit") return MergePolicy::kLibrig2pOmit;
  if (text == "librig2p_freq" || text == "freq") return MergePolicy::kLibrig2pFreq;
  return std::nullopt;
}

// Raw pronunciation multimap. Occurrence order and multiplicity are kept:
// the frequency policy counts one element per corpus occurrence.
class PronunciationTable {
 public:
  void add(Word word, PhonemeSequence phonemes) {
    auto [it, inserted] = map_.try_emplace(std::move(word));
    if (inserted) order_.push_back(it->first);
    it->second.push_back(std::move(phonemes));
    ++occurrences_;
  }

  const std::vector<PhonemeSequence>* find(const Word& word) const {
    auto it = map_.find(word);
    return it == map_.end() ? nullptr : &it->second;
  }

  std::size_t word_count() const { return map_.size(); }
  std::size_t occurrence_count() const { return occurrences_; }

  // Words in first-seen order.
  const std::vector<Word>& words() const { return order_; }

 private:
  std::unordered_map<Word, std::vector<PhonemeSequence>> map_;
  std::vector<Word> order_;
  std::size_t occurrences_ = 0;
};

// Parses the CMU pronouncing dictionary format:
//   WORD  PH1 PH2 ...
// Lines starting with ";;;" are comments; alternate pronunciations are
// marked "WORD(2)" and fold into the base word's list. Stress digits are
// stripped. Filtering to a single transcription happens in build_lexicon.
inline PronunciationTable parse_cmu(std::istream& in) {
  PronunciationTable table;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind(";;;", 0) == 0) continue;

    std::vector<std::string> fields;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && detail::is_ascii_space(line[i])) ++i;
      std::size_t start = i;
      while (i < line.size() && !detail::is_ascii_space(line[i])) ++i;
      if (i > start) fields.push_back(line.substr(start, i - start));
    }
    if (fields.empty()) continue;
    if (fields.size() < 2) {
      throw MalformedLine(lineno, "expected 'WORD  PH1 PH2 ...'");
    }

    // Fold "WORD(2)"-style variant markers into the base word.
    std::string raw_word = fields[0];
    if (raw_word.size() > 3 && raw_word.back() == ')') {
      auto open = raw_word.rfind('(');
      if (open != std::string::npos && open > 0) {
        bool digits = open + 1 < raw_word.size() - 1;
        for (std::size_t p = open + 1; p + 1 < raw_word.size(); ++p) {
          if (raw_word[p] < '0' || raw_word[p] > '9') digits = false;
        }
        if (digits) raw_word.resize(open);
      }
    }
    auto word = Word::parse(raw_word);
    if (!word) {
      throw MalformedLine(lineno, "word '" + fields[0] +
                                      "' is empty after normalization");
    }

    std::vector<std::string> raw_phonemes(fields.begin() + 1, fields.end());
    try {
      table.add(std::move(*word), strip_stress(raw_phonemes));
    } catch (const UnknownPhoneme& e) {
      throw UnknownPhoneme(e.token(), e.position(), lineno);
    }
  }
  return table;
}

inline PronunciationTable parse_cmu_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileError(path.string(), "cannot open dictionary");
  return parse_cmu(in);
}

// Word -> exactly one pronunciation, with the source each word came from.
class Lexicon {
 public:
  void insert(Word word, PhonemeSequence phonemes, std::string source) {
    if (phonemes.empty()) {
      throw InvariantViolation("lexicon entry '" + word.str() +
                               "' must have a non-empty pronunciation");
    }
    provenance_[word] = std::move(source);
    entries_[std::move(word)] = std::move(phonemes);
  }

  const PhonemeSequence* find(const Word& word) const {
    auto it = entries_.find(word);
    return it == entries_.end() ? nullptr : &it->second;
  }

  const std::string* provenance(const Word& word) const {
    auto it = provenance_.find(word);
    return it == provenance_.end() ? nullptr : &it->second;
  }

  bool contains(const Word& word) const { return entries_.count(word) > 0; }
  std::size_t size() const { return entries_.size(); }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  // Export: sorted JSON object word -> phoneme string, plus a sidecar
  // provenance object with the same keys.
  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    for (const auto& [surface, entry] : sorted()) {
      out[surface] = entry->to_string();
    }
    return out;
  }

  nlohmann::ordered_json provenance_json() const {
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    for (const auto& [surface, entry] : sorted()) {
      out[surface] = provenance_.at(Word::parse(surface).value());
    }
    return out;
  }

  static Lexicon from_json(const nlohmann::json& entries,
                           const nlohmann::json& provenance) {
    if (!entries.is_object() || !provenance.is_object()) {
      throw SchemaError("$", "lexicon artifacts must be JSON objects");
    }
    Lexicon out;
    for (const auto& [key, value] : entries.items()) {
      auto word = Word::parse(key);
      if (!word) throw SchemaError(key, "invalid lexicon word");
      if (!value.is_string()) throw SchemaError(key, "pronunciation must be a string");
      std::string source = "unknown";
      if (provenance.contains(key) && provenance[key].is_string()) {
        source = provenance[key].get<std::string>();
      }
      out.insert(std::move(*word), parse_phoneme_string(value.get<std::string>()),
                 std::move(source));
    }
    return out;
  }

 private:
  std::map<std::string, const PhonemeSequence*> sorted() const {
    std::map<std::string, const PhonemeSequence*> out;
    for (const auto& [word, seq] : entries_) out[word.str()] = &seq;
    return out;
  }

  std::unordered_map<Word, PhonemeSequence> entries_;
  std::unordered_map<Word, std::string> provenance_;
};

// Reduces a pronunciation multimap to a lexicon under the given policy.
// `source_id` is recorded as provenance for every kept word.
inline Lexicon build_lexicon(const PronunciationTable& table,
                             MergePolicy policy, const std::string& source_id) {
  Lexicon out;
  for (const auto& word : table.words()) {
    const auto& occurrences = *table.find(word);
    switch (policy) {
      case MergePolicy::kCmuSingle:
      case MergePolicy::kLibrig2pOmit: {
        bool single = std::all_of(
            occurrences.begin(), occurrences.end(),
            [&](const PhonemeSequence& s) { return s == occurrences.front(); });
        if (single) out.insert(word, occurrences.front(), source_id);
        break;
      }
      case MergePolicy::kLibrig2pFreq: {
        std::map<std::string, std::size_t> counts;
        for (const auto& s : occurrences) ++counts[s.to_string()];
        std::size_t best = 0;
        for (const auto& [_, n] : counts) best = std::max(best, n);
        // Ties break by first occurrence order in the corpus.
        for (const auto& s : occurrences) {
          if (counts[s.to_string()] == best) {
            out.insert(word, s, source_id);
            break;
          }
        }
        break;
      }
    }
  }
  return out;
}

// First-wins union: a word's pronunciation (and provenance) comes from the
// earliest lexicon that contains it. `collisions` counts words that appear
// in more than one input and were resolved by precedence.
inline Lexicon merge_lexicons(const std::vector<Lexicon>& ordered,
                              std::size_t* collisions = nullptr) {
  Lexicon out;
  std::size_t dupes = 0;
  for (const auto& lexicon : ordered) {
    for (const auto& [word, phonemes] : lexicon) {
      if (out.contains(word)) {
        ++dupes;
        continue;
      }
      out.insert(word, phonemes, *lexicon.provenance(word));
    }
  }
  if (collisions) *collisions = dupes;
  return out;
}

// Classification of a word against the two dictionaries.
struct TagHomograph {
  const HomographEntry* entry;
};
struct TagInLexicon {
  const PhonemeSequence* phonemes;
  const std::string* source;
};
struct TagOov {};
using WordTag = std::variant<TagHomograph, TagInLexicon, TagOov>;

// Homograph membership wins over plain lexicon membership: a homograph must
// never short-circuit to a single recorded pronunciation.
inline WordTag tag_word(const Word& word, const HomographDict& homographs,
                        const Lexicon& lexicon) {
  if (const auto* entry = homographs.find(word)) return TagHomograph{entry};
  if (const auto* phonemes = lexicon.find(word)) {
    return TagInLexicon{phonemes, lexicon.provenance(word)};
  }
  return TagOov{};
}

}  // namespace g2p

#endif  // G2P_LEXICON_HPP_
