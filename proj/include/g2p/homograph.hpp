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

#ifndef G2P_HOMOGRAPH_HPP_
#define G2P_HOMOGRAPH_HPP_

#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "g2p/errors.hpp"
#include "g2p/phoneme.hpp"
#include "g2p/text.hpp"

namespace g2p {

// One meaning of a homograph: its part-of-speech/meaning label, the
// pronunciation, a gloss, and at least one example sentence.
struct HomographCase {
  std::string genre;
  PhonemeSequence phonemes;
  std::string definition;
  std::vector<std::string> examples;
};

// A homograph and its cases. Valid entries have at least two cases with
// pairwise distinct pronunciations; a single-case word is not a homograph.
class HomographEntry {
 public:
  static HomographEntry create(Word word, std::vector<HomographCase> cases) {
    if (cases.size() < 2) {
      throw InvariantViolation("homograph '" + word.str() + "' has " +
                               std::to_string(cases.size()) +
                               " case(s); at least 2 are required");
    }
    std::set<std::string> seen;
    for (const auto& c : cases) {
      if (c.phonemes.empty()) {
        throw InvariantViolation("homograph '" + word.str() +
                                 "' has a case with empty phonemes");
      }
      if (c.examples.empty()) {
        throw InvariantViolation("homograph '" + word.str() +
                                 "' has a case with no example sentences");
      }
      if (!seen.insert(c.phonemes.to_string()).second) {
        throw InvariantViolation("homograph '" + word.str() +
                                 "' has duplicate case phonemes '" +
                                 c.phonemes.to_string() + "'");
      }
    }
    return HomographEntry(std::move(word), std::move(cases));
  }

  const Word& word() const { return word_; }
  const std::vector<HomographCase>& cases() const { return cases_; }

 private:
  HomographEntry(Word word, std::vector<HomographCase> cases)
      : word_(std::move(word)), cases_(std::move(cases)) {}

  Word word_;
  std::vector<HomographCase> cases_;
};

// The homograph dictionary: word -> entry. Loaded from a JSON array of
//   {word, cases: [{genre, phonemes, definition, examples: [...]}]}
// where phonemes is a space-separated string.
class HomographDict {
 public:
  HomographDict() = default;

  static HomographDict load(std::istream& in, const std::string& name = "") {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError(name.empty() ? "$" : name, e.what());
    }
    return from_json(doc);
  }

  static HomographDict load_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FileError(path.string(), "cannot open homograph dictionary");
    return load(in, path.string());
  }

  static HomographDict from_json(const nlohmann::json& doc) {
    if (!doc.is_array()) {
      throw SchemaError("$", "homograph dictionary must be a JSON array");
    }
    HomographDict dict;
    for (std::size_t i = 0; i < doc.size(); ++i) {
      dict.insert(parse_entry(doc[i], "[" + std::to_string(i) + "]"));
    }
    return dict;
  }

  void insert(HomographEntry entry) {
    auto word = entry.word();
    if (!map_.emplace(word, std::move(entry)).second) {
      throw DuplicateWord(word.str());
    }
  }

  const HomographEntry* find(const Word& word) const {
    auto it = map_.find(word);
    return it == map_.end() ? nullptr : &it->second;
  }

  bool contains(const Word& word) const { return map_.count(word) > 0; }
  std::size_t size() const { return map_.size(); }
  auto begin() const { return map_.begin(); }
  auto end() const { return map_.end(); }

  // Sorted by word so the artifact copy is byte-stable.
  nlohmann::ordered_json to_json() const {
    std::map<std::string, const HomographEntry*> sorted;
    for (const auto& [word, entry] : map_) sorted[word.str()] = &entry;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& [surface, entry] : sorted) {
      nlohmann::ordered_json cases = nlohmann::ordered_json::array();
      for (const auto& c : entry->cases()) {
        cases.push_back({{"genre", c.genre},
                         {"phonemes", c.phonemes.to_string()},
                         {"definition", c.definition},
                         {"examples", c.examples}});
      }
      arr.push_back({{"word", surface}, {"cases", std::move(cases)}});
    }
    return arr;
  }

 private:
  static HomographEntry parse_entry(const nlohmann::json& node,
                                    const std::string& path) {
    if (!node.is_object()) throw SchemaError(path, "entry must be an object");
    if (!node.contains("word") || !node["word"].is_string()) {
      throw SchemaError(path + ".word", "missing or non-string word");
    }
    auto word = Word::parse(node["word"].get<std::string>());
    if (!word) {
      throw SchemaError(path + ".word",
                        "word is empty after normalization or has whitespace");
    }
    if (!node.contains("cases") || !node["cases"].is_array()) {
      throw SchemaError(path + ".cases", "missing or non-array cases");
    }

    std::vector<HomographCase> cases;
    const auto& raw_cases = node["cases"];
    for (std::size_t i = 0; i < raw_cases.size(); ++i) {
      cases.push_back(parse_case(raw_cases[i],
                                 path + ".cases[" + std::to_string(i) + "]"));
    }
    return HomographEntry::create(std::move(*word), std::move(cases));
  }

  static HomographCase parse_case(const nlohmann::json& node,
                                  const std::string& path) {
    if (!node.is_object()) throw SchemaError(path, "case must be an object");
    HomographCase out;
    out.genre = require_string(node, "genre", path);
    out.definition = require_string(node, "definition", path);
    std::string phonemes = require_string(node, "phonemes", path);
    try {
      out.phonemes = parse_phoneme_string(phonemes);
    } catch (const UnknownPhoneme& e) {
      throw SchemaError(path + ".phonemes", e.what());
    }
    if (!node.contains("examples") || !node["examples"].is_array()) {
      throw SchemaError(path + ".examples", "missing or non-array examples");
    }
    for (const auto& ex : node["examples"]) {
      if (!ex.is_string()) {
        throw SchemaError(path + ".examples", "examples must be strings");
      }
      out.examples.push_back(ex.get<std::string>());
    }
    return out;
  }

  static std::string require_string(const nlohmann::json& node,
                                    const char* key, const std::string& path) {
    if (!node.contains(key) || !node[key].is_string()) {
      throw SchemaError(path + "." + key, "missing or non-string field");
    }
    return node[key].get<std::string>();
  }

  std::unordered_map<Word, HomographEntry> map_;
};

}  // namespace g2p

#endif  // G2P_HOMOGRAPH_HPP_
