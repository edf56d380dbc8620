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

#ifndef G2P_MOCK_BACKEND_HPP_
#define G2P_MOCK_BACKEND_HPP_

#include <deque>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "g2p/errors.hpp"
#include "g2p/hash.hpp"
#include "g2p/llm.hpp"
#include "g2p/text.hpp"

namespace g2p {

// Deterministic offline backend. Responses come from a JSON script:
//
//   {
//     "fail_first": 0,
//     "default": "optional fallback response text",
//     "fingerprints": {"<fnv1a64 hex of the rendered prompt>": "response"},
//     "rules": [
//       {"word": "WOUND", "sentence": "His string was wound very tight",
//        "case": 1},
//       {"word": "ZORBLAT", "phonemes": "Z AO R B L AE T"},
//       {"sentence": "the whole input sentence", "phonemes": "..."},
//       {"word": "BROKEN", "fail": true}
//     ]
//   }
//
// Rules match against the word/sentence markers the prompt renderer embeds
// ('Sentence: "..."', 'Target word: "..."' / 'Word: "..."', or the last
// 'Input: "..."' line of a one-shot prompt). A rule without a sentence
// matches any sentence. "case" answers "Case <n>", "phonemes" answers
// "Phonemes: <...>", "response" is returned verbatim, "fail" raises a
// transport error. Identical requests always get identical responses.
//
// Tests can also enqueue one-off responses/failures, which are consumed
// before the script is consulted.
class MockBackend final : public LlmBackend {
 public:
  MockBackend() = default;

  MockBackend(const MockBackend& other) {
    std::lock_guard<std::mutex> lock(other.mu_);
    queue_ = other.queue_;
    fail_first_ = other.fail_first_;
    fingerprints_ = other.fingerprints_;
    rules_ = other.rules_;
    default_response_ = other.default_response_;
  }

  static MockBackend from_script(const nlohmann::json& doc) {
    if (!doc.is_object()) {
      throw SchemaError("$", "mock script must be a JSON object");
    }
    MockBackend mock;
    if (doc.contains("fail_first")) {
      if (!doc["fail_first"].is_number_integer()) {
        throw SchemaError("fail_first", "must be an integer");
      }
      mock.fail_first_ = doc["fail_first"].get<int>();
    }
    if (doc.contains("default")) {
      if (!doc["default"].is_string()) {
        throw SchemaError("default", "must be a string");
      }
      mock.default_response_ = doc["default"].get<std::string>();
    }
    if (doc.contains("fingerprints")) {
      if (!doc["fingerprints"].is_object()) {
        throw SchemaError("fingerprints", "must be an object");
      }
      for (const auto& [key, value] : doc["fingerprints"].items()) {
        if (!value.is_string()) {
          throw SchemaError("fingerprints." + key, "must be a string");
        }
        mock.fingerprints_[key] = value.get<std::string>();
      }
    }
    if (doc.contains("rules")) {
      if (!doc["rules"].is_array()) {
        throw SchemaError("rules", "must be an array");
      }
      const auto& rules = doc["rules"];
      for (std::size_t i = 0; i < rules.size(); ++i) {
        mock.rules_.push_back(
            parse_rule(rules[i], "rules[" + std::to_string(i) + "]"));
      }
    }
    return mock;
  }

  static MockBackend from_script_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FileError(path.string(), "cannot open mock script");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError(path.string(), e.what());
    }
    return from_script(doc);
  }

  void enqueue_response(std::string text) {
    std::lock_guard<std::mutex> lock(mu_);
    queue_.push_back(Scripted{std::move(text), false});
  }

  void enqueue_transport_failure(std::string what = "scripted failure") {
    std::lock_guard<std::mutex> lock(mu_);
    queue_.push_back(Scripted{std::move(what), true});
  }

  void set_default_response(std::string text) {
    std::lock_guard<std::mutex> lock(mu_);
    default_response_ = std::move(text);
  }

  std::string complete(const LlmRequest& request) override {
    std::lock_guard<std::mutex> lock(mu_);
    const std::string& prompt = request.user_content();
    ++calls_;
    log_.push_back(prompt);

    if (!queue_.empty()) {
      Scripted next = std::move(queue_.front());
      queue_.pop_front();
      if (next.is_failure) throw TransportError(next.text);
      return next.text;
    }
    if (fail_first_ > 0) {
      --fail_first_;
      throw TransportError("mock: scripted transport failure");
    }
    if (auto it = fingerprints_.find(fnv1a64_hex(prompt));
        it != fingerprints_.end()) {
      return it->second;
    }

    auto word = extract(prompt, R"re(Target word: "((?:[^"\\]|\\.)*)")re");
    if (!word) word = extract(prompt, R"re(^Word: "((?:[^"\\]|\\.)*)")re");
    auto sentence = extract(prompt, R"re(Sentence: "((?:[^"\\]|\\.)*)")re");
    if (!sentence) {
      sentence = extract_last(prompt, R"re(Input: "((?:[^"\\]|\\.)*)")re");
    }

    for (const auto& rule : rules_) {
      if (rule.word) {
        if (!word) continue;
        auto lhs = Word::parse(*rule.word);
        auto rhs = Word::parse(*word);
        if (!lhs || !rhs || !(*lhs == *rhs)) continue;
      }
      if (rule.sentence) {
        if (!sentence || *sentence != *rule.sentence) continue;
      }
      if (rule.fail) throw TransportError("mock: scripted failure by rule");
      if (rule.case_id) return "Case " + std::to_string(*rule.case_id);
      if (rule.phonemes) return "Phonemes: " + *rule.phonemes;
      if (rule.response) return *rule.response;
    }

    if (default_response_) return *default_response_;
    throw TransportError("mock: no scripted response for this request");
  }

  std::string name() const override { return "mock"; }

  int call_count() const {
    std::lock_guard<std::mutex> lock(mu_);
    return calls_;
  }

  std::vector<std::string> prompts() const {
    std::lock_guard<std::mutex> lock(mu_);
    return log_;
  }

 private:
  struct Scripted {
    std::string text;
    bool is_failure = false;
  };

  struct Rule {
    std::optional<std::string> word;
    std::optional<std::string> sentence;
    std::optional<int> case_id;
    std::optional<std::string> phonemes;
    std::optional<std::string> response;
    bool fail = false;
  };

  static Rule parse_rule(const nlohmann::json& node, const std::string& path) {
    if (!node.is_object()) throw SchemaError(path, "rule must be an object");
    Rule rule;
    if (node.contains("word")) rule.word = str_field(node, "word", path);
    if (node.contains("sentence")) {
      rule.sentence = str_field(node, "sentence", path);
    }
    if (node.contains("case")) {
      if (!node["case"].is_number_integer()) {
        throw SchemaError(path + ".case", "must be an integer");
      }
      rule.case_id = node["case"].get<int>();
    }
    if (node.contains("phonemes")) {
      rule.phonemes = str_field(node, "phonemes", path);
    }
    if (node.contains("response")) {
      rule.response = str_field(node, "response", path);
    }
    if (node.contains("fail")) {
      if (!node["fail"].is_boolean()) {
        throw SchemaError(path + ".fail", "must be a boolean");
      }
      rule.fail = node["fail"].get<bool>();
    }
    if (!rule.fail && !rule.case_id && !rule.phonemes && !rule.response) {
      throw SchemaError(path,
                        "rule needs one of: case, phonemes, response, fail");
    }
    return rule;
  }

  static std::string str_field(const nlohmann::json& node, const char* key,
                               const std::string& path) {
    if (!node[key].is_string()) {
      throw SchemaError(path + "." + key, "must be a string");
    }
    return node[key].get<std::string>();
  }

  static std::optional<std::string> extract(const std::string& text,
                                            const char* pattern) {
    std::regex re(pattern, std::regex::multiline);
    std::smatch match;
    if (std::regex_search(text, match, re)) {
      return unescape_quoted(match[1].str());
    }
    return std::nullopt;
  }

  static std::optional<std::string> extract_last(const std::string& text,
                                                 const char* pattern) {
    std::regex re(pattern);
    std::optional<std::string> last;
    auto begin = std::sregex_iterator(text.begin(), text.end(), re);
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
      last = unescape_quoted((*it)[1].str());
    }
    return last;
  }

  mutable std::mutex mu_;
  std::deque<Scripted> queue_;
  int fail_first_ = 0;
  std::unordered_map<std::string, std::string> fingerprints_;
  std::vector<Rule> rules_;
  std::optional<std::string> default_response_;
  std::vector<std::string> log_;
  int calls_ = 0;
};

}  // namespace g2p

#endif  // G2P_MOCK_BACKEND_HPP_
