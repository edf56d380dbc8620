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

#ifndef G2P_CONFIG_HPP_
#define G2P_CONFIG_HPP_

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "g2p/errors.hpp"
#include "g2p/lexicon.hpp"
#include "g2p/pipeline.hpp"

namespace g2p {

using ConfigValue = std::variant<std::string, std::int64_t, double, bool>;

// TOML-style key/value sections:
//
//   mode = "ickr"
//   [backend]
//   kind = "mock"          # comments run to end of line
//   max_attempts = 3
//   temperature = 0.0
//   [dictionary.sources.cmu]
//   path = "data/cmudict.txt"
//
// Keys flatten to "section.key". Strings are double-quoted with the usual
// escapes; bare values must be integers, floats or booleans.
class ConfigFile {
 public:
  ConfigFile() = default;

  static ConfigFile parse(std::istream& in,
                          const std::string& name = "<config>") {
    ConfigFile cfg;
    std::string line;
    std::string prefix;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::string_view view = trim(line);
      if (view.empty() || view.front() == '#') continue;

      if (view.front() == '[') {
        std::size_t close = view.find(']');
        if (close == std::string_view::npos) {
          throw ConfigError(name + ":" + std::to_string(lineno) +
                            ": unterminated section header");
        }
        std::string_view rest = trim(view.substr(close + 1));
        if (!rest.empty() && rest.front() != '#') {
          throw ConfigError(name + ":" + std::to_string(lineno) +
                            ": unexpected text after section header");
        }
        std::string_view section = trim(view.substr(1, close - 1));
        if (section.empty() || !valid_key(section, /*allow_dots=*/true)) {
          throw ConfigError(name + ":" + std::to_string(lineno) +
                            ": invalid section name");
        }
        prefix = std::string(section) + ".";
        continue;
      }

      std::size_t eq = view.find('=');
      if (eq == std::string_view::npos) {
        throw ConfigError(name + ":" + std::to_string(lineno) +
                          ": expected 'key = value'");
      }
      std::string_view key = trim(view.substr(0, eq));
      if (key.empty() || !valid_key(key, /*allow_dots=*/false)) {
        throw ConfigError(name + ":" + std::to_string(lineno) +
                          ": invalid key");
      }
      ConfigValue value =
          parse_value(trim(view.substr(eq + 1)), name, lineno);
      cfg.values_[prefix + std::string(key)] = std::move(value);
    }
    return cfg;
  }

  static ConfigFile load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FileError(path.string(), "cannot open config file");
    return parse(in, path.string());
  }

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::string get_string(const std::string& key) const {
    const auto* v = find(key);
    if (!v) throw ConfigError("missing config key '" + key + "'");
    if (const auto* s = std::get_if<std::string>(v)) return *s;
    throw ConfigError("config key '" + key + "' must be a string");
  }

  std::string get_string_or(const std::string& key,
                            const std::string& fallback) const {
    return has(key) ? get_string(key) : fallback;
  }

  std::int64_t get_int_or(const std::string& key, std::int64_t fallback) const {
    const auto* v = find(key);
    if (!v) return fallback;
    if (const auto* i = std::get_if<std::int64_t>(v)) return *i;
    throw ConfigError("config key '" + key + "' must be an integer");
  }

  double get_double_or(const std::string& key, double fallback) const {
    const auto* v = find(key);
    if (!v) return fallback;
    if (const auto* d = std::get_if<double>(v)) return *d;
    if (const auto* i = std::get_if<std::int64_t>(v)) {
      return static_cast<double>(*i);
    }
    throw ConfigError("config key '" + key + "' must be a number");
  }

  bool get_bool_or(const std::string& key, bool fallback) const {
    const auto* v = find(key);
    if (!v) return fallback;
    if (const auto* b = std::get_if<bool>(v)) return *b;
    throw ConfigError("config key '" + key + "' must be a boolean");
  }

  void set_string(const std::string& key, std::string value) {
    values_[key] = std::move(value);
  }

  // Keys that start with `prefix`, in sorted order.
  std::vector<std::string> keys_with_prefix(const std::string& prefix) const {
    std::vector<std::string> out;
    for (const auto& [key, _] : values_) {
      if (key.rfind(prefix, 0) == 0) out.push_back(key);
    }
    return out;
  }

 private:
  const ConfigValue* find(const std::string& key) const {
    auto it = values_.find(key);
    return it == values_.end() ? nullptr : &it->second;
  }

  static std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
      s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
      s.remove_suffix(1);
    return s;
  }

  static bool valid_key(std::string_view key, bool allow_dots) {
    for (char c : key) {
      bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
                c == '-' || (allow_dots && c == '.');
      if (!ok) return false;
    }
    return true;
  }

  static ConfigValue parse_value(std::string_view raw, const std::string& name,
                                 int lineno) {
    auto fail = [&](const std::string& detail) -> ConfigError {
      return ConfigError(name + ":" + std::to_string(lineno) + ": " + detail);
    };
    if (raw.empty()) throw fail("missing value");

    if (raw.front() == '"') {
      std::string out;
      std::size_t i = 1;
      for (; i < raw.size(); ++i) {
        char c = raw[i];
        if (c == '\\') {
          if (i + 1 >= raw.size()) throw fail("dangling escape in string");
          char next = raw[++i];
          switch (next) {
            case 'n':
              out += '\n';
              break;
            case 't':
              out += '\t';
              break;
            case 'r':
              out += '\r';
              break;
            case '"':
              out += '"';
              break;
            case '\\':
              out += '\\';
              break;
            default:
              throw fail(std::string("unknown escape '\\") + next + "'");
          }
        } else if (c == '"') {
          break;
        } else {
          out += c;
        }
      }
      if (i >= raw.size()) throw fail("unterminated string");
      std::string_view rest = trim(raw.substr(i + 1));
      if (!rest.empty() && rest.front() != '#') {
        throw fail("unexpected text after string value");
      }
      return out;
    }

    // Bare value: strip a trailing comment, then try bool / int / float.
    std::size_t hash = raw.find('#');
    if (hash != std::string_view::npos) raw = trim(raw.substr(0, hash));
    if (raw.empty()) throw fail("missing value");
    std::string token(raw);

    if (token == "true") return true;
    if (token == "false") return false;

    bool integral = true;
    for (std::size_t i = 0; i < token.size(); ++i) {
      char c = token[i];
      if (i == 0 && (c == '+' || c == '-')) continue;
      if (!std::isdigit(static_cast<unsigned char>(c))) integral = false;
    }
    if (integral && token != "+" && token != "-") {
      try {
        return static_cast<std::int64_t>(std::stoll(token));
      } catch (const std::exception&) {
        throw fail("integer out of range");
      }
    }

    std::size_t consumed = 0;
    try {
      double d = std::stod(token, &consumed);
      if (consumed == token.size()) return d;
    } catch (const std::exception&) {
    }
    throw fail("invalid value '" + token + "' (strings must be quoted)");
  }

  std::map<std::string, ConfigValue> values_;
};

// --- run configuration ---

struct SourceSpec {
  std::string id;
  MergePolicy policy;
};

// Ordered dictionary build recipe, written the way the experiment grids
// name them: "cmu+librig2p_omit", "librig2p_freq+cmu", ... A plain token is
// a source reduced by cmu_single; the _omit/_freq suffixes select the other
// policies for the prefix source id. Order sets merge precedence.
struct DictionarySpec {
  std::vector<SourceSpec> sources;

  static DictionarySpec parse(std::string_view text) {
    DictionarySpec spec;
    std::set<std::string> seen;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t plus = text.find('+', pos);
      if (plus == std::string_view::npos) plus = text.size();
      std::string token(text.substr(pos, plus - pos));
      if (token.empty()) {
        throw ConfigError("dictionary spec has an empty source token");
      }
      SourceSpec source;
      auto ends_with = [&](std::string_view suffix) {
        return token.size() > suffix.size() &&
               token.compare(token.size() - suffix.size(), suffix.size(),
                             suffix) == 0;
      };
      if (ends_with("_omit")) {
        source.id = token.substr(0, token.size() - 5);
        source.policy = MergePolicy::kLibrig2pOmit;
      } else if (ends_with("_freq")) {
        source.id = token.substr(0, token.size() - 5);
        source.policy = MergePolicy::kLibrig2pFreq;
      } else {
        source.id = token;
        source.policy = MergePolicy::kCmuSingle;
      }
      if (!seen.insert(source.id).second) {
        throw ConfigError("dictionary spec names source '" + source.id +
                          "' twice");
      }
      spec.sources.push_back(std::move(source));
      pos = plus + 1;
      if (plus == text.size()) break;
    }
    if (spec.sources.empty()) {
      throw ConfigError("dictionary spec must name at least one source");
    }
    return spec;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < sources.size(); ++i) {
      if (i) out += '+';
      switch (sources[i].policy) {
        case MergePolicy::kCmuSingle:
          out += sources[i].id;
          break;
        case MergePolicy::kLibrig2pOmit:
          out += sources[i].id + "_omit";
          break;
        case MergePolicy::kLibrig2pFreq:
          out += sources[i].id + "_freq";
          break;
      }
    }
    return out;
  }
};

struct SourceFile {
  std::string path;
  std::string format;  // cmu | words-jsonl | sentences-jsonl
};

struct BackendSettings {
  std::string kind = "mock";  // mock | http
  std::string script_path;    // mock
  std::string base_url;       // http
  std::string request_path = "/v1/chat/completions";
  std::string api_key_env = "G2P_API_KEY";
  std::string model_id = "gpt-4-0613";
  double temperature = 0.0;
  int max_output_tokens = 4096;
  int max_attempts = 3;
  int concurrency = 1;
  int timeout_sec = 60;
};

enum class RunMode { kIckr, kOneShot };

struct RunConfig {
  RunMode mode = RunMode::kIckr;
  FailPolicy fail_policy = FailPolicy::kSkip;

  DictionarySpec dictionary{{{"cmu", MergePolicy::kCmuSingle}}};
  std::map<std::string, SourceFile> sources;
  std::string dict_dir = "dict";
  std::string homographs_path;

  BackendSettings backend;
  std::string prompts_dir;
  std::int64_t prompt_token_budget = 4096;

  std::string corpus_path;
  std::string hypotheses_out = "hypotheses.jsonl";

  std::string references_path;
  std::string hypotheses_path;
  std::string report_out = "report.json";
  std::string diff_out;
  bool score_homographs = true;
  std::optional<std::map<std::string, double>> eval_weights;

  static RunConfig from_config(const ConfigFile& cfg) {
    RunConfig run;

    std::string mode = cfg.get_string_or("mode", "ickr");
    if (mode == "ickr") {
      run.mode = RunMode::kIckr;
    } else if (mode == "one_shot") {
      run.mode = RunMode::kOneShot;
    } else {
      throw ConfigError("mode must be 'ickr' or 'one_shot', got '" + mode +
                        "'");
    }

    std::string policy = cfg.get_string_or("fail_policy", "skip");
    if (policy == "skip") {
      run.fail_policy = FailPolicy::kSkip;
    } else if (policy == "abort") {
      run.fail_policy = FailPolicy::kAbort;
    } else {
      throw ConfigError("fail_policy must be 'skip' or 'abort', got '" +
                        policy + "'");
    }

    if (cfg.has("dictionary.spec")) {
      run.dictionary = DictionarySpec::parse(cfg.get_string("dictionary.spec"));
    }
    run.dict_dir = cfg.get_string_or("dictionary.dir", run.dict_dir);

    const std::string sources_prefix = "dictionary.sources.";
    for (const auto& key : cfg.keys_with_prefix(sources_prefix)) {
      std::string rest = key.substr(sources_prefix.size());
      std::size_t dot = rest.find('.');
      if (dot == std::string::npos) {
        throw ConfigError("source entries belong in [dictionary.sources.<id>]");
      }
      std::string id = rest.substr(0, dot);
      std::string field = rest.substr(dot + 1);
      auto& source = run.sources[id];
      if (field == "path") {
        source.path = cfg.get_string(key);
      } else if (field == "format") {
        source.format = cfg.get_string(key);
      } else {
        throw ConfigError("unknown source field '" + field + "' for '" + id +
                          "'");
      }
    }
    for (const auto& [id, source] : run.sources) {
      if (source.path.empty()) {
        throw ConfigError("source '" + id + "' needs a path");
      }
      if (source.format != "cmu" && source.format != "words-jsonl" &&
          source.format != "sentences-jsonl") {
        throw ConfigError("source '" + id +
                          "' format must be cmu, words-jsonl or "
                          "sentences-jsonl");
      }
    }

    run.homographs_path = cfg.get_string_or("homographs.path", "");

    run.backend.kind = cfg.get_string_or("backend.kind", "mock");
    if (run.backend.kind != "mock" && run.backend.kind != "http") {
      throw ConfigError("backend.kind must be 'mock' or 'http'");
    }
    run.backend.script_path = cfg.get_string_or("backend.script", "");
    run.backend.base_url = cfg.get_string_or("backend.base_url", "");
    run.backend.request_path =
        cfg.get_string_or("backend.request_path", run.backend.request_path);
    run.backend.api_key_env =
        cfg.get_string_or("backend.api_key_env", run.backend.api_key_env);
    run.backend.model_id =
        cfg.get_string_or("backend.model", run.backend.model_id);
    run.backend.temperature =
        cfg.get_double_or("backend.temperature", run.backend.temperature);
    run.backend.max_output_tokens = static_cast<int>(cfg.get_int_or(
        "backend.max_output_tokens", run.backend.max_output_tokens));
    run.backend.max_attempts = static_cast<int>(
        cfg.get_int_or("backend.max_attempts", run.backend.max_attempts));
    run.backend.concurrency = static_cast<int>(
        cfg.get_int_or("backend.concurrency", run.backend.concurrency));
    run.backend.timeout_sec = static_cast<int>(
        cfg.get_int_or("backend.timeout_sec", run.backend.timeout_sec));
    if (run.backend.max_attempts < 1) {
      throw ConfigError("backend.max_attempts must be at least 1");
    }
    if (run.backend.concurrency < 1) {
      throw ConfigError("backend.concurrency must be at least 1");
    }

    run.prompts_dir = cfg.get_string_or("prompts.dir", "");
    run.prompt_token_budget =
        cfg.get_int_or("prompts.token_budget", run.prompt_token_budget);
    if (run.prompt_token_budget < 1) {
      throw ConfigError("prompts.token_budget must be positive");
    }

    run.corpus_path = cfg.get_string_or("convert.corpus", "");
    run.hypotheses_out = cfg.get_string_or("convert.out", run.hypotheses_out);

    run.references_path = cfg.get_string_or("evaluate.references", "");
    run.hypotheses_path =
        cfg.get_string_or("evaluate.hypotheses", run.hypotheses_out);
    run.report_out = cfg.get_string_or("evaluate.report", run.report_out);
    run.diff_out = cfg.get_string_or("evaluate.diff", "");
    run.score_homographs = cfg.get_bool_or("evaluate.homographs", true);

    const std::string weights_prefix = "evaluate.weights.";
    auto weight_keys = cfg.keys_with_prefix(weights_prefix);
    if (!weight_keys.empty()) {
      std::map<std::string, double> weights;
      for (const auto& key : weight_keys) {
        weights[key.substr(weights_prefix.size())] = cfg.get_double_or(key, 0);
      }
      run.eval_weights = std::move(weights);
    }
    return run;
  }

  void validate_backend() const {
    if (backend.kind == "mock") {
      if (backend.script_path.empty()) {
        throw ConfigError("mock backend requires backend.script");
      }
    } else {
      if (backend.base_url.empty()) {
        throw ConfigError("http backend requires backend.base_url");
      }
      if (backend.api_key_env.empty()) {
        throw ConfigError("http backend requires backend.api_key_env");
      }
    }
  }

  void validate_for_build_dict() const {
    for (const auto& source : dictionary.sources) {
      if (!sources.count(source.id)) {
        throw ConfigError("dictionary spec uses source '" + source.id +
                          "' but [dictionary.sources." + source.id +
                          "] is not configured");
      }
    }
    if (homographs_path.empty()) {
      throw ConfigError("build-dict requires homographs.path");
    }
  }

  void validate_for_convert() const {
    if (corpus_path.empty()) {
      throw ConfigError("convert requires convert.corpus");
    }
    validate_backend();
  }

  void validate_for_evaluate() const {
    if (references_path.empty()) {
      throw ConfigError("evaluate requires evaluate.references");
    }
    if (hypotheses_path.empty()) {
      throw ConfigError("evaluate requires evaluate.hypotheses");
    }
  }
};

}  // namespace g2p

#endif  // G2P_CONFIG_HPP_
