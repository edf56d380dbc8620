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

#ifndef G2P_PROMPTS_HPP_
#define G2P_PROMPTS_HPP_

#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "g2p/errors.hpp"
#include "g2p/homograph.hpp"
#include "g2p/llm.hpp"
#include "g2p/text.hpp"

namespace g2p {

enum class PromptKind { kOneShot, kCaseMatching, kOovGeneration };

inline std::string_view to_string(PromptKind kind) {
  switch (kind) {
    case PromptKind::kOneShot:
      return "one_shot";
    case PromptKind::kCaseMatching:
      return "case_matching";
    case PromptKind::kOovGeneration:
      return "oov";
  }
  return "unknown";
}

namespace detail {

// Whole-sentence conversion with one worked example and a declared answer
// format.
inline constexpr std::string_view kDefaultOneShotTemplate =
    R"(You are a linguist converting English text into ARPAbet phonemes.
Convert the input sentence into its phoneme sequence.

Rules:
- Use only the 39 stress-free ARPAbet symbols: AA AE AH AO AW AY B CH D DH EH ER EY F G HH IH IY JH K L M N NG OW OY P R S SH T TH UH UW V W Y Z ZH.
- Do not output stress digits.
- Keep the words in their original order and separate phonemes with single spaces.
- Answer with exactly one line in the form: Phonemes: <phoneme sequence>

Example:
Input: "The cat sat"
Phonemes: DH AH K AE T S AE T

Input: "{{sentence}}"
)";

// Homograph disambiguation: the model picks a dictionary case by its index;
// the pronunciation is then retrieved from the dictionary, never generated.
inline constexpr std::string_view kDefaultCaseMatchingTemplate =
    R"(You are a linguist disambiguating an English homograph.
The target word has multiple dictionary cases listed below. Read the
sentence and decide which case matches how the word is used there.

Sentence: "{{sentence}}"
Target word: "{{word}}"{{occurrence_note}}

Cases:
{{cases}}
Answer with exactly one line in the form: Case <number>
)";

// Out-of-vocabulary generation: the word's phonemes, in sentence context.
inline constexpr std::string_view kDefaultOovTemplate =
    R"(You are a linguist converting an English word into ARPAbet phonemes.
The word below is not in our dictionary. Generate its phoneme sequence as
pronounced in the given sentence.

Sentence: "{{sentence}}"
Word: "{{word}}"

Rules:
- Use only the 39 stress-free ARPAbet symbols: AA AE AH AO AW AY B CH D DH EH ER EY F G HH IH IY JH K L M N NG OW OY P R S SH T TH UH UW V W Y Z ZH.
- Do not output stress digits.
- Answer with exactly one line in the form: Phonemes: <phoneme sequence>
)";

// Single-pass placeholder substitution. Placeholders are located in the
// template only; substituted values are never rescanned, so prompt inputs
// cannot inject placeholders.
inline std::string render_template(
    std::string_view tmpl, const std::map<std::string, std::string>& vars) {
  std::string out;
  out.reserve(tmpl.size() + 64);
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    std::size_t open = tmpl.find("{{", pos);
    if (open == std::string_view::npos) {
      out.append(tmpl.substr(pos));
      break;
    }
    out.append(tmpl.substr(pos, open - pos));
    std::size_t close = tmpl.find("}}", open + 2);
    if (close == std::string_view::npos) {
      throw TemplateError("unterminated placeholder near offset " +
                          std::to_string(open));
    }
    std::string name(tmpl.substr(open + 2, close - open - 2));
    auto it = vars.find(name);
    if (it == vars.end()) {
      throw TemplateError("unknown placeholder '{{" + name + "}}'");
    }
    out.append(it->second);
    pos = close + 2;
  }
  return out;
}

inline std::set<std::string> placeholder_names(std::string_view tmpl) {
  std::set<std::string> names;
  std::size_t pos = 0;
  while ((pos = tmpl.find("{{", pos)) != std::string_view::npos) {
    std::size_t close = tmpl.find("}}", pos + 2);
    if (close == std::string_view::npos) {
      throw TemplateError("unterminated placeholder near offset " +
                          std::to_string(pos));
    }
    names.insert(std::string(tmpl.substr(pos + 2, close - pos - 2)));
    pos = close + 2;
  }
  return names;
}

inline const std::set<std::string>& required_placeholders(PromptKind kind) {
  static const std::set<std::string> one_shot = {"sentence"};
  static const std::set<std::string> case_matching = {"sentence", "word",
                                                      "cases",
                                                      "occurrence_note"};
  static const std::set<std::string> oov = {"sentence", "word"};
  switch (kind) {
    case PromptKind::kOneShot:
      return one_shot;
    case PromptKind::kCaseMatching:
      return case_matching;
    case PromptKind::kOovGeneration:
      return oov;
  }
  return one_shot;
}

// Keeps free-text dictionary fields from breaking the line structure of a
// rendered prompt.
inline std::string one_line(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c == '\n' || c == '\r' || c == '\t') c = ' ';
  }
  return out;
}

}  // namespace detail

struct RequestDefaults {
  std::string model_id;
  double temperature = 0.0;
  int max_output_tokens = 4096;
};

// Holds the three prompt templates and renders them into requests. The
// templates ship as editable text assets; the built-in defaults are the
// same text, so the library works without any asset directory.
class PromptLibrary {
 public:
  PromptLibrary() {
    set_template(PromptKind::kOneShot,
                 std::string(detail::kDefaultOneShotTemplate));
    set_template(PromptKind::kCaseMatching,
                 std::string(detail::kDefaultCaseMatchingTemplate));
    set_template(PromptKind::kOovGeneration,
                 std::string(detail::kDefaultOovTemplate));
  }

  static PromptLibrary from_dir(const std::filesystem::path& dir) {
    PromptLibrary lib;
    for (auto kind : {PromptKind::kOneShot, PromptKind::kCaseMatching,
                      PromptKind::kOovGeneration}) {
      auto path = dir / (std::string(to_string(kind)) + ".txt");
      std::ifstream in(path, std::ios::binary);
      if (!in) throw FileError(path.string(), "cannot open prompt template");
      std::ostringstream ss;
      ss << in.rdbuf();
      lib.set_template(kind, ss.str());
    }
    return lib;
  }

  // Validates that the template names exactly the placeholders its kind
  // needs, so an edited asset fails at load rather than mid-run.
  void set_template(PromptKind kind, std::string text) {
    auto found = detail::placeholder_names(text);
    const auto& required = detail::required_placeholders(kind);
    if (found != required) {
      std::string msg = "template '" + std::string(to_string(kind)) +
                        "' must use exactly these placeholders:";
      for (const auto& name : required) msg += " {{" + name + "}}";
      throw TemplateError(msg);
    }
    templates_[kind] = std::move(text);
  }

  const std::string& template_text(PromptKind kind) const {
    return templates_.at(kind);
  }

  LlmRequest render_one_shot(std::string_view sentence) const {
    std::string content =
        detail::render_template(template_text(PromptKind::kOneShot),
                                {{"sentence", escape_quoted(sentence)}});
    return finish(std::move(content));
  }

  LlmRequest render_case_matching(const Word& word, std::string_view sentence,
                                  const HomographEntry& entry,
                                  std::size_t occurrence = 1,
                                  std::size_t occurrence_total = 1) const {
    if (occurrence < 1 || occurrence > std::max<std::size_t>(occurrence_total, 1)) {
      throw InvariantViolation("occurrence index out of range");
    }
    std::string note;
    if (occurrence_total > 1) {
      note = " (occurrence " + std::to_string(occurrence) + " of " +
             std::to_string(occurrence_total) + " in the sentence)";
    }

    std::string cases;
    const auto& all = entry.cases();
    for (std::size_t i = 0; i < all.size(); ++i) {
      cases += "Case " + std::to_string(i + 1) + ":\n";
      cases += "  genre: " + detail::one_line(all[i].genre) + "\n";
      cases += "  definition: " + detail::one_line(all[i].definition) + "\n";
      cases += "  examples:\n";
      for (const auto& example : all[i].examples) {
        cases += "    - " + detail::one_line(example) + "\n";
      }
    }

    std::string content = detail::render_template(
        template_text(PromptKind::kCaseMatching),
        {{"sentence", escape_quoted(sentence)},
         {"word", escape_quoted(word.str())},
         {"occurrence_note", note},
         {"cases", cases}});
    return finish(std::move(content));
  }

  LlmRequest render_oov(const Word& word, std::string_view sentence) const {
    std::string content = detail::render_template(
        template_text(PromptKind::kOovGeneration),
        {{"sentence", escape_quoted(sentence)},
         {"word", escape_quoted(word.str())}});
    return finish(std::move(content));
  }

  RequestDefaults defaults;
  std::size_t prompt_token_budget = 4096;

 private:
  // Budget enforcement: an oversized prompt is an error, never a silent
  // truncation.
  LlmRequest finish(std::string content) const {
    std::size_t estimated = estimate_tokens(content);
    if (estimated > prompt_token_budget) {
      throw PromptTooLong(estimated, prompt_token_budget);
    }
    LlmRequest request;
    request.messages.push_back({"user", std::move(content)});
    request.temperature = defaults.temperature;
    request.max_output_tokens = defaults.max_output_tokens;
    request.model_id = defaults.model_id;
    return request;
  }

  std::map<PromptKind, std::string> templates_;
};

}  // namespace g2p

#endif  // G2P_PROMPTS_HPP_
