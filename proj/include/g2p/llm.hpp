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

#ifndef G2P_LLM_HPP_
#define G2P_LLM_HPP_

#include <atomic>
#include <cstdint>
#include <regex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "g2p/errors.hpp"
#include "g2p/homograph.hpp"
#include "g2p/phoneme.hpp"

namespace g2p {

struct LlmMessage {
  std::string role;
  std::string content;
};

// One chat-completion request. The conversion prompts always carry exactly
// one user message and nothing else.
struct LlmRequest {
  std::vector<LlmMessage> messages;
  double temperature = 0.0;
  int max_output_tokens = 4096;
  std::string model_id;

  std::size_t user_message_count() const {
    std::size_t n = 0;
    for (const auto& m : messages) {
      if (m.role == "user") ++n;
    }
    return n;
  }

  const std::string& user_content() const {
    for (const auto& m : messages) {
      if (m.role == "user") return m.content;
    }
    throw Error("request has no user message");
  }
};

// A chat-completion backend. complete() either returns the raw model text
// or throws TransportError / BadResponse; retries live in
// complete_with_retry, not here.
class LlmBackend {
 public:
  virtual ~LlmBackend() = default;
  virtual std::string complete(const LlmRequest& request) = 0;
  virtual std::string name() const = 0;
};

// Wraps any backend and counts calls; used for call accounting in the CLI
// and for the zero-backend-call checks in tests.
class CallCountingBackend final : public LlmBackend {
 public:
  explicit CallCountingBackend(LlmBackend& inner) : inner_(inner) {}

  std::string complete(const LlmRequest& request) override {
    calls_.fetch_add(1, std::memory_order_relaxed);
    return inner_.complete(request);
  }
  std::string name() const override { return inner_.name(); }
  int calls() const { return calls_.load(std::memory_order_relaxed); }

 private:
  LlmBackend& inner_;
  std::atomic<int> calls_{0};
};

// --- helpers shared by prompt rendering and the mock backend ---

// Escapes text for embedding between double quotes in a prompt, so that the
// quoted region stays delimitable whatever the sentence contains.
inline std::string escape_quoted(std::string_view text) {
  std::string out;
  out.reserve(text.size() + 8);
  for (char c : text) {
    switch (c) {
      case '\\':
        out += "\\\\";
        break;
      case '"':
        out += "\\\"";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        out += c;
    }
  }
  return out;
}

inline std::string unescape_quoted(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\\' && i + 1 < text.size()) {
      char next = text[++i];
      switch (next) {
        case 'n':
          out += '\n';
          break;
        case 'r':
          out += '\r';
          break;
        case 't':
          out += '\t';
          break;
        default:
          out += next;
      }
    } else {
      out += text[i];
    }
  }
  return out;
}

// Rough token estimate (about four bytes per token). Only used to enforce
// the prompt budget; precision does not matter, monotonicity does.
inline std::size_t estimate_tokens(std::string_view text) {
  return (text.size() + 3) / 4;
}

// The chosen case of a homograph entry plus the raw model text, retained
// for audit.
struct CaseMatchResult {
  std::size_t case_index = 0;  // zero-based into entry.cases()
  std::string rationale;
};

// Extracts the case identifier from a case-matching answer. Prompts label
// cases "Case 1", "Case 2", ...; the parser scans the whole response and
// takes the last identifier so surrounding prose is tolerated.
inline CaseMatchResult parse_case_match(std::string_view response,
                                        const HomographEntry& entry) {
  static const std::regex pattern(R"([Cc][Aa][Ss][Ee]\s*#?\s*([0-9]+))");

  std::cmatch match;
  const char* search_from = response.data();
  const char* end = response.data() + response.size();
  long long last_id = -1;
  while (std::regex_search(search_from, end, match, pattern)) {
    last_id = std::stoll(match[1].str());
    search_from = match.suffix().first;
  }
  if (last_id < 0) {
    throw UnparseableResponse("no case identifier found in model response");
  }
  if (last_id < 1 ||
      static_cast<std::size_t>(last_id) > entry.cases().size()) {
    throw OutOfRange(static_cast<int>(last_id), entry.cases().size());
  }
  return CaseMatchResult{static_cast<std::size_t>(last_id - 1),
                         std::string(response)};
}

// Extracts the phoneme line from a model response. The prompts declare the
// answer format "Phonemes: <sequence>"; the last such line wins. The
// extracted tokens are stress-stripped and validated.
inline PhonemeSequence parse_phoneme_response(std::string_view response) {
  static const std::regex pattern(R"(^\s*[Pp]honemes\s*:\s*(.*)$)");

  std::optional<std::string> extracted;
  std::size_t pos = 0;
  while (pos <= response.size()) {
    std::size_t eol = response.find('\n', pos);
    if (eol == std::string_view::npos) eol = response.size();
    std::string line(response.substr(pos, eol - pos));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::smatch match;
    if (std::regex_match(line, match, pattern)) {
      extracted = match[1].str();
    }
    pos = eol + 1;
  }
  if (!extracted) {
    throw UnparseableResponse("no 'Phonemes:' line found in model response");
  }
  PhonemeSequence seq = parse_phoneme_string(*extracted);
  if (seq.empty()) {
    throw UnparseableResponse("'Phonemes:' line carries no phonemes");
  }
  return seq;
}

// Issues a request up to max_attempts times. Both transport failures and
// downstream parse failures draw from the same budget; the last error is
// surfaced once it runs out.
template <typename Parser>
auto request_with_retry(LlmBackend& backend, const LlmRequest& request,
                        int max_attempts, Parser&& parse)
    -> decltype(parse(std::string{})) {
  if (max_attempts < 1) throw Error("max_attempts must be at least 1");
  std::string last_error;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    std::string text;
    try {
      text = backend.complete(request);
    } catch (const TransportError& e) {
      last_error = e.what();
      continue;
    } catch (const BadResponse& e) {
      last_error = e.what();
      continue;
    }
    try {
      return parse(std::move(text));
    } catch (const UnparseableResponse& e) {
      last_error = e.what();
    } catch (const OutOfRange& e) {
      last_error = e.what();
    } catch (const UnknownPhoneme& e) {
      last_error = e.what();
    }
  }
  throw BackendExhausted(max_attempts, last_error);
}

inline std::string complete_with_retry(LlmBackend& backend,
                                       const LlmRequest& request,
                                       int max_attempts) {
  return request_with_retry(backend, request, max_attempts,
                            [](std::string text) { return text; });
}

}  // namespace g2p

#endif  // G2P_LLM_HPP_
