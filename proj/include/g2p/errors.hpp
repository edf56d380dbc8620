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

#ifndef G2P_ERRORS_HPP_
#define G2P_ERRORS_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace g2p {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A token is not one of the 39 stress-free ARPAbet symbols after stress
// stripping. `position` is the zero-based token index within its sequence;
// `line` is set when the token came from a line-oriented file.
class UnknownPhoneme : public Error {
 public:
  UnknownPhoneme(std::string token, std::size_t position,
                 std::optional<int> line = std::nullopt)
      : Error(make_what(token, position, line)),
        token_(std::move(token)),
        position_(position),
        line_(line) {}

  const std::string& token() const { return token_; }
  std::size_t position() const { return position_; }
  std::optional<int> line() const { return line_; }

 private:
  static std::string make_what(const std::string& token, std::size_t position,
                               std::optional<int> line) {
    std::string msg =
        "unknown phoneme '" + token + "' at token " + std::to_string(position);
    if (line) msg += " (line " + std::to_string(*line) + ")";
    return msg;
  }

  std::string token_;
  std::size_t position_;
  std::optional<int> line_;
};

// A dictionary line could not be split into a word and phonemes.
class MalformedLine : public Error {
 public:
  MalformedLine(int line, const std::string& detail)
      : Error("malformed line " + std::to_string(line) + ": " + detail),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// A structured file (JSON, JSONL) does not match its schema. `path` points
// at the offending element, e.g. "[3].cases[1].phonemes".
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& detail)
      : Error("schema error at " + path + ": " + detail),
        path_(std::move(path)) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class DuplicateWord : public Error {
 public:
  explicit DuplicateWord(std::string word)
      : Error("duplicate entry for word '" + word + "'"),
        word_(std::move(word)) {}

  const std::string& word() const { return word_; }

 private:
  std::string word_;
};

class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(const std::string& what) : Error(what) {}
};

// --- LLM bridge ---

// The backend could not be reached or answered with a transport-level
// failure (connection error, timeout, non-2xx status). Retryable.
class TransportError : public Error {
 public:
  explicit TransportError(const std::string& what) : Error(what) {}
};

// The backend answered but the envelope was not a valid chat completion.
// Retryable.
class BadResponse : public Error {
 public:
  explicit BadResponse(const std::string& what) : Error(what) {}
};

// Model text did not contain the answer in the declared format. Retryable.
class UnparseableResponse : public Error {
 public:
  explicit UnparseableResponse(const std::string& what) : Error(what) {}
};

// A case identifier was parsed but does not address any case of the
// queried homograph entry. Retryable.
class OutOfRange : public Error {
 public:
  OutOfRange(int value, std::size_t case_count)
      : Error("case identifier " + std::to_string(value) +
              " out of range for an entry with " + std::to_string(case_count) +
              " cases"),
        value_(value),
        case_count_(case_count) {}

  int value() const { return value_; }
  std::size_t case_count() const { return case_count_; }

 private:
  int value_;
  std::size_t case_count_;
};

// A rendered prompt would exceed the configured token budget. Inputs are
// never silently truncated.
class PromptTooLong : public Error {
 public:
  PromptTooLong(std::size_t estimated_tokens, std::size_t budget)
      : Error("rendered prompt is about " + std::to_string(estimated_tokens) +
              " tokens, over the budget of " + std::to_string(budget)),
        estimated_tokens_(estimated_tokens),
        budget_(budget) {}

  std::size_t estimated_tokens() const { return estimated_tokens_; }
  std::size_t budget() const { return budget_; }

 private:
  std::size_t estimated_tokens_;
  std::size_t budget_;
};

class TemplateError : public Error {
 public:
  explicit TemplateError(const std::string& what) : Error(what) {}
};

// All attempts against a backend failed; carries the final failure.
class BackendExhausted : public Error {
 public:
  BackendExhausted(int attempts, std::string last_error)
      : Error("backend exhausted after " + std::to_string(attempts) +
              " attempt(s); last error: " + last_error),
        attempts_(attempts),
        last_error_(std::move(last_error)) {}

  int attempts() const { return attempts_; }
  const std::string& last_error() const { return last_error_; }

 private:
  int attempts_;
  std::string last_error_;
};

// --- evaluation ---

class EmptyReference : public Error {
 public:
  explicit EmptyReference(std::string id)
      : Error("item '" + id + "' has an empty reference"), id_(std::move(id)) {}

  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

class WeightMismatch : public Error {
 public:
  explicit WeightMismatch(const std::string& what) : Error(what) {}
};

// A homograph item cannot be judged because the hypothesis carries no
// per-word alignment for the homograph word.
class MissingWordAlignment : public Error {
 public:
  explicit MissingWordAlignment(std::string id)
      : Error("item '" + id +
              "' has no word-level alignment for its homograph"),
        id_(std::move(id)) {}

  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

class ItemMismatch : public Error {
 public:
  explicit ItemMismatch(const std::string& what) : Error(what) {}
};

// --- tooling ---

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

class FileError : public Error {
 public:
  FileError(std::string path, const std::string& detail)
      : Error(path + ": " + detail), path_(std::move(path)) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace g2p

#endif  // G2P_ERRORS_HPP_
