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

#ifndef G2P_TEXT_HPP_
#define G2P_TEXT_HPP_

#include <cctype>
#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace g2p {

namespace detail {

inline bool is_ascii_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

inline bool is_ascii_punct(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return u < 128 && std::ispunct(u) != 0;
}

}  // namespace detail

// A normalized grapheme word: uppercased, leading/trailing ASCII punctuation
// stripped, internal apostrophes and hyphens kept. Two words with the same
// surface compare equal regardless of source-text casing.
class Word {
 public:
  // Normalizes a raw token. Returns nullopt when nothing is left (all
  // punctuation, empty input) or when the input contains whitespace.
  static std::optional<Word> parse(std::string_view raw) {
    for (char c : raw) {
      if (detail::is_ascii_space(c)) return std::nullopt;
    }
    std::size_t begin = 0;
    std::size_t end = raw.size();
    while (begin < end && detail::is_ascii_punct(raw[begin])) ++begin;
    while (end > begin && detail::is_ascii_punct(raw[end - 1])) --end;
    if (begin == end) return std::nullopt;

    std::string surface;
    surface.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) {
      surface.push_back(
          static_cast<char>(std::toupper(static_cast<unsigned char>(raw[i]))));
    }
    return Word(std::move(surface));
  }

  const std::string& str() const { return surface_; }

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word&, const Word&) = default;

 private:
  explicit Word(std::string surface) : surface_(std::move(surface)) {}
  std::string surface_;
};

// Splits a sentence into normalized words: whitespace-separated tokens with
// edge punctuation removed, empty leftovers dropped, order preserved.
inline std::vector<Word> tokenize(std::string_view sentence) {
  std::vector<Word> words;
  std::size_t i = 0;
  while (i < sentence.size()) {
    while (i < sentence.size() && detail::is_ascii_space(sentence[i])) ++i;
    std::size_t start = i;
    while (i < sentence.size() && !detail::is_ascii_space(sentence[i])) ++i;
    if (i > start) {
      if (auto word = Word::parse(sentence.substr(start, i - start))) {
        words.push_back(std::move(*word));
      }
    }
  }
  return words;
}

}  // namespace g2p

template <>
struct std::hash<g2p::Word> {
  std::size_t operator()(const g2p::Word& w) const noexcept {
    return std::hash<std::string>{}(w.str());
  }
};

#endif  // G2P_TEXT_HPP_
