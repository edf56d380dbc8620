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

#ifndef G2P_PHONEME_HPP_
#define G2P_PHONEME_HPP_

#include <array>
#include <cctype>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "g2p/errors.hpp"

namespace g2p {

// The 39 stress-free ARPAbet symbols of the CMU pronouncing dictionary.
// Everything downstream speaks this inventory and nothing else.
inline constexpr std::array<std::string_view, 39> kPhonemeInventory = {
    "AA", "AE", "AH", "AO", "AW", "AY", "B",  "CH", "D",  "DH",
    "EH", "ER", "EY", "F",  "G",  "HH", "IH", "IY", "JH", "K",
    "L",  "M",  "N",  "NG", "OW", "OY", "P",  "R",  "S",  "SH",
    "T",  "TH", "UH", "UW", "V",  "W",  "Y",  "Z",  "ZH"};

inline std::optional<std::uint8_t> phoneme_id(std::string_view symbol) {
  static const std::unordered_map<std::string_view, std::uint8_t> index = [] {
    std::unordered_map<std::string_view, std::uint8_t> m;
    m.reserve(kPhonemeInventory.size());
    for (std::uint8_t i = 0; i < kPhonemeInventory.size(); ++i) {
      m.emplace(kPhonemeInventory[i], i);
    }
    return m;
  }();
  auto it = index.find(symbol);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

// One validated phoneme. Construction is only possible through lookup(), so
// a PhonemeToken is always a member of the inventory and never carries a
// stress digit.
class PhonemeToken {
 public:
  static std::optional<PhonemeToken> lookup(std::string_view symbol) {
    auto id = phoneme_id(symbol);
    if (!id) return std::nullopt;
    return PhonemeToken(*id);
  }

  std::string_view symbol() const { return kPhonemeInventory[id_]; }
  std::uint8_t id() const { return id_; }

  friend bool operator==(PhonemeToken, PhonemeToken) = default;

 private:
  explicit constexpr PhonemeToken(std::uint8_t id) : id_(id) {}
  std::uint8_t id_;
};

// Removes a single trailing stress digit (0, 1 or 2). Any other digit stays
// put and will fail inventory validation instead of being dropped.
inline std::string_view strip_stress_suffix(std::string_view token) {
  if (!token.empty()) {
    char c = token.back();
    if (c == '0' || c == '1' || c == '2') token.remove_suffix(1);
  }
  return token;
}

// An ordered, possibly empty list of validated phonemes. Serializes as
// tokens joined by single spaces and round-trips losslessly through parse().
class PhonemeSequence {
 public:
  PhonemeSequence() = default;
  explicit PhonemeSequence(std::vector<PhonemeToken> tokens)
      : tokens_(std::move(tokens)) {}

  static PhonemeSequence parse(std::string_view text);

  const std::vector<PhonemeToken>& tokens() const { return tokens_; }
  bool empty() const { return tokens_.empty(); }
  std::size_t size() const { return tokens_.size(); }
  auto begin() const { return tokens_.begin(); }
  auto end() const { return tokens_.end(); }
  void push_back(PhonemeToken t) { tokens_.push_back(t); }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
      if (i > 0) out += ' ';
      out += tokens_[i].symbol();
    }
    return out;
  }

  friend bool operator==(const PhonemeSequence&, const PhonemeSequence&) =
      default;

 private:
  std::vector<PhonemeToken> tokens_;
};

// Strips stress digits from raw ARPAbet tokens and validates the result
// against the inventory. Order is preserved. Throws UnknownPhoneme with the
// raw token and its zero-based position on the first invalid token.
inline PhonemeSequence strip_stress(std::span<const std::string> raw_tokens) {
  std::vector<PhonemeToken> out;
  out.reserve(raw_tokens.size());
  for (std::size_t i = 0; i < raw_tokens.size(); ++i) {
    auto token = PhonemeToken::lookup(strip_stress_suffix(raw_tokens[i]));
    if (!token) throw UnknownPhoneme(raw_tokens[i], i);
    out.push_back(*token);
  }
  return PhonemeSequence(std::move(out));
}

// Parses a whitespace-separated phoneme string, stripping stress digits.
// Whitespace-only input yields the empty sequence.
inline PhonemeSequence parse_phoneme_string(std::string_view text) {
  std::vector<std::string> raw;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    std::size_t start = i;
    while (i < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
    if (i > start) raw.emplace_back(text.substr(start, i - start));
  }
  return strip_stress(raw);
}

inline PhonemeSequence PhonemeSequence::parse(std::string_view text) {
  return parse_phoneme_string(text);
}

}  // namespace g2p

#endif  // G2P_PHONEME_HPP_
