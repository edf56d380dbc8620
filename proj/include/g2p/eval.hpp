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

#ifndef G2P_EVAL_HPP_
#define G2P_EVAL_HPP_

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <optional>
#include <ranges>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "g2p/errors.hpp"
#include "g2p/phoneme.hpp"
#include "g2p/text.hpp"

namespace g2p {

// Minimum edit distance under unit-cost insert/delete/substitute, over
// whole tokens. Two-row dynamic programming.
template <std::ranges::random_access_range R1,
          std::ranges::random_access_range R2>
std::size_t levenshtein(const R1& a, const R2& b) {
  const std::size_t m = std::ranges::size(a);
  const std::size_t n = std::ranges::size(b);
  std::vector<std::size_t> prev(n + 1), cur(n + 1);
  std::iota(prev.begin(), prev.end(), std::size_t{0});
  for (std::size_t i = 1; i <= m; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= n; ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    prev.swap(cur);
  }
  return prev[n];
}

enum class EditOp { kMatch, kSub, kDel, kIns };

// Full-matrix backtrace of one optimal alignment; used for error-analysis
// dumps, not for scoring.
template <std::ranges::random_access_range R1,
          std::ranges::random_access_range R2>
std::vector<EditOp> align(const R1& a, const R2& b) {
  const std::size_t m = std::ranges::size(a);
  const std::size_t n = std::ranges::size(b);
  std::vector<std::vector<std::size_t>> d(m + 1,
                                          std::vector<std::size_t>(n + 1));
  for (std::size_t i = 0; i <= m; ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= n; ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      std::size_t sub = d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, sub});
    }
  }
  std::vector<EditOp> ops;
  std::size_t i = m, j = n;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 &&
        d[i][j] == d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)) {
      ops.push_back(a[i - 1] == b[j - 1] ? EditOp::kMatch : EditOp::kSub);
      --i;
      --j;
    } else if (i > 0 && d[i][j] == d[i - 1][j] + 1) {
      ops.push_back(EditOp::kDel);
      --i;
    } else {
      ops.push_back(EditOp::kIns);
      --j;
    }
  }
  std::reverse(ops.begin(), ops.end());
  return ops;
}

// Side-by-side token alignment, three lines: REF, HYP, and op markers
// ('.' match, 'S' substitution, 'D' deletion, 'I' insertion).
inline std::string format_alignment(const PhonemeSequence& ref,
                                    const PhonemeSequence& hyp) {
  auto ops = align(ref.tokens(), hyp.tokens());
  std::string ref_line = "REF ", hyp_line = "HYP ", ops_line = "    ";
  std::size_t i = 0, j = 0;
  for (auto op : ops) {
    std::string r = "*", h = "*", marker;
    switch (op) {
      case EditOp::kMatch:
        r = ref.tokens()[i++].symbol();
        h = hyp.tokens()[j++].symbol();
        marker = ".";
        break;
      case EditOp::kSub:
        r = ref.tokens()[i++].symbol();
        h = hyp.tokens()[j++].symbol();
        marker = "S";
        break;
      case EditOp::kDel:
        r = ref.tokens()[i++].symbol();
        marker = "D";
        break;
      case EditOp::kIns:
        h = hyp.tokens()[j++].symbol();
        marker = "I";
        break;
    }
    std::size_t width = std::max({r.size(), h.size(), marker.size()});
    auto pad = [width](std::string s) {
      s.resize(width, ' ');
      return s;
    };
    ref_line += pad(r) + ' ';
    hyp_line += pad(h) + ' ';
    ops_line += pad(marker) + ' ';
  }
  return ref_line + '\n' + hyp_line + '\n' + ops_line + '\n';
}

// One scored utterance. `hypothesis_words` carries the pipeline's per-word
// results; `hypothesis_groups` + `homograph_index` support externally
// produced hypotheses whose word boundaries survived (the flagged
// fallback). The homograph fields come and go together.
struct WordPhonemes {
  Word word;
  PhonemeSequence phonemes;
};

struct EvalItem {
  std::string id;
  std::string subset = "all";
  PhonemeSequence reference;
  PhonemeSequence hypothesis;
  std::optional<Word> homograph_word;
  std::optional<PhonemeSequence> homograph_reference;
  std::optional<std::vector<WordPhonemes>> hypothesis_words;
  std::optional<std::vector<PhonemeSequence>> hypothesis_groups;
  std::optional<std::size_t> homograph_index;

  bool has_homograph() const {
    if (homograph_word.has_value() != homograph_reference.has_value()) {
      throw InvariantViolation(
          "item '" + id +
          "': homograph_word and homograph_reference must come together");
    }
    return homograph_word.has_value();
  }
};

// Corpus-level phoneme error rate:
//   100 * (sum of edit distances) / (sum of reference lengths)
inline double per(std::span<const EvalItem> items) {
  if (items.empty()) throw Error("per: no items");
  std::size_t total_edits = 0;
  std::size_t total_ref = 0;
  for (const auto& item : items) {
    if (item.reference.empty()) throw EmptyReference(item.id);
    total_edits += levenshtein(item.reference.tokens(),
                               item.hypothesis.tokens());
    total_ref += item.reference.size();
  }
  return 100.0 * static_cast<double>(total_edits) /
         static_cast<double>(total_ref);
}

struct HomographJudgment {
  bool correct;
  bool used_fallback;
};

// An item is correct iff the hypothesis assigns the homograph word exactly
// its reference pronunciation, judged at word granularity. The pipeline's
// per-word results are authoritative; a word-index lookup into boundary-
// preserving groups is the flagged fallback for external hypotheses.
inline HomographJudgment judge_homograph(const EvalItem& item) {
  if (!item.has_homograph()) {
    throw InvariantViolation("item '" + item.id + "' has no homograph fields");
  }
  if (item.hypothesis_words) {
    for (const auto& entry : *item.hypothesis_words) {
      if (entry.word == *item.homograph_word) {
        return {entry.phonemes == *item.homograph_reference, false};
      }
    }
    throw MissingWordAlignment(item.id);
  }
  if (item.hypothesis_groups && item.homograph_index) {
    if (*item.homograph_index >= item.hypothesis_groups->size()) {
      throw MissingWordAlignment(item.id);
    }
    return {(*item.hypothesis_groups)[*item.homograph_index] ==
                *item.homograph_reference,
            true};
  }
  throw MissingWordAlignment(item.id);
}

struct HomographScore {
  double accuracy = 0.0;  // percent
  std::size_t total = 0;
  std::size_t correct = 0;
  std::size_t fallbacks = 0;
};

inline HomographScore homograph_accuracy(std::span<const EvalItem> items) {
  if (items.empty()) throw Error("homograph_accuracy: no items");
  HomographScore score;
  for (const auto& item : items) {
    auto judgment = judge_homograph(item);
    ++score.total;
    if (judgment.correct) ++score.correct;
    if (judgment.used_fallback) ++score.fallbacks;
  }
  score.accuracy =
      100.0 * static_cast<double>(score.correct) / static_cast<double>(score.total);
  return score;
}

// Weighted combination of per-subset PERs. Key sets must match and the
// weights must not sum to zero.
inline double weighted_average_per(const std::map<std::string, double>& per_subset,
                                   const std::map<std::string, double>& weights) {
  if (per_subset.size() != weights.size()) {
    throw WeightMismatch("weights do not cover the subsets");
  }
  double weighted_sum = 0.0;
  double weight_total = 0.0;
  for (const auto& [name, value] : per_subset) {
    auto it = weights.find(name);
    if (it == weights.end()) {
      throw WeightMismatch("no weight for subset '" + name + "'");
    }
    if (it->second < 0) {
      throw WeightMismatch("negative weight for subset '" + name + "'");
    }
    weighted_sum += it->second * value;
    weight_total += it->second;
  }
  if (weight_total <= 0.0) throw WeightMismatch("weights sum to zero");
  return weighted_sum / weight_total;
}

struct SubsetStats {
  double per = 0.0;
  std::size_t items = 0;
  std::size_t ref_tokens = 0;
  std::size_t edits = 0;
};

struct EvalReport {
  std::map<std::string, SubsetStats> per_subset;
  double weighted_average = 0.0;
  std::optional<double> homograph_accuracy;
  std::size_t homograph_items = 0;
  std::size_t homograph_correct = 0;
  std::size_t alignment_fallbacks = 0;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json subsets = nlohmann::ordered_json::object();
    for (const auto& [name, stats] : per_subset) {
      subsets[name] = {{"per", stats.per},
                       {"items", stats.items},
                       {"ref_tokens", stats.ref_tokens},
                       {"edits", stats.edits}};
    }
    nlohmann::ordered_json out;
    out["subsets"] = std::move(subsets);
    out["weighted_average_per"] = weighted_average;
    if (homograph_accuracy) {
      out["homograph_accuracy"] = *homograph_accuracy;
    } else {
      out["homograph_accuracy"] = nullptr;
    }
    out["homograph_items"] = homograph_items;
    out["homograph_correct"] = homograph_correct;
    out["alignment_fallbacks"] = alignment_fallbacks;
    return out;
  }

  // One line in the shape of the results tables: per-subset PER, weighted
  // average, homograph accuracy.
  std::string table_row() const {
    auto fmt = [](double v) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.2f", v);
      return std::string(buf);
    };
    std::string row;
    for (const auto& [name, stats] : per_subset) {
      row += name + " PER " + fmt(stats.per) + " | ";
    }
    row += "weighted avg PER " + fmt(weighted_average);
    if (homograph_accuracy) {
      row += " | homograph acc " + fmt(*homograph_accuracy);
    }
    return row;
  }
};

// Groups items by subset, computes per-subset PER, their weighted average
// (weights default to item counts), and homograph accuracy over the items
// that carry homograph fields.
inline EvalReport evaluate(
    std::span<const EvalItem> items,
    const std::optional<std::map<std::string, double>>& weights = std::nullopt,
    bool score_homographs = true) {
  if (items.empty()) throw Error("evaluate: no items");

  EvalReport report;
  for (const auto& item : items) {
    if (item.reference.empty()) throw EmptyReference(item.id);
    auto& stats = report.per_subset[item.subset];
    ++stats.items;
    stats.ref_tokens += item.reference.size();
    stats.edits +=
        levenshtein(item.reference.tokens(), item.hypothesis.tokens());
  }

  std::map<std::string, double> per_values;
  std::map<std::string, double> default_weights;
  for (auto& [name, stats] : report.per_subset) {
    stats.per = 100.0 * static_cast<double>(stats.edits) /
                static_cast<double>(stats.ref_tokens);
    per_values[name] = stats.per;
    default_weights[name] = static_cast<double>(stats.items);
  }
  report.weighted_average =
      weighted_average_per(per_values, weights ? *weights : default_weights);

  if (score_homographs) {
    std::vector<EvalItem> homograph_items;
    for (const auto& item : items) {
      if (item.has_homograph()) homograph_items.push_back(item);
    }
    if (!homograph_items.empty()) {
      auto score = homograph_accuracy(homograph_items);
      report.homograph_accuracy = score.accuracy;
      report.homograph_items = score.total;
      report.homograph_correct = score.correct;
      report.alignment_fallbacks = score.fallbacks;
    }
  }
  return report;
}

}  // namespace g2p

#endif  // G2P_EVAL_HPP_
