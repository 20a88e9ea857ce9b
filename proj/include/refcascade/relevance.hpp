// Copyright 2026 The refcascade Authors
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

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "refcascade/cascade.hpp"
#include "refcascade/corpus.hpp"

namespace refcascade {

// How far dot-delimited codes are truncated before comparison.
enum class CodeLevel : std::uint8_t { full, two_segment, one_segment };

// exclude: papers without codes are skipped when averaging.
// zero: papers without codes score 0 against a coded focal paper.
enum class EmptyCodePolicy : std::uint8_t { exclude, zero };

struct RelevanceConfig {
  CodeLevel code_level = CodeLevel::full;
  EmptyCodePolicy empty_codes = EmptyCodePolicy::exclude;

  friend bool operator==(const RelevanceConfig&, const RelevanceConfig&) = default;
};

std::string_view to_string(CodeLevel level) noexcept;
std::string_view to_string(EmptyCodePolicy policy) noexcept;
// Accepts full|two|one (and the long forms two-segment|one-segment).
CodeLevel parse_code_level(std::string_view text);
EmptyCodePolicy parse_empty_code_policy(std::string_view text);

// Exact |a ∩ b| / |a ∪ b|.
struct Overlap {
  std::uint32_t shared = 0;
  std::uint32_t combined = 0;

  double value() const noexcept { return static_cast<double>(shared) / combined; }

  friend bool operator==(const Overlap&, const Overlap&) = default;
};

// Compares two overlaps by exact rational value.
inline bool less_by_value(const Overlap& a, const Overlap& b) noexcept {
  return static_cast<std::uint64_t>(a.shared) * b.combined <
         static_cast<std::uint64_t>(b.shared) * a.combined;
}

std::string truncate_code(std::string_view code, CodeLevel level);

// Jaccard similarity of two sorted, duplicate-free ranges. nullopt when both
// are empty.
template <typename T>
std::optional<Overlap> jaccard(std::span<const T> a, std::span<const T> b) {
  std::uint32_t shared = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++shared;
      ++i;
      ++j;
    }
  }
  auto combined = static_cast<std::uint32_t>(a.size() + b.size()) - shared;
  if (combined == 0) return std::nullopt;
  return Overlap{shared, combined};
}

// Convenience overload for string code sets; sorts and dedups copies.
std::optional<Overlap> jaccard(std::vector<std::string> a, std::vector<std::string> b);

// Per-paper code sets after truncation, with codes interned to integers so
// comparisons are integer merges. Immutable after construction.
class TopicIndex {
 public:
  TopicIndex(const Corpus& corpus, RelevanceConfig config = {});
  // One code list per node id.
  TopicIndex(const std::vector<std::vector<std::string>>& codes, RelevanceConfig config = {});

  const RelevanceConfig& config() const noexcept { return config_; }
  std::size_t node_count() const noexcept { return offsets_.size() - 1; }
  std::span<const std::uint32_t> codes(NodeId node) const;
  bool has_codes(NodeId node) const { return !codes(node).empty(); }

  // Relevance of `other` to `focal` under the configured empty-code policy.
  // nullopt when the pair is not comparable.
  std::optional<Overlap> relevance(NodeId focal, NodeId other) const;

 private:
  void add(const std::vector<std::string>& raw,
           std::unordered_map<std::string, std::uint32_t>& intern);

  RelevanceConfig config_;
  std::vector<std::size_t> offsets_{0};
  std::vector<std::uint32_t> ids_;
};

// Running sum of per-paper relevances for one generation.
struct RelevanceSum {
  double sum = 0.0;
  std::size_t count = 0;

  std::optional<double> mean() const {
    if (count == 0) return std::nullopt;
    return sum / static_cast<double>(count);
  }
};

// Sum of relevance(focal, p) over p in `layer`, accumulated in layer order.
RelevanceSum layer_relevance(const TopicIndex& topics, NodeId focal,
                             std::span<const NodeId> layer);

// Mean relevance of generation `generation` (>= 1) to the focal paper.
// nullopt when the focal has no codes or no paper in the generation is
// comparable. Throws UsageError for generation 0 or beyond the depth.
std::optional<double> generation_relevance(const Cascade& cascade, const TopicIndex& topics,
                                           std::size_t generation);

}  // namespace refcascade
