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

#include "refcascade/relevance.hpp"

#include <unordered_map>

#include "refcascade/error.hpp"

namespace refcascade {

std::string_view to_string(CodeLevel level) noexcept {
  switch (level) {
    case CodeLevel::full: return "full";
    case CodeLevel::two_segment: return "two";
    case CodeLevel::one_segment: return "one";
  }
  return "full";
}

std::string_view to_string(EmptyCodePolicy policy) noexcept {
  return policy == EmptyCodePolicy::exclude ? "exclude" : "zero";
}

CodeLevel parse_code_level(std::string_view text) {
  if (text == "full") return CodeLevel::full;
  if (text == "two" || text == "two-segment") return CodeLevel::two_segment;
  if (text == "one" || text == "one-segment") return CodeLevel::one_segment;
  throw UsageError("unknown code level '" + std::string(text) + "'");
}

EmptyCodePolicy parse_empty_code_policy(std::string_view text) {
  if (text == "exclude") return EmptyCodePolicy::exclude;
  if (text == "zero") return EmptyCodePolicy::zero;
  throw UsageError("unknown empty-code policy '" + std::string(text) + "'");
}

std::string truncate_code(std::string_view code, CodeLevel level) {
  std::size_t keep = 0;
  switch (level) {
    case CodeLevel::full: return std::string(code);
    case CodeLevel::one_segment: keep = 1; break;
    case CodeLevel::two_segment: keep = 2; break;
  }
  std::size_t pos = 0;
  for (std::size_t seg = 0; seg < keep; ++seg) {
    pos = code.find('.', pos);
    if (pos == std::string_view::npos) return std::string(code);
    if (seg + 1 < keep) ++pos;
  }
  return std::string(code.substr(0, pos));
}

std::optional<Overlap> jaccard(std::vector<std::string> a, std::vector<std::string> b) {
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return jaccard<std::string>(std::span<const std::string>(a), std::span<const std::string>(b));
}

TopicIndex::TopicIndex(const Corpus& corpus, RelevanceConfig config) : config_(config) {
  std::unordered_map<std::string, std::uint32_t> intern;
  offsets_.reserve(corpus.size() + 1);
  for (const auto& p : corpus.papers()) add(p.codes, intern);
}

TopicIndex::TopicIndex(const std::vector<std::vector<std::string>>& codes,
                       RelevanceConfig config)
    : config_(config) {
  std::unordered_map<std::string, std::uint32_t> intern;
  offsets_.reserve(codes.size() + 1);
  for (const auto& c : codes) add(c, intern);
}

void TopicIndex::add(const std::vector<std::string>& raw,
                     std::unordered_map<std::string, std::uint32_t>& intern) {
  auto start = ids_.size();
  for (const auto& code : raw) {
    if (code.empty()) continue;
    auto key = truncate_code(code, config_.code_level);
    auto [it, inserted] = intern.emplace(std::move(key), static_cast<std::uint32_t>(intern.size()));
    ids_.push_back(it->second);
  }
  auto first = ids_.begin() + static_cast<std::ptrdiff_t>(start);
  std::sort(first, ids_.end());
  ids_.erase(std::unique(first, ids_.end()), ids_.end());
  offsets_.push_back(ids_.size());
}

std::span<const std::uint32_t> TopicIndex::codes(NodeId node) const {
  if (node >= node_count()) {
    throw IndexError("node " + std::to_string(node) + " out of range");
  }
  return {ids_.data() + offsets_[node], ids_.data() + offsets_[node + 1]};
}

std::optional<Overlap> TopicIndex::relevance(NodeId focal, NodeId other) const {
  auto a = codes(focal);
  if (a.empty()) return std::nullopt;
  auto b = codes(other);
  if (b.empty()) {
    if (config_.empty_codes == EmptyCodePolicy::exclude) return std::nullopt;
    return Overlap{0, static_cast<std::uint32_t>(a.size())};
  }
  return jaccard<std::uint32_t>(a, b);
}

RelevanceSum layer_relevance(const TopicIndex& topics, NodeId focal,
                             std::span<const NodeId> layer) {
  RelevanceSum acc;
  if (!topics.has_codes(focal)) return acc;
  for (NodeId p : layer) {
    if (auto r = topics.relevance(focal, p)) {
      acc.sum += r->value();
      ++acc.count;
    }
  }
  return acc;
}

std::optional<double> generation_relevance(const Cascade& cascade, const TopicIndex& topics,
                                           std::size_t generation) {
  if (generation == 0 || generation > cascade.depth()) {
    throw UsageError("generation " + std::to_string(generation) + " outside [1, " +
                     std::to_string(cascade.depth()) + "]");
  }
  return layer_relevance(topics, cascade.focal(), cascade.layer(generation)).mean();
}

}  // namespace refcascade
