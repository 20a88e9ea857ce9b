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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "refcascade/graph.hpp"
#include "refcascade/relevance.hpp"

namespace refcascade {

struct Recommendation {
  std::string paper;
  NodeId node = 0;
  std::size_t generation = 0;
  Overlap relevance;
};

struct RecommendOptions {
  std::size_t max_generation = 4;
  double min_relevance = 0.2;
  std::optional<std::size_t> top_k;
  // Drop generation-1 papers (the focal paper's own references).
  bool exclude_direct = false;
};

enum class RecommendStatus { ok, focal_without_codes };

struct RecommendResult {
  RecommendStatus status = RecommendStatus::ok;
  std::string message;
  std::vector<Recommendation> items;
};

// Papers from backward generations 1..max_generation whose relevance to the
// focal paper is defined and at least min_relevance, ordered by relevance
// (descending), generation, then external id. Throws UsageError when
// max_generation is 0 and IndexError for an unknown focal node.
RecommendResult recommend(const CitationGraph& graph, const TopicIndex& topics, NodeId focal,
                          const RecommendOptions& options = {});

}  // namespace refcascade
