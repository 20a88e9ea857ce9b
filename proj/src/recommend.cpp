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

#include "refcascade/recommend.hpp"

#include <algorithm>

#include "refcascade/cascade.hpp"
#include "refcascade/error.hpp"

namespace refcascade {

RecommendResult recommend(const CitationGraph& graph, const TopicIndex& topics, NodeId focal,
                          const RecommendOptions& options) {
  if (options.max_generation < 1) throw UsageError("max_generation must be at least 1");
  if (focal >= graph.node_count()) {
    throw IndexError("focal node " + std::to_string(focal) + " out of range");
  }
  RecommendResult result;
  if (!topics.has_codes(focal)) {
    result.status = RecommendStatus::focal_without_codes;
    result.message = "focal paper '" + graph.label(focal) +
                     "' has no classification codes; relevance is undefined";
    return result;
  }

  Cascade cascade = build_cascade(graph, focal, Direction::backward, options.max_generation);
  const std::size_t first = options.exclude_direct ? 2 : 1;
  for (std::size_t g = first; g <= cascade.depth(); ++g) {
    for (NodeId p : cascade.layer(g)) {
      auto rel = topics.relevance(focal, p);
      if (!rel || rel->value() < options.min_relevance) continue;
      result.items.push_back({graph.label(p), p, g, *rel});
    }
  }

  std::sort(result.items.begin(), result.items.end(),
            [](const Recommendation& a, const Recommendation& b) {
              if (less_by_value(b.relevance, a.relevance)) return true;
              if (less_by_value(a.relevance, b.relevance)) return false;
              if (a.generation != b.generation) return a.generation < b.generation;
              return a.paper < b.paper;
            });
  if (options.top_k && result.items.size() > *options.top_k) {
    result.items.resize(*options.top_k);
  }
  return result;
}

}  // namespace refcascade
