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

#include "refcascade/cascade.hpp"

#include <algorithm>
#include <string>

#include "refcascade/error.hpp"

namespace refcascade {

Cascade::Cascade(NodeId focal, Direction direction, std::vector<std::vector<NodeId>> layers)
    : focal_(focal), direction_(direction), layers_(std::move(layers)) {
  while (layers_.size() > 1 && layers_.back().empty()) layers_.pop_back();
  size_ = 0;
  for (const auto& l : layers_) size_ += l.size();
}

const std::vector<NodeId>& Cascade::layer(std::size_t generation) const {
  if (generation >= layers_.size()) {
    throw IndexError("generation " + std::to_string(generation) + " beyond cascade depth " +
                     std::to_string(depth()));
  }
  return layers_[generation];
}

std::vector<std::size_t> Cascade::widths() const {
  std::vector<std::size_t> w;
  w.reserve(layers_.size());
  for (const auto& l : layers_) w.push_back(l.size());
  return w;
}

std::optional<std::size_t> Cascade::generation_of(NodeId node) const {
  for (std::size_t g = 0; g < layers_.size(); ++g) {
    if (std::binary_search(layers_[g].begin(), layers_[g].end(), node)) return g;
  }
  return std::nullopt;
}

CascadeBuilder::CascadeBuilder(const CitationGraph& graph)
    : graph_(graph), stamp_(graph.node_count(), 0) {}

Cascade CascadeBuilder::build(NodeId focal, Direction direction,
                              std::optional<std::size_t> max_depth) {
  Cascade c;
  build_into(c, focal, direction, max_depth);
  return c;
}

void CascadeBuilder::build_into(Cascade& out, NodeId focal, Direction direction,
                                std::optional<std::size_t> max_depth) {
  if (focal >= graph_.node_count()) {
    throw IndexError("focal node " + std::to_string(focal) + " out of range");
  }
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  const std::uint32_t epoch = epoch_;

  out.focal_ = focal;
  out.direction_ = direction;
  // Keep inner vectors alive for reuse; clear their contents.
  std::size_t used = 1;
  if (out.layers_.empty()) out.layers_.emplace_back();
  out.layers_[0].assign(1, focal);
  stamp_[focal] = epoch;
  std::size_t size = 1;

  const std::size_t limit = max_depth.value_or(static_cast<std::size_t>(-1));
  while (used - 1 < limit) {
    if (out.layers_.size() <= used) out.layers_.emplace_back();
    auto& next = out.layers_[used];
    next.clear();
    for (NodeId u : out.layers_[used - 1]) {
      for (NodeId v : graph_.successors_unchecked(u, direction)) {
        if (stamp_[v] != epoch) {
          stamp_[v] = epoch;
          next.push_back(v);
        }
      }
    }
    if (next.empty()) break;
    std::sort(next.begin(), next.end());
    size += next.size();
    ++used;
  }
  out.layers_.resize(used);
  out.size_ = size;
}

Cascade build_cascade(const CitationGraph& graph, NodeId focal, Direction direction,
                      std::optional<std::size_t> max_depth) {
  CascadeBuilder builder(graph);
  return builder.build(focal, direction, max_depth);
}

std::size_t cascade_width(const Cascade& cascade) {
  std::size_t w = 0;
  for (const auto& l : cascade.layers()) w = std::max(w, l.size());
  return w;
}

std::vector<NodeId> ancestors(const Cascade& cascade, const CitationGraph& graph) {
  if (cascade.direction() != Direction::backward) {
    throw UsageError("ancestors are only defined for backward cascades");
  }
  std::vector<NodeId> out;
  for (const auto& layer : cascade.layers()) {
    for (NodeId v : layer) {
      if (graph.out_degree(v) == 0) out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace refcascade
