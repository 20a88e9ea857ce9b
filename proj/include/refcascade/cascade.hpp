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
#include <cstdint>
#include <optional>
#include <vector>

#include "refcascade/graph.hpp"
#include "refcascade/types.hpp"

namespace refcascade {

// A focal paper's cascade: generation layers assigned by shortest-path
// distance along the traversal direction. layers()[0] is {focal}; every
// layer is a sorted id list and the layers partition the cascade's nodes.
class Cascade {
 public:
  Cascade() = default;
  Cascade(NodeId focal, Direction direction, std::vector<std::vector<NodeId>> layers);

  NodeId focal() const noexcept { return focal_; }
  Direction direction() const noexcept { return direction_; }
  const std::vector<std::vector<NodeId>>& layers() const noexcept { return layers_; }
  const std::vector<NodeId>& layer(std::size_t generation) const;

  // Index of the deepest nonempty layer.
  std::size_t depth() const noexcept { return layers_.empty() ? 0 : layers_.size() - 1; }
  std::size_t size() const noexcept { return size_; }
  std::vector<std::size_t> widths() const;

  // Generation of `node`, or nullopt if the node is not in the cascade.
  std::optional<std::size_t> generation_of(NodeId node) const;

 private:
  friend class CascadeBuilder;

  NodeId focal_ = 0;
  Direction direction_ = Direction::backward;
  std::vector<std::vector<NodeId>> layers_;
  std::size_t size_ = 0;
};

// Breadth-first layering with reusable scratch state. Visit markers are
// epoch-stamped so consecutive builds over the same graph cost nothing to
// reset. One builder per worker thread; builders are not thread-safe.
class CascadeBuilder {
 public:
  explicit CascadeBuilder(const CitationGraph& graph);

  // Throws IndexError when focal is out of range.
  Cascade build(NodeId focal, Direction direction,
                std::optional<std::size_t> max_depth = std::nullopt);

  // Same as build() but reuses `out`'s layer storage.
  void build_into(Cascade& out, NodeId focal, Direction direction,
                  std::optional<std::size_t> max_depth = std::nullopt);

 private:
  const CitationGraph& graph_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
};

Cascade build_cascade(const CitationGraph& graph, NodeId focal, Direction direction,
                      std::optional<std::size_t> max_depth = std::nullopt);

// Largest generation width, generation 0 included (so at least 1).
std::size_t cascade_width(const Cascade& cascade);

// Cascade nodes that cite nothing in the graph. Only defined for backward
// cascades; throws UsageError on a forward cascade.
std::vector<NodeId> ancestors(const Cascade& cascade, const CitationGraph& graph);

}  // namespace refcascade
