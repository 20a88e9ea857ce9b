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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "refcascade/corpus.hpp"
#include "refcascade/types.hpp"

namespace refcascade {

// Immutable citation graph in compressed sparse row form, stored twice:
// once keyed by citing paper (references) and once keyed by cited paper
// (citations). Per-node target lists are sorted and duplicate-free, and the
// two adjacencies are exact transposes of each other.
//
// Safe for unsynchronized concurrent reads.
class CitationGraph {
 public:
  CitationGraph() : ref_offsets_(1, 0), cit_offsets_(1, 0) {}

  static CitationGraph build(const Corpus& corpus);

  std::size_t node_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return ref_targets_.size(); }

  // Papers cited by `node`. Throws IndexError when out of range.
  std::span<const NodeId> references(NodeId node) const;
  // Papers citing `node`. Throws IndexError when out of range.
  std::span<const NodeId> citations(NodeId node) const;
  std::size_t out_degree(NodeId node) const { return references(node).size(); }
  std::size_t in_degree(NodeId node) const { return citations(node).size(); }

  // Traversal successors: references for backward, citations for forward.
  std::span<const NodeId> successors(NodeId node, Direction d) const {
    return d == Direction::backward ? references(node) : citations(node);
  }
  std::span<const NodeId> predecessors(NodeId node, Direction d) const {
    return d == Direction::backward ? citations(node) : references(node);
  }

  // Unchecked variant for hot loops; caller guarantees node < node_count().
  std::span<const NodeId> successors_unchecked(NodeId node, Direction d) const noexcept {
    const auto& off = d == Direction::backward ? ref_offsets_ : cit_offsets_;
    const auto& tgt = d == Direction::backward ? ref_targets_ : cit_targets_;
    return {tgt.data() + off[node], tgt.data() + off[node + 1]};
  }

  const std::string& label(NodeId node) const;
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  const std::vector<std::uint64_t>& ref_offsets() const noexcept { return ref_offsets_; }
  const std::vector<NodeId>& ref_targets() const noexcept { return ref_targets_; }
  const std::vector<std::uint64_t>& cit_offsets() const noexcept { return cit_offsets_; }
  const std::vector<NodeId>& cit_targets() const noexcept { return cit_targets_; }

  // Checks offset monotonicity, sortedness and the transpose property.
  // Throws ValidationError.
  void validate() const;

  friend bool operator==(const CitationGraph&, const CitationGraph&) = default;

 private:
  friend struct SnapshotCodec;

  std::vector<std::uint64_t> ref_offsets_;
  std::vector<NodeId> ref_targets_;
  std::vector<std::uint64_t> cit_offsets_;
  std::vector<NodeId> cit_targets_;
  std::vector<std::string> labels_;
};

// Corpus metadata plus its graph, as persisted by the binary snapshot.
struct Snapshot {
  Corpus corpus;
  CitationGraph graph;
};

// Binary snapshot layout (all integers little-endian):
//   "REFCASC\0"  magic, 8 bytes
//   u8           format version (kSnapshotVersion)
//   3 bytes      reserved, zero
//   u64 node_count, u64 edge_count
//   u64[node_count+1] ref_offsets, u32[edge_count] ref_targets
//   u64[node_count+1] cit_offsets, u32[edge_count] cit_targets
//   per node: u32 id length + id bytes, i32 year (INT32_MIN if absent),
//             u32 code count, then u32 length + bytes per code
//   u64[6] ingest counters
//   "END\0"
//
// The corpus edge list is restored from the reference adjacency, so after a
// round trip edges appear in (citing, cited) order.
inline constexpr std::uint8_t kSnapshotVersion = 1;

void save_snapshot(const std::filesystem::path& path, const Corpus& corpus,
                   const CitationGraph& graph);
Snapshot load_snapshot(const std::filesystem::path& path);

std::string encode_snapshot(const Corpus& corpus, const CitationGraph& graph);
Snapshot decode_snapshot(std::string_view bytes, const std::string& source = "<snapshot>");

}  // namespace refcascade
