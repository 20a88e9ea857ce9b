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

#include "refcascade/graph.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include "refcascade/error.hpp"

namespace refcascade {
namespace {

constexpr char kMagic[8] = {'R', 'E', 'F', 'C', 'A', 'S', 'C', '\0'};
constexpr char kTrailer[4] = {'E', 'N', 'D', '\0'};

template <typename T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
  } else {
    return v;
  }
}

class Writer {
 public:
  explicit Writer(std::string& out) : out_(out) {}

  void bytes(const void* p, std::size_t n) {
    out_.append(static_cast<const char*>(p), n);
  }
  template <typename T>
  void scalar(T v) {
    v = to_little(v);
    bytes(&v, sizeof v);
  }
  template <typename T>
  void array(const std::vector<T>& v) {
    if constexpr (std::endian::native == std::endian::little) {
      bytes(v.data(), v.size() * sizeof(T));
    } else {
      for (T x : v) scalar(x);
    }
  }
  void str(const std::string& s) {
    scalar(static_cast<std::uint32_t>(s.size()));
    bytes(s.data(), s.size());
  }

 private:
  std::string& out_;
};

class Reader {
 public:
  Reader(std::string_view in, const std::string& source) : in_(in), source_(source) {}

  void bytes(void* p, std::size_t n) {
    need(n);
    std::memcpy(p, in_.data() + pos_, n);
    pos_ += n;
  }
  template <typename T>
  T scalar() {
    T v;
    bytes(&v, sizeof v);
    return to_little(v);
  }
  template <typename T>
  std::vector<T> array(std::uint64_t count) {
    if (count > (in_.size() - pos_) / sizeof(T)) fail("truncated array");
    std::vector<T> v(count);
    bytes(v.data(), count * sizeof(T));
    if constexpr (std::endian::native != std::endian::little) {
      for (auto& x : v) x = to_little(x);
    }
    return v;
  }
  std::string str() {
    auto n = scalar<std::uint32_t>();
    need(n);
    std::string s(in_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  bool at_end() const { return pos_ == in_.size(); }

  [[noreturn]] void fail(const std::string& what) const {
    throw DataError(source_ + ": invalid snapshot: " + what);
  }

 private:
  void need(std::size_t n) const {
    if (n > in_.size() - pos_) fail("unexpected end of data");
  }

  std::string_view in_;
  std::size_t pos_ = 0;
  const std::string& source_;
};

void check_adjacency(const std::vector<std::uint64_t>& offsets,
                     const std::vector<NodeId>& targets, std::size_t n, const char* name) {
  if (offsets.size() != n + 1 || offsets.front() != 0 || offsets.back() != targets.size()) {
    throw ValidationError(std::string(name) + " offsets have the wrong shape");
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (offsets[v] > offsets[v + 1]) {
      throw ValidationError(std::string(name) + " offsets decrease at node " +
                            std::to_string(v));
    }
    for (auto i = offsets[v]; i < offsets[v + 1]; ++i) {
      if (targets[i] >= n) throw ValidationError(std::string(name) + " target out of range");
      if (i > offsets[v] && targets[i - 1] >= targets[i]) {
        throw ValidationError(std::string(name) + " list of node " + std::to_string(v) +
                              " is not strictly ascending");
      }
    }
  }
}

}  // namespace

// Grants the snapshot decoder access to the raw arrays.
struct SnapshotCodec {
  static CitationGraph make(std::vector<std::uint64_t> ro, std::vector<NodeId> rt,
                            std::vector<std::uint64_t> co, std::vector<NodeId> ct,
                            std::vector<std::string> labels) {
    CitationGraph g;
    g.ref_offsets_ = std::move(ro);
    g.ref_targets_ = std::move(rt);
    g.cit_offsets_ = std::move(co);
    g.cit_targets_ = std::move(ct);
    g.labels_ = std::move(labels);
    return g;
  }
};

CitationGraph CitationGraph::build(const Corpus& corpus) {
  const std::size_t n = corpus.size();
  const auto& edges = corpus.edges();

  std::vector<std::uint64_t> ro(n + 1, 0);
  for (const auto& e : edges) ++ro[e.citing + 1];
  for (std::size_t v = 0; v < n; ++v) ro[v + 1] += ro[v];

  std::vector<NodeId> rt(edges.size());
  {
    std::vector<std::uint64_t> cursor(ro.begin(), ro.end() - 1);
    for (const auto& e : edges) rt[cursor[e.citing]++] = e.cited;
  }
  // Sort each row, then compact away any duplicates an unvalidated corpus
  // might carry.
  std::vector<std::uint64_t> compact(n + 1, 0);
  std::size_t write = 0;
  for (std::size_t v = 0; v < n; ++v) {
    auto first = rt.begin() + static_cast<std::ptrdiff_t>(ro[v]);
    auto last = rt.begin() + static_cast<std::ptrdiff_t>(ro[v + 1]);
    std::sort(first, last);
    auto end = std::unique(first, last);
    for (auto it = first; it != end; ++it) rt[write++] = *it;
    compact[v + 1] = write;
  }
  rt.resize(write);
  ro = std::move(compact);

  // Transpose. Walking citing nodes in ascending order leaves every
  // citation list sorted.
  std::vector<std::uint64_t> co(n + 1, 0);
  for (NodeId t : rt) ++co[t + 1];
  for (std::size_t v = 0; v < n; ++v) co[v + 1] += co[v];
  std::vector<NodeId> ct(rt.size());
  {
    std::vector<std::uint64_t> cursor(co.begin(), co.end() - 1);
    for (std::size_t v = 0; v < n; ++v) {
      for (auto i = ro[v]; i < ro[v + 1]; ++i) ct[cursor[rt[i]]++] = static_cast<NodeId>(v);
    }
  }

  std::vector<std::string> labels;
  labels.reserve(n);
  for (const auto& p : corpus.papers()) labels.push_back(p.external_id);

  return SnapshotCodec::make(std::move(ro), std::move(rt), std::move(co), std::move(ct),
                             std::move(labels));
}

std::span<const NodeId> CitationGraph::references(NodeId node) const {
  if (node >= node_count()) {
    throw IndexError("node " + std::to_string(node) + " out of range");
  }
  return {ref_targets_.data() + ref_offsets_[node], ref_targets_.data() + ref_offsets_[node + 1]};
}

std::span<const NodeId> CitationGraph::citations(NodeId node) const {
  if (node >= node_count()) {
    throw IndexError("node " + std::to_string(node) + " out of range");
  }
  return {cit_targets_.data() + cit_offsets_[node], cit_targets_.data() + cit_offsets_[node + 1]};
}

const std::string& CitationGraph::label(NodeId node) const {
  if (node >= node_count()) {
    throw IndexError("node " + std::to_string(node) + " out of range");
  }
  return labels_[node];
}

void CitationGraph::validate() const {
  const std::size_t n = node_count();
  check_adjacency(ref_offsets_, ref_targets_, n, "reference");
  check_adjacency(cit_offsets_, cit_targets_, n, "citation");
  if (ref_targets_.size() != cit_targets_.size()) {
    throw ValidationError("reference and citation edge counts differ");
  }
  // Every reference edge must appear in the transpose; equal edge counts
  // plus strict sortedness make this a bijection.
  for (std::size_t u = 0; u < n; ++u) {
    for (auto i = ref_offsets_[u]; i < ref_offsets_[u + 1]; ++i) {
      NodeId v = ref_targets_[i];
      auto first = cit_targets_.begin() + static_cast<std::ptrdiff_t>(cit_offsets_[v]);
      auto last = cit_targets_.begin() + static_cast<std::ptrdiff_t>(cit_offsets_[v + 1]);
      if (!std::binary_search(first, last, static_cast<NodeId>(u))) {
        throw ValidationError("citation adjacency is not the transpose of references");
      }
    }
  }
}

std::string encode_snapshot(const Corpus& corpus, const CitationGraph& graph) {
  if (corpus.size() != graph.node_count()) {
    throw UsageError("corpus and graph disagree on node count");
  }
  std::string out;
  out.reserve(32 + graph.ref_offsets().size() * 16 + graph.edge_count() * 8 +
              corpus.size() * 32);
  Writer w(out);
  w.bytes(kMagic, sizeof kMagic);
  w.scalar(kSnapshotVersion);
  const std::uint8_t reserved[3] = {0, 0, 0};
  w.bytes(reserved, sizeof reserved);
  w.scalar(static_cast<std::uint64_t>(graph.node_count()));
  w.scalar(static_cast<std::uint64_t>(graph.edge_count()));
  w.array(graph.ref_offsets());
  w.array(graph.ref_targets());
  w.array(graph.cit_offsets());
  w.array(graph.cit_targets());
  for (const auto& p : corpus.papers()) {
    w.str(p.external_id);
    w.scalar(p.year.value_or(std::numeric_limits<std::int32_t>::min()));
    w.scalar(static_cast<std::uint32_t>(p.codes.size()));
    for (const auto& c : p.codes) w.str(c);
  }
  const auto& c = corpus.counters();
  for (auto v : {c.input_edge_rows, c.kept_edges, c.self_loops, c.duplicates,
                 c.dangling_dropped, c.stubs_created}) {
    w.scalar(v);
  }
  w.bytes(kTrailer, sizeof kTrailer);
  return out;
}

Snapshot decode_snapshot(std::string_view bytes, const std::string& source) {
  Reader r(bytes, source);
  char magic[8];
  r.bytes(magic, sizeof magic);
  if (std::memcmp(magic, kMagic, sizeof kMagic) != 0) r.fail("bad magic");
  auto version = r.scalar<std::uint8_t>();
  if (version != kSnapshotVersion) {
    r.fail("unsupported version " + std::to_string(version));
  }
  std::uint8_t reserved[3];
  r.bytes(reserved, sizeof reserved);
  auto n = r.scalar<std::uint64_t>();
  auto m = r.scalar<std::uint64_t>();
  if (n >= std::numeric_limits<NodeId>::max()) r.fail("node count too large");

  auto ro = r.array<std::uint64_t>(n + 1);
  auto rt = r.array<NodeId>(m);
  auto co = r.array<std::uint64_t>(n + 1);
  auto ct = r.array<NodeId>(m);

  Snapshot snap;
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    PaperRecord p;
    p.external_id = r.str();
    auto year = r.scalar<std::int32_t>();
    if (year != std::numeric_limits<std::int32_t>::min()) p.year = year;
    auto codes = r.scalar<std::uint32_t>();
    for (std::uint32_t k = 0; k < codes; ++k) p.codes.push_back(r.str());
    labels.push_back(p.external_id);
    try {
      snap.corpus.add_paper(std::move(p));
    } catch (const ValidationError& e) {
      r.fail(e.what());
    }
  }
  auto& counters = snap.corpus.mutable_counters();
  counters.input_edge_rows = r.scalar<std::uint64_t>();
  counters.kept_edges = r.scalar<std::uint64_t>();
  counters.self_loops = r.scalar<std::uint64_t>();
  counters.duplicates = r.scalar<std::uint64_t>();
  counters.dangling_dropped = r.scalar<std::uint64_t>();
  counters.stubs_created = r.scalar<std::uint64_t>();
  char trailer[4];
  r.bytes(trailer, sizeof trailer);
  if (std::memcmp(trailer, kTrailer, sizeof kTrailer) != 0 || !r.at_end()) {
    r.fail("bad trailer");
  }

  snap.graph = SnapshotCodec::make(std::move(ro), std::move(rt), std::move(co), std::move(ct),
                                   std::move(labels));
  try {
    snap.graph.validate();
  } catch (const ValidationError& e) {
    r.fail(e.what());
  }
  const auto& g = snap.graph;
  for (std::size_t u = 0; u < n; ++u) {
    for (auto i = g.ref_offsets()[u]; i < g.ref_offsets()[u + 1]; ++i) {
      snap.corpus.add_edge({static_cast<NodeId>(u), g.ref_targets()[i]});
    }
  }
  return snap;
}

void save_snapshot(const std::filesystem::path& path, const Corpus& corpus,
                   const CitationGraph& graph) {
  std::string bytes = encode_snapshot(corpus, graph);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

Snapshot load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_snapshot(bytes, path.string());
}

}  // namespace refcascade
