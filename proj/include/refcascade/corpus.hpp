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
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "refcascade/types.hpp"

namespace refcascade {

// One paper's metadata. `codes` is kept sorted and duplicate-free so it can
// be treated as a set everywhere downstream.
struct PaperRecord {
  std::string external_id;
  std::optional<int> year;
  std::vector<std::string> codes;

  friend bool operator==(const PaperRecord&, const PaperRecord&) = default;
};

struct CitationEdge {
  NodeId citing;
  NodeId cited;

  friend bool operator==(const CitationEdge&, const CitationEdge&) = default;
  friend auto operator<=>(const CitationEdge&, const CitationEdge&) = default;
};

enum class DanglingPolicy : std::uint8_t { stub, drop, error };

std::string_view to_string(DanglingPolicy p) noexcept;
DanglingPolicy parse_dangling_policy(std::string_view text);

// Edge ingest accounting. input_edge_rows always equals
// kept_edges + self_loops + duplicates + dangling_dropped.
struct IngestCounters {
  std::uint64_t input_edge_rows = 0;
  std::uint64_t kept_edges = 0;
  std::uint64_t self_loops = 0;
  std::uint64_t duplicates = 0;
  std::uint64_t dangling_dropped = 0;
  std::uint64_t stubs_created = 0;

  friend bool operator==(const IngestCounters&, const IngestCounters&) = default;
};

struct IngestOptions {
  DanglingPolicy dangling = DanglingPolicy::stub;
  // Lower-cases codes on ingest. Codes are otherwise stored verbatim.
  bool normalize_codes = false;
};

// Papers plus resolved citation edges. Papers are addressed by their dense
// NodeId (position in papers()); external ids map back through find().
class Corpus {
 public:
  Corpus() = default;

  const std::vector<PaperRecord>& papers() const noexcept { return papers_; }
  const std::vector<CitationEdge>& edges() const noexcept { return edges_; }
  const IngestCounters& counters() const noexcept { return counters_; }
  std::size_t size() const noexcept { return papers_.size(); }

  const PaperRecord& paper(NodeId id) const;
  std::optional<NodeId> find(std::string_view external_id) const;

  // Throws ValidationError when the id is already present or the record
  // breaks an invariant (empty id, empty or whitespace-bearing code).
  NodeId add_paper(PaperRecord record);

  // Appends an already-resolved edge; no dedup or counter bookkeeping.
  void add_edge(CitationEdge edge);

  IngestCounters& mutable_counters() noexcept { return counters_; }

  // Full invariant check: id index bijection, edge ranges, no self-loops,
  // no duplicate edges, code well-formedness. Throws ValidationError.
  void validate() const;

  friend bool operator==(const Corpus& a, const Corpus& b) {
    return a.papers_ == b.papers_ && a.edges_ == b.edges_;
  }

 private:
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::vector<PaperRecord> papers_;
  std::vector<CitationEdge> edges_;
  std::unordered_map<std::string, NodeId, StringHash, std::equal_to<>> id_index_;
  IngestCounters counters_;
};

// Sorts, dedups and checks a code list. Surrounding whitespace is trimmed;
// empty entries are discarded. Throws ValidationError on inner whitespace.
std::vector<std::string> make_code_set(std::vector<std::string> codes, bool normalize = false);

// --- Papers table: TSV, header `id\tyear\tcodes`, codes `;`-separated. ---

Corpus read_papers(std::istream& in, const IngestOptions& options = {},
                   const std::string& source = "<papers>");
Corpus load_papers(const std::filesystem::path& path, const IngestOptions& options = {});

// --- Edges table: TSV, header `citing\tcited`. ---

void read_edges(std::istream& in, Corpus& corpus, DanglingPolicy policy,
                const std::string& source = "<edges>");
Corpus load_edges(const std::filesystem::path& path, Corpus corpus,
                  DanglingPolicy policy = DanglingPolicy::stub);

void write_papers(std::ostream& out, const Corpus& corpus);
void write_edges(std::ostream& out, const Corpus& corpus);
void save_papers(const std::filesystem::path& path, const Corpus& corpus);
void save_edges(const std::filesystem::path& path, const Corpus& corpus);

// --- APS adapter ---
//
// Metadata: CSV with header `doi,year,pacs` (year may be a full date such as
// 1999-05-01; PACS codes separated by `;` or spaces). Citations: CSV with
// header `citing_doi,cited_doi`. Fields may be double-quoted.

Corpus read_aps_metadata(std::istream& in, const IngestOptions& options = {},
                         const std::string& source = "<aps-metadata>");
void read_aps_citations(std::istream& in, Corpus& corpus, DanglingPolicy policy,
                        const std::string& source = "<aps-citations>");
Corpus load_aps(const std::filesystem::path& metadata, const std::filesystem::path& citations,
                const IngestOptions& options = {});

}  // namespace refcascade
