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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "refcascade/cascade.hpp"
#include "refcascade/corpus.hpp"
#include "refcascade/graph.hpp"
#include "refcascade/relevance.hpp"

namespace refcascade {

// A set of focal papers analysed together.
struct Cohort {
  std::string name;
  std::vector<NodeId> focal_nodes;  // sorted, duplicate-free
  std::string selector;
};

// Papers with at least one code starting with `code_prefix`. Throws
// UsageError on an empty prefix.
Cohort select_cohort(const Corpus& corpus, std::string_view code_prefix);

// Sorts and dedups `nodes`; throws IndexError if any node >= node_count.
Cohort make_cohort(std::string name, std::vector<NodeId> nodes, std::string selector,
                   std::size_t node_count);

// Everything the cohort aggregates need from one cascade, without keeping
// its layers alive.
struct CascadeRecord {
  NodeId focal = 0;
  std::string focal_id;
  std::size_t depth = 0;
  std::size_t size = 1;
  std::size_t width = 1;
  std::vector<std::size_t> widths;       // widths[g], g = 0..depth
  std::vector<RelevanceSum> relevance;   // relevance[g - 1], g = 1..depth
};

CascadeRecord summarize(const Cascade& cascade, const CitationGraph& graph,
                        const TopicIndex& topics);

std::map<std::size_t, std::size_t> depth_distribution(std::span<const std::size_t> depths);
std::map<std::size_t, std::size_t> depth_distribution(std::span<const CascadeRecord> records);

// Histogram binning. Bins are half-open [lo, hi) except the last, which is
// closed.
struct Binning {
  enum class Kind { log, linear, explicit_edges };

  Kind kind = Kind::log;
  std::size_t bins = 20;        // log
  double bin_width = 5000.0;    // linear
  std::vector<double> edges;    // explicit

  static Binning log(std::size_t bins) { return {Kind::log, bins, 0.0, {}}; }
  static Binning linear(double width) { return {Kind::linear, 0, width, {}}; }
  static Binning explicit_edges(std::vector<double> edges) {
    return {Kind::explicit_edges, 0, 0.0, std::move(edges)};
  }
};

struct Histogram {
  std::vector<double> edges;         // counts.size() + 1 entries
  std::vector<std::size_t> counts;

  friend bool operator==(const Histogram&, const Histogram&) = default;
};

// log: `bins` geometrically spaced edges from max(1, min size) to max size.
// linear: width-`bin_width` bins starting at 0, as many as needed to cover
// the max. explicit: caller's ascending edges; values outside throw.
// An empty input yields an empty histogram.
Histogram size_histogram(std::span<const std::size_t> sizes, const Binning& binning);

struct SizeInterval {
  double low = 0.0;
  double high = 0.0;

  friend bool operator==(const SizeInterval&, const SizeInterval&) = default;
};

// Maximal runs of empty bins with populated bins on both sides whose
// high/low ratio is at least `min_span_ratio`.
std::vector<SizeInterval> find_vacuum_zones(const Histogram& histogram,
                                            double min_span_ratio = 2.0);
std::vector<SizeInterval> find_vacuum_zones(std::span<const std::size_t> sizes,
                                            const Binning& binning,
                                            double min_span_ratio = 2.0);

struct GenerationStats {
  std::size_t generation = 0;
  std::size_t reach_count = 0;            // cascades with depth >= generation
  double median_width = 0.0;
  std::optional<double> mean_relevance;   // mean of per-cascade means
  std::size_t relevance_sample_count = 0;
  std::optional<double> pooled_relevance; // mean over all comparable pairs
  std::size_t pooled_pair_count = 0;
};

double median(std::vector<double> values);

// Generations 1..max depth. Median over reaching cascades only unless
// include_unreached, in which case unreached cascades contribute width 0.
std::vector<GenerationStats> median_width_per_generation(std::span<const CascadeRecord> records,
                                                         bool include_unreached = false);

// Generations 1..max depth; only the relevance fields and reach_count are set.
std::vector<GenerationStats> mean_relevance_per_generation(
    std::span<const CascadeRecord> records);

struct CohortOptions {
  Direction direction = Direction::backward;
  RelevanceConfig relevance;
  std::size_t workers = 1;
  std::optional<std::size_t> max_depth;
  std::size_t log_bins = 20;
  double linear_bin_width = 5000.0;
  double min_span_ratio = 2.0;
  bool include_unreached = false;
  // Selects the pooled aggregate for the generations.csv relevance column.
  bool pooled_relevance = false;
};

struct CohortSummary {
  std::size_t cohort_size = 0;
  std::size_t max_depth = 0;
  std::size_t max_size = 0;
  std::size_t zero_reference_count = 0;
  double zero_reference_fraction = 0.0;
};

struct CohortReport {
  Cohort cohort;
  CohortOptions options;
  std::vector<CascadeRecord> cascades;   // cohort order
  std::map<std::size_t, std::size_t> depth_distribution;
  Histogram log_histogram;
  Histogram linear_histogram;
  std::vector<SizeInterval> vacuum_zones;   // on the log histogram
  std::vector<GenerationStats> generations;
  CohortSummary summary;
};

// Builds every focal cascade across `options.workers` threads and aggregates.
// The report is independent of the worker count. `topics` must have been
// built with options.relevance.
CohortReport run_cohort(const CitationGraph& graph, const TopicIndex& topics,
                        const Cohort& cohort, const CohortOptions& options);
CohortReport run_cohort(const CitationGraph& graph, const Corpus& corpus, const Cohort& cohort,
                        const CohortOptions& options);

// Aggregation step of run_cohort, exposed for testing.
CohortReport aggregate(Cohort cohort, const CohortOptions& options,
                       std::vector<CascadeRecord> records);

}  // namespace refcascade
