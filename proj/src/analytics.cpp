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

#include "refcascade/analytics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "refcascade/error.hpp"

namespace refcascade {
namespace {

// Snaps computed log edges onto nearby integers so that integer sizes on a
// mathematically exact edge land in the upper bin.
double snap(double edge) {
  double r = std::round(edge);
  if (std::abs(edge - r) <= 1e-9 * std::max(1.0, std::abs(edge))) return r;
  return edge;
}

std::size_t bin_index(const std::vector<double>& edges, double v) {
  const std::size_t bins = edges.size() - 1;
  auto it = std::upper_bound(edges.begin(), edges.end(), v);
  if (it == edges.begin()) return 0;
  auto idx = static_cast<std::size_t>(it - edges.begin()) - 1;
  return std::min(idx, bins - 1);
}

}  // namespace

Cohort select_cohort(const Corpus& corpus, std::string_view code_prefix) {
  if (code_prefix.empty()) throw UsageError("cohort code prefix must not be empty");
  Cohort c;
  c.name = "prefix-" + std::string(code_prefix);
  c.selector = "code prefix '" + std::string(code_prefix) + "'";
  const auto& papers = corpus.papers();
  for (std::size_t i = 0; i < papers.size(); ++i) {
    const auto& codes = papers[i].codes;
    bool match = std::any_of(codes.begin(), codes.end(), [&](const std::string& code) {
      return code.starts_with(code_prefix);
    });
    if (match) c.focal_nodes.push_back(static_cast<NodeId>(i));
  }
  return c;
}

Cohort make_cohort(std::string name, std::vector<NodeId> nodes, std::string selector,
                   std::size_t node_count) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  if (!nodes.empty() && nodes.back() >= node_count) {
    throw IndexError("cohort node " + std::to_string(nodes.back()) + " out of range");
  }
  return Cohort{std::move(name), std::move(nodes), std::move(selector)};
}

CascadeRecord summarize(const Cascade& cascade, const CitationGraph& graph,
                        const TopicIndex& topics) {
  CascadeRecord r;
  r.focal = cascade.focal();
  r.focal_id = graph.label(cascade.focal());
  r.depth = cascade.depth();
  r.size = cascade.size();
  r.widths = cascade.widths();
  r.width = *std::max_element(r.widths.begin(), r.widths.end());
  r.relevance.reserve(r.depth);
  for (std::size_t g = 1; g <= r.depth; ++g) {
    r.relevance.push_back(layer_relevance(topics, cascade.focal(), cascade.layer(g)));
  }
  return r;
}

std::map<std::size_t, std::size_t> depth_distribution(std::span<const std::size_t> depths) {
  std::map<std::size_t, std::size_t> out;
  for (auto d : depths) ++out[d];
  return out;
}

std::map<std::size_t, std::size_t> depth_distribution(std::span<const CascadeRecord> records) {
  std::map<std::size_t, std::size_t> out;
  for (const auto& r : records) ++out[r.depth];
  return out;
}

Histogram size_histogram(std::span<const std::size_t> sizes, const Binning& binning) {
  Histogram h;
  if (sizes.empty()) return h;
  auto [lo_it, hi_it] = std::minmax_element(sizes.begin(), sizes.end());
  const double lo = static_cast<double>(std::max<std::size_t>(1, *lo_it));
  const double hi = static_cast<double>(std::max<std::size_t>(1, *hi_it));

  switch (binning.kind) {
    case Binning::Kind::log: {
      if (binning.bins < 1) throw UsageError("log binning needs at least one bin");
      const std::size_t n = lo == hi ? 1 : binning.bins;  // one closed bin [v, v]
      h.edges.resize(n + 1);
      for (std::size_t i = 0; i <= n; ++i) {
        h.edges[i] = snap(lo * std::pow(hi / lo, static_cast<double>(i) / n));
      }
      h.edges.front() = lo;
      h.edges.back() = hi;
      break;
    }
    case Binning::Kind::linear: {
      if (!(binning.bin_width > 0.0)) throw UsageError("linear bin width must be positive");
      auto n = static_cast<std::size_t>(std::floor(hi / binning.bin_width)) + 1;
      h.edges.resize(n + 1);
      for (std::size_t i = 0; i <= n; ++i) h.edges[i] = binning.bin_width * static_cast<double>(i);
      break;
    }
    case Binning::Kind::explicit_edges: {
      h.edges = binning.edges;
      if (h.edges.size() < 2 || !std::is_sorted(h.edges.begin(), h.edges.end()) ||
          std::adjacent_find(h.edges.begin(), h.edges.end()) != h.edges.end()) {
        throw UsageError("explicit bin edges must be strictly ascending with at least 2 entries");
      }
      if (static_cast<double>(*lo_it) < h.edges.front() ||
          static_cast<double>(*hi_it) > h.edges.back()) {
        throw UsageError("sizes fall outside the explicit bin edges");
      }
      break;
    }
  }
  h.counts.assign(h.edges.size() - 1, 0);
  for (auto s : sizes) ++h.counts[bin_index(h.edges, static_cast<double>(s))];
  return h;
}

std::vector<SizeInterval> find_vacuum_zones(const Histogram& histogram, double min_span_ratio) {
  std::vector<SizeInterval> zones;
  const auto& c = histogram.counts;
  std::size_t i = 0;
  while (i < c.size() && c[i] == 0) ++i;  // leading empty bins are not interior
  while (i < c.size()) {
    if (c[i] != 0) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < c.size() && c[i] == 0) ++i;
    if (i == c.size()) break;  // trailing run
    double low = histogram.edges[start];
    double high = histogram.edges[i];
    if (low <= 0.0 || high / low >= min_span_ratio) zones.push_back({low, high});
  }
  return zones;
}

std::vector<SizeInterval> find_vacuum_zones(std::span<const std::size_t> sizes,
                                            const Binning& binning, double min_span_ratio) {
  return find_vacuum_zones(size_histogram(sizes, binning), min_span_ratio);
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

namespace {

std::size_t max_depth_of(std::span<const CascadeRecord> records) {
  std::size_t d = 0;
  for (const auto& r : records) d = std::max(d, r.depth);
  return d;
}

}  // namespace

std::vector<GenerationStats> median_width_per_generation(std::span<const CascadeRecord> records,
                                                         bool include_unreached) {
  const std::size_t deepest = max_depth_of(records);
  std::vector<GenerationStats> out;
  out.reserve(deepest);
  std::vector<double> values;
  for (std::size_t g = 1; g <= deepest; ++g) {
    values.clear();
    GenerationStats s;
    s.generation = g;
    for (const auto& r : records) {
      if (r.depth >= g) {
        ++s.reach_count;
        values.push_back(static_cast<double>(r.widths[g]));
      } else if (include_unreached) {
        values.push_back(0.0);
      }
    }
    s.median_width = median(values);
    out.push_back(s);
  }
  return out;
}

std::vector<GenerationStats> mean_relevance_per_generation(
    std::span<const CascadeRecord> records) {
  const std::size_t deepest = max_depth_of(records);
  std::vector<GenerationStats> out(deepest);
  std::vector<double> mean_sum(deepest, 0.0);
  std::vector<double> pooled_sum(deepest, 0.0);
  for (std::size_t g = 1; g <= deepest; ++g) out[g - 1].generation = g;
  // Records are visited in cohort order, so the floating-point sums are
  // reproducible.
  for (const auto& r : records) {
    for (std::size_t g = 1; g <= r.depth; ++g) {
      auto& s = out[g - 1];
      ++s.reach_count;
      const auto& rel = r.relevance[g - 1];
      if (auto m = rel.mean()) {
        mean_sum[g - 1] += *m;
        ++s.relevance_sample_count;
      }
      pooled_sum[g - 1] += rel.sum;
      s.pooled_pair_count += rel.count;
    }
  }
  for (std::size_t i = 0; i < deepest; ++i) {
    auto& s = out[i];
    if (s.relevance_sample_count > 0) {
      s.mean_relevance = mean_sum[i] / static_cast<double>(s.relevance_sample_count);
    }
    if (s.pooled_pair_count > 0) {
      s.pooled_relevance = pooled_sum[i] / static_cast<double>(s.pooled_pair_count);
    }
  }
  return out;
}

CohortReport aggregate(Cohort cohort, const CohortOptions& options,
                       std::vector<CascadeRecord> records) {
  CohortReport report;
  report.cohort = std::move(cohort);
  report.options = options;
  report.cascades = std::move(records);
  const auto& recs = report.cascades;

  report.depth_distribution = depth_distribution(std::span<const CascadeRecord>(recs));

  std::vector<std::size_t> sizes;
  sizes.reserve(recs.size());
  for (const auto& r : recs) sizes.push_back(r.size);
  report.log_histogram = size_histogram(sizes, Binning::log(options.log_bins));
  report.linear_histogram = size_histogram(sizes, Binning::linear(options.linear_bin_width));
  report.vacuum_zones = find_vacuum_zones(report.log_histogram, options.min_span_ratio);

  auto widths = median_width_per_generation(recs, options.include_unreached);
  auto relevance = mean_relevance_per_generation(recs);
  for (std::size_t i = 0; i < widths.size(); ++i) {
    widths[i].mean_relevance = relevance[i].mean_relevance;
    widths[i].relevance_sample_count = relevance[i].relevance_sample_count;
    widths[i].pooled_relevance = relevance[i].pooled_relevance;
    widths[i].pooled_pair_count = relevance[i].pooled_pair_count;
  }
  report.generations = std::move(widths);

  auto& s = report.summary;
  s.cohort_size = recs.size();
  for (const auto& r : recs) {
    s.max_depth = std::max(s.max_depth, r.depth);
    s.max_size = std::max(s.max_size, r.size);
    if (r.depth == 0) ++s.zero_reference_count;
  }
  s.zero_reference_fraction =
      recs.empty() ? 0.0
                   : static_cast<double>(s.zero_reference_count) / static_cast<double>(recs.size());
  return report;
}

CohortReport run_cohort(const CitationGraph& graph, const TopicIndex& topics,
                        const Cohort& cohort, const CohortOptions& options) {
  if (options.workers < 1) throw UsageError("worker count must be at least 1");
  if (topics.node_count() != graph.node_count()) {
    throw UsageError("topic index and graph disagree on node count");
  }
  const auto& focal = cohort.focal_nodes;
  for (NodeId f : focal) {
    if (f >= graph.node_count()) {
      throw IndexError("cohort node " + std::to_string(f) + " out of range");
    }
  }

  std::vector<CascadeRecord> records(focal.size());
  std::vector<std::exception_ptr> errors(focal.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};

  auto work = [&] {
    CascadeBuilder builder(graph);
    Cascade scratch;
    for (;;) {
      std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= focal.size() || failed.load(std::memory_order_relaxed)) return;
      try {
        builder.build_into(scratch, focal[i], options.direction, options.max_depth);
        records[i] = summarize(scratch, graph, topics);
      } catch (...) {
        errors[i] = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
      }
    }
  };

  const std::size_t workers = std::min(options.workers, std::max<std::size_t>(1, focal.size()));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i]) continue;
    std::string what = "unknown error";
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    throw Error("cascade for focal '" + graph.label(focal[i]) + "' failed: " + what);
  }

  CohortOptions effective = options;
  effective.relevance = topics.config();
  return aggregate(cohort, effective, std::move(records));
}

CohortReport run_cohort(const CitationGraph& graph, const Corpus& corpus, const Cohort& cohort,
                        const CohortOptions& options) {
  TopicIndex topics(corpus, options.relevance);
  return run_cohort(graph, topics, cohort, options);
}

}  // namespace refcascade
