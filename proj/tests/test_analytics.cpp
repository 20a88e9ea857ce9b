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

#include <doctest.h>

#include <random>

#include "golden_params.hpp"
#include "refcascade/analytics.hpp"
#include "refcascade/error.hpp"
#include "refcascade/report.hpp"
#include "refcascade/synth.hpp"
#include "support.hpp"

using namespace refcascade;
using testing::named_corpus;

namespace {

CascadeRecord record(std::size_t depth, std::vector<std::size_t> widths = {},
                     std::vector<RelevanceSum> relevance = {}) {
  CascadeRecord r;
  r.depth = depth;
  if (widths.empty()) widths.assign(depth + 1, 1);
  r.widths = widths;
  r.size = 0;
  for (auto w : widths) r.size += w;
  r.width = *std::max_element(widths.begin(), widths.end());
  if (relevance.empty()) relevance.assign(depth, RelevanceSum{});
  r.relevance = relevance;
  return r;
}

std::size_t total(const Histogram& h) {
  std::size_t s = 0;
  for (auto c : h.counts) s += c;
  return s;
}

}  // namespace

TEST_CASE("select_cohort matches code prefixes") {
  Corpus c = named_corpus({{"A", {"21.60.Cs"}}, {"B", {"52.35.-g"}}, {"C", {}}}, {});
  auto two = select_cohort(c, "2");
  CHECK(two.focal_nodes == std::vector<NodeId>{0});
  CHECK(select_cohort(c, "5").focal_nodes == std::vector<NodeId>{1});
  CHECK(select_cohort(c, "9").focal_nodes.empty());
  CHECK_THROWS_AS(select_cohort(c, ""), UsageError);
  CHECK(make_cohort("x", {2, 0, 2}, "", 3).focal_nodes == std::vector<NodeId>{0, 2});
  CHECK_THROWS_AS(make_cohort("x", {3}, "", 3), IndexError);
}

TEST_CASE("depth_distribution counts") {
  std::vector<std::size_t> depths = {0, 1, 1, 3};
  CHECK(depth_distribution(depths) == std::map<std::size_t, std::size_t>{{0, 1}, {1, 2}, {3, 1}});
  CHECK(depth_distribution(std::span<const std::size_t>{}).empty());
  std::vector<std::size_t> same(9, 4);
  CHECK(depth_distribution(same) == std::map<std::size_t, std::size_t>{{4, 9}});
}

TEST_CASE("size_histogram binning rules") {
  SUBCASE("log bins are half-open except the last") {
    std::vector<std::size_t> sizes = {1, 10, 100};
    auto h = size_histogram(sizes, Binning::log(2));
    CHECK(h.edges == std::vector<double>{1, 10, 100});
    CHECK(h.counts == std::vector<std::size_t>{1, 2});
  }
  SUBCASE("linear bins start at zero") {
    std::vector<std::size_t> sizes(7, 5);
    auto h = size_histogram(sizes, Binning::linear(10));
    CHECK(h.edges == std::vector<double>{0, 10});
    CHECK(h.counts == std::vector<std::size_t>{7});
    std::vector<std::size_t> edge_case = {10, 20};
    auto e = size_histogram(edge_case, Binning::linear(10));
    CHECK(e.counts == std::vector<std::size_t>{0, 1, 1});
  }
  SUBCASE("explicit edges") {
    std::vector<std::size_t> sizes = {1, 4, 5, 9};
    auto h = size_histogram(sizes, Binning::explicit_edges({1, 5, 9}));
    CHECK(h.counts == std::vector<std::size_t>{2, 2});
    CHECK_THROWS_AS(size_histogram(sizes, Binning::explicit_edges({2, 9})), UsageError);
    CHECK_THROWS_AS(size_histogram(sizes, Binning::explicit_edges({1, 1, 9})), UsageError);
  }
  SUBCASE("usage errors and degenerate inputs") {
    std::vector<std::size_t> sizes = {3, 3};
    CHECK_THROWS_AS(size_histogram(sizes, Binning::log(0)), UsageError);
    auto h = size_histogram(sizes, Binning::log(4));
    CHECK(h.edges == std::vector<double>{3, 3});
    CHECK(h.counts == std::vector<std::size_t>{2});
    CHECK(size_histogram(std::span<const std::size_t>{}, Binning::log(4)).counts.empty());
  }
  SUBCASE("property: counts are conserved") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 300; ++trial) {
      std::vector<std::size_t> sizes(1 + rng() % 200);
      for (auto& s : sizes) s = 1 + rng() % (1 + rng() % 100000);
      CHECK(total(size_histogram(sizes, Binning::log(1 + rng() % 30))) == sizes.size());
      CHECK(total(size_histogram(sizes, Binning::linear(1.0 + rng() % 5000))) == sizes.size());
    }
  }
}

TEST_CASE("find_vacuum_zones") {
  Histogram h;
  h.edges = {1, 2, 4, 8, 16, 32, 64};
  h.counts = {5, 3, 0, 0, 0, 7};
  CHECK(find_vacuum_zones(h) == std::vector<SizeInterval>{{4, 32}});

  Histogram leading{{1, 2, 4, 8, 16}, {0, 0, 4, 4}};
  CHECK(find_vacuum_zones(leading).empty());
  Histogram trailing{{1, 2, 4, 8, 16}, {4, 4, 0, 0}};
  CHECK(find_vacuum_zones(trailing).empty());
  Histogram full{{1, 2, 4}, {1, 1}};
  CHECK(find_vacuum_zones(full).empty());
  // A single empty bin of ratio 1.5 is below the default span ratio.
  Histogram narrow{{2, 4, 6, 8}, {1, 0, 1}};
  CHECK(find_vacuum_zones(narrow).empty());
  CHECK(find_vacuum_zones(narrow, 1.5) == std::vector<SizeInterval>{{4, 6}});
}

TEST_CASE("median width per generation") {
  std::vector<CascadeRecord> recs = {record(1, {1, 2}), record(1, {1, 4}), record(1, {1, 9})};
  auto s = median_width_per_generation(recs);
  REQUIRE(s.size() == 1);
  CHECK(s[0].median_width == 4.0);
  CHECK(s[0].reach_count == 3);

  std::vector<CascadeRecord> even = {record(1, {1, 2}), record(1, {1, 4})};
  CHECK(median_width_per_generation(even)[0].median_width == 3.0);

  std::vector<CascadeRecord> flat = {record(0), record(0)};
  CHECK(median_width_per_generation(flat).empty());

  std::vector<CascadeRecord> mixed = {record(0), record(0), record(2, {1, 6, 2})};
  auto reached = median_width_per_generation(mixed);
  CHECK(reached[0].median_width == 6.0);
  auto padded = median_width_per_generation(mixed, true);
  CHECK(padded[0].median_width == 0.0);
  CHECK(padded[0].reach_count == 1);
}

TEST_CASE("mean relevance per generation") {
  std::vector<CascadeRecord> recs = {
      record(2, {1, 1, 1}, {{1.0, 1}, {0.5, 1}}),
      record(2, {1, 1, 1}, {{0.0, 0}, {0.0, 0}}),
  };
  auto s = mean_relevance_per_generation(recs);
  REQUIRE(s.size() == 2);
  CHECK(s[1].mean_relevance == 0.5);
  CHECK(s[1].relevance_sample_count == 1);
  CHECK(s[1].reach_count == 2);

  std::vector<CascadeRecord> none = {record(3), record(1)};
  for (const auto& g : mean_relevance_per_generation(none)) {
    CHECK_FALSE(g.mean_relevance.has_value());
  }

  // Per-cascade mean vs pooled pair mean.
  std::vector<CascadeRecord> pool = {record(1, {1, 2}, {{1.0, 2}}),
                                     record(1, {1, 1}, {{1.0, 1}})};
  auto p = mean_relevance_per_generation(pool);
  CHECK(*p[0].mean_relevance == doctest::Approx(0.75));
  CHECK(*p[0].pooled_relevance == doctest::Approx(2.0 / 3.0));
  CHECK(p[0].pooled_pair_count == 3);
}

TEST_CASE("single-cascade cohort reproduces its own relevances") {
  Corpus c = named_corpus({{"F", {"a", "b"}}, {"X", {"a", "b"}}, {"Y", {"a", "c"}}, {"W", {"a"}}},
                          {{"F", "X"}, {"F", "Y"}, {"X", "W"}});
  CitationGraph g = CitationGraph::build(c);
  auto report = run_cohort(g, c, make_cohort("one", {0}, "", c.size()), {});
  REQUIRE(report.generations.size() == 2);
  CHECK(*report.generations[0].mean_relevance == doctest::Approx(2.0 / 3.0));
  CHECK(*report.generations[1].mean_relevance == doctest::Approx(0.5));
}

TEST_CASE("degenerate cohorts") {
  Corpus c = named_corpus({{"A", {"21"}}, {"B", {"22"}}}, {{"B", "A"}});
  CitationGraph g = CitationGraph::build(c);
  auto report = run_cohort(g, c, make_cohort("free", {0}, "", 2), {});
  CHECK(report.summary.zero_reference_fraction == 1.0);
  CHECK(report.summary.max_depth == 0);
  CHECK(report.summary.max_size == 1);
  CHECK(report.generations.empty());

  auto empty = run_cohort(g, c, select_cohort(c, "9"), {});
  CHECK(empty.summary.cohort_size == 0);
  CHECK(empty.depth_distribution.empty());
  CHECK(empty.log_histogram.counts.empty());
  CHECK(empty.summary.zero_reference_fraction == 0.0);

  CohortOptions bad;
  bad.workers = 0;
  CHECK_THROWS_AS(run_cohort(g, c, select_cohort(c, "2"), bad), UsageError);
}

TEST_CASE("run_cohort is independent of worker count") {
  SynthParams p;
  p.n_papers = 600;
  p.refs = RefCountSpec::uniform(0, 6);
  p.recency_half_life = 80.0;
  p.seed = 99;
  Corpus c = generate(p);
  CitationGraph g = CitationGraph::build(c);
  auto cohort = select_cohort(c, "0");
  CohortOptions opt;
  opt.workers = 1;
  auto one = report_to_json(run_cohort(g, c, cohort, opt)).dump();
  for (std::size_t w : {2u, 3u, 8u}) {
    opt.workers = w;
    CHECK(report_to_json(run_cohort(g, c, cohort, opt)).dump() == one);
  }
}

TEST_CASE("report accounting invariants on synthetic cohorts") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    SynthParams p;
    p.n_papers = 400;
    p.refs = RefCountSpec::geometric(0.25, 10);
    p.attachment = AttachmentSpec::preferential(1.0);
    p.seed = seed;
    Corpus c = generate(p);
    CitationGraph g = CitationGraph::build(c);
    auto r = run_cohort(g, c, select_cohort(c, "1"), {});
    std::size_t depth_total = 0;
    for (auto [d, n] : r.depth_distribution) depth_total += n;
    CHECK(depth_total == r.summary.cohort_size);
    CHECK(total(r.log_histogram) == r.summary.cohort_size);
    CHECK(total(r.linear_histogram) == r.summary.cohort_size);
    std::size_t no_refs = 0;
    for (NodeId f : r.cohort.focal_nodes) no_refs += g.out_degree(f) == 0;
    CHECK(r.summary.zero_reference_count == no_refs);
    CHECK(r.depth_distribution[0] == no_refs);
    for (std::size_t i = 1; i < r.generations.size(); ++i) {
      CHECK(r.generations[i].reach_count <= r.generations[i - 1].reach_count);
      CHECK(r.generations[i].reach_count >= r.generations[i].relevance_sample_count);
    }
  }
}

TEST_CASE("golden 200-paper cohort report") {
  const std::filesystem::path data = REFCASCADE_TEST_DATA;
  Corpus corpus = load_edges(data / "synth200_edges.tsv", load_papers(data / "synth200_papers.tsv"),
                             DanglingPolicy::error);
  auto golden = nlohmann::ordered_json::parse(testing::read_text(data / "golden_cohort_200.json"));

  // The naive oracle still agrees with the committed file.
  CHECK(testing::json_close(testing::naive_cohort_report(corpus, testing::kGoldenPrefix), golden));

  CitationGraph g = CitationGraph::build(corpus);
  CohortOptions opt;
  opt.workers = 4;
  auto report = run_cohort(g, corpus, select_cohort(corpus, testing::kGoldenPrefix), opt);
  CHECK(testing::json_close(report_to_json(report), golden));
}
