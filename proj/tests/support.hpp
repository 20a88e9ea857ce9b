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

// Test-only helpers. The oracles here work from raw edge lists and string
// code sets and share no code path with the library's traversal or
// aggregation.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "refcascade/corpus.hpp"

namespace refcascade::testing {

inline constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

using RawEdge = std::pair<std::size_t, std::size_t>;  // citing -> cited

// Single-source hop distances by repeated relaxation until a fixed point.
// backward walks citing -> cited; forward walks cited -> citing.
inline std::vector<std::size_t> relaxation_distances(std::size_t n,
                                                     const std::vector<RawEdge>& edges,
                                                     std::size_t source, bool backward,
                                                     std::optional<std::size_t> limit = {}) {
  std::vector<std::size_t> dist(n, kUnreached);
  dist[source] = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (auto [citing, cited] : edges) {
      std::size_t from = backward ? citing : cited;
      std::size_t to = backward ? cited : citing;
      if (dist[from] == kUnreached) continue;
      if (limit && dist[from] + 1 > *limit) continue;
      if (dist[from] + 1 < dist[to]) {
        dist[to] = dist[from] + 1;
        changed = true;
      }
    }
  }
  return dist;
}

// Layers from a distance vector.
inline std::vector<std::vector<std::uint32_t>> layers_from(const std::vector<std::size_t>& dist) {
  std::vector<std::vector<std::uint32_t>> layers;
  for (std::size_t v = 0; v < dist.size(); ++v) {
    if (dist[v] == kUnreached) continue;
    if (layers.size() <= dist[v]) layers.resize(dist[v] + 1);
    layers[dist[v]].push_back(static_cast<std::uint32_t>(v));
  }
  return layers;
}

struct RandomGraph {
  std::size_t n = 0;
  std::vector<RawEdge> edges;  // no self-loops, no duplicates
};

// Mixed-density random digraph; with `cycles` some back edges are injected.
inline RandomGraph random_graph(std::mt19937_64& rng, std::size_t max_nodes, bool cycles) {
  RandomGraph g;
  g.n = 1 + rng() % max_nodes;
  const double density_choices[] = {0.0, 0.5, 1.0, 2.0, 4.0, 8.0};
  double mean_out = density_choices[rng() % 6];
  std::size_t target = static_cast<std::size_t>(mean_out * static_cast<double>(g.n));
  std::set<RawEdge> seen;
  for (std::size_t k = 0; k < target * 2 && seen.size() < target; ++k) {
    std::size_t a = rng() % g.n;
    std::size_t b = rng() % g.n;
    if (a == b) continue;
    // Mostly cite older (lower) ids; cycles come from the remainder.
    if (!cycles && a < b) std::swap(a, b);
    if (cycles && a < b && rng() % 4 != 0) std::swap(a, b);
    seen.insert({a, b});
  }
  g.edges.assign(seen.begin(), seen.end());
  std::shuffle(g.edges.begin(), g.edges.end(), rng);
  return g;
}

inline std::string node_name(std::size_t i) { return "P" + std::to_string(i); }

inline Corpus corpus_from(const RandomGraph& g,
                          const std::vector<std::vector<std::string>>& codes = {}) {
  Corpus c;
  for (std::size_t i = 0; i < g.n; ++i) {
    PaperRecord p{node_name(i), std::nullopt, {}};
    if (i < codes.size()) p.codes = make_code_set(codes[i]);
    c.add_paper(std::move(p));
  }
  for (auto [a, b] : g.edges) {
    c.add_edge({static_cast<NodeId>(a), static_cast<NodeId>(b)});
  }
  return c;
}

// Builds a corpus from single-letter style names: papers in order given,
// edges as (citing, cited) name pairs.
inline Corpus named_corpus(const std::vector<std::pair<std::string, std::vector<std::string>>>& papers,
                           const std::vector<std::pair<std::string, std::string>>& edges) {
  Corpus c;
  for (const auto& [id, codes] : papers) c.add_paper({id, std::nullopt, make_code_set(codes)});
  for (const auto& [a, b] : edges) c.add_edge({*c.find(a), *c.find(b)});
  return c;
}

inline std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("refcascade_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// Structural JSON equality with a relative tolerance on floating numbers.
inline bool json_close(const nlohmann::ordered_json& a, const nlohmann::ordered_json& b,
                       double tol = 1e-12) {
  if (a.is_number() && b.is_number()) {
    double x = a.get<double>(), y = b.get<double>();
    return std::abs(x - y) <= tol * std::max({1.0, std::abs(x), std::abs(y)});
  }
  if (a.type() != b.type()) return false;
  if (a.is_array()) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!json_close(a[i], b[i], tol)) return false;
    }
    return true;
  }
  if (a.is_object()) {
    if (a.size() != b.size()) return false;
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (!b.contains(it.key()) || !json_close(it.value(), b[it.key()], tol)) return false;
    }
    return true;
  }
  return a == b;
}

// ---------------------------------------------------------------------------
// Naive cohort pipeline: relaxation distances, std::set Jaccard over the
// truncation-free code strings, sort-based medians and linear-scan binning.
// Produces the same JSON schema as report_to_json for the default options
// (backward, full codes, exclude, 20 log bins, width-5000 linear bins,
// span ratio 2, reaching-only medians).

struct NaiveInput {
  std::vector<std::string> ids;
  std::vector<std::set<std::string>> codes;
  std::vector<RawEdge> edges;
};

inline NaiveInput naive_input(const Corpus& c) {
  NaiveInput in;
  for (const auto& p : c.papers()) {
    in.ids.push_back(p.external_id);
    in.codes.emplace_back(p.codes.begin(), p.codes.end());
  }
  for (const auto& e : c.edges()) in.edges.emplace_back(e.citing, e.cited);
  return in;
}

inline std::optional<double> naive_jaccard(const std::set<std::string>& a,
                                           const std::set<std::string>& b) {
  std::set<std::string> u = a;
  u.insert(b.begin(), b.end());
  if (u.empty()) return std::nullopt;
  std::size_t shared = 0;
  for (const auto& x : a) shared += b.count(x);
  return static_cast<double>(shared) / static_cast<double>(u.size());
}

inline double naive_median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  if (v.empty()) return 0.0;
  return v.size() % 2 ? v[v.size() / 2] : (v[v.size() / 2 - 1] + v[v.size() / 2]) / 2.0;
}

inline nlohmann::ordered_json naive_histogram(const std::vector<std::size_t>& sizes,
                                              std::vector<double> edges) {
  std::vector<std::size_t> counts(edges.size() - 1, 0);
  for (auto s : sizes) {
    double v = static_cast<double>(s);
    for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
      bool last = b + 2 == edges.size();
      if (v >= edges[b] && (v < edges[b + 1] || (last && v <= edges[b + 1]))) {
        ++counts[b];
        break;
      }
    }
  }
  return {{"edges", edges}, {"counts", counts}};
}

inline nlohmann::ordered_json naive_cohort_report(const Corpus& corpus,
                                                  const std::string& prefix) {
  using Json = nlohmann::ordered_json;
  NaiveInput in = naive_input(corpus);
  const std::size_t n = in.ids.size();

  std::vector<std::size_t> focal;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& code : in.codes[i]) {
      if (code.rfind(prefix, 0) == 0) {
        focal.push_back(i);
        break;
      }
    }
  }

  struct Row {
    std::size_t depth, size, width;
    std::vector<std::size_t> widths;
    std::vector<std::optional<double>> gen_mean;
    std::vector<double> gen_sum;
    std::vector<std::size_t> gen_count;
  };
  std::vector<Row> rows;
  for (std::size_t f : focal) {
    auto layers = layers_from(relaxation_distances(n, in.edges, f, true));
    Row r;
    r.depth = layers.size() - 1;
    r.size = 0;
    r.width = 0;
    for (const auto& l : layers) {
      r.widths.push_back(l.size());
      r.size += l.size();
      r.width = std::max(r.width, l.size());
    }
    for (std::size_t g = 1; g < layers.size(); ++g) {
      double sum = 0;
      std::size_t count = 0;
      if (!in.codes[f].empty()) {
        for (auto p : layers[g]) {
          if (in.codes[p].empty()) continue;
          sum += *naive_jaccard(in.codes[f], in.codes[p]);
          ++count;
        }
      }
      r.gen_sum.push_back(sum);
      r.gen_count.push_back(count);
      r.gen_mean.push_back(count ? std::optional<double>(sum / count) : std::nullopt);
    }
    rows.push_back(std::move(r));
  }

  Json j;
  j["cohort"] = {{"name", "prefix-" + prefix},
                 {"selector", "code prefix '" + prefix + "'"},
                 {"size", focal.size()}};
  j["parameters"] = {{"direction", "backward"},    {"code_level", "full"},
                     {"empty_codes", "exclude"},   {"max_depth", nullptr},
                     {"log_bins", 20},             {"linear_bin_width", 5000.0},
                     {"min_span_ratio", 2.0},      {"include_unreached", false},
                     {"relevance_aggregation", "cascade_mean"}};

  std::size_t max_depth = 0, max_size = 0, zero = 0;
  std::map<std::size_t, std::size_t> depths;
  std::vector<std::size_t> sizes;
  for (const auto& r : rows) {
    max_depth = std::max(max_depth, r.depth);
    max_size = std::max(max_size, r.size);
    zero += r.depth == 0;
    ++depths[r.depth];
    sizes.push_back(r.size);
  }
  j["summary"] = {{"cohort_size", rows.size()},
                  {"max_depth", max_depth},
                  {"max_size", max_size},
                  {"zero_reference_count", zero},
                  {"zero_reference_fraction",
                   rows.empty() ? 0.0 : static_cast<double>(zero) / rows.size()}};
  Json dd = Json::array();
  for (auto [d, c] : depths) dd.push_back({{"depth", d}, {"count", c}});
  j["depth_distribution"] = dd;

  Json log_h = {{"edges", Json::array()}, {"counts", Json::array()}};
  Json lin_h = log_h;
  Json zones = Json::array();
  if (!sizes.empty()) {
    double lo = static_cast<double>(*std::min_element(sizes.begin(), sizes.end()));
    double hi = static_cast<double>(max_size);
    std::vector<double> edges;
    for (int i = 0; i <= (lo == hi ? 1 : 20); ++i) {
      double e = lo * std::pow(hi / lo, i / 20.0);
      if (std::abs(e - std::round(e)) <= 1e-9 * std::max(1.0, e)) e = std::round(e);
      edges.push_back(e);
    }
    edges.front() = lo;
    edges.back() = hi;
    log_h = naive_histogram(sizes, edges);
    std::vector<double> lin;
    for (double e = 0; lin.empty() || lin.back() <= hi; e += 5000.0) lin.push_back(e);
    lin_h = naive_histogram(sizes, lin);

    auto counts = log_h["counts"].get<std::vector<std::size_t>>();
    for (std::size_t a = 0; a < counts.size(); ++a) {
      if (counts[a] != 0) continue;
      std::size_t b = a;
      while (b < counts.size() && counts[b] == 0) ++b;
      bool left = std::any_of(counts.begin(), counts.begin() + a, [](auto c) { return c > 0; });
      bool right = b < counts.size();
      if (left && right && edges[b] / edges[a] >= 2.0) {
        zones.push_back({{"low", edges[a]}, {"high", edges[b]}});
      }
      a = b;
    }
  }
  j["size_histograms"] = {{"log", log_h}, {"linear", lin_h}};
  j["vacuum_zones"] = zones;

  Json gens = Json::array();
  for (std::size_t g = 1; g <= max_depth; ++g) {
    std::vector<double> widths;
    double mean_sum = 0, pooled = 0;
    std::size_t samples = 0, pairs = 0;
    for (const auto& r : rows) {
      if (r.depth < g) continue;
      widths.push_back(static_cast<double>(r.widths[g]));
      if (r.gen_mean[g - 1]) {
        mean_sum += *r.gen_mean[g - 1];
        ++samples;
      }
      pooled += r.gen_sum[g - 1];
      pairs += r.gen_count[g - 1];
    }
    gens.push_back({{"generation", g},
                    {"reach_count", widths.size()},
                    {"median_width", naive_median(widths)},
                    {"mean_relevance", samples ? Json(mean_sum / samples) : Json(nullptr)},
                    {"relevance_sample_count", samples},
                    {"pooled_relevance", pairs ? Json(pooled / pairs) : Json(nullptr)},
                    {"pooled_pair_count", pairs}});
  }
  j["generations"] = gens;

  Json cascades = Json::array();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    cascades.push_back({{"focal", in.ids[focal[k]]},
                        {"depth", rows[k].depth},
                        {"size", rows[k].size},
                        {"width", rows[k].width}});
  }
  j["cascades"] = cascades;
  return j;
}

}  // namespace refcascade::testing
