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

#include "refcascade/report.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "refcascade/error.hpp"

namespace refcascade {
namespace {

Json optional_number(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

std::string optional_text(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

template <typename Fn>
std::string render(Fn&& fn) {
  std::ostringstream s;
  fn(s);
  return s.str();
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

Json cascade_to_json(const Cascade& cascade, const CitationGraph& graph) {
  Json j;
  j["focal"] = graph.label(cascade.focal());
  j["direction"] = std::string(to_string(cascade.direction()));
  j["depth"] = cascade.depth();
  j["size"] = cascade.size();
  j["widths"] = cascade.widths();
  Json layers = Json::array();
  for (const auto& layer : cascade.layers()) {
    std::vector<std::string> ids;
    ids.reserve(layer.size());
    for (NodeId v : layer) ids.push_back(graph.label(v));
    std::sort(ids.begin(), ids.end());
    layers.push_back(std::move(ids));
  }
  j["layers"] = std::move(layers);
  return j;
}

Json report_to_json(const CohortReport& report) {
  const auto& opt = report.options;
  Json j;
  j["cohort"] = {{"name", report.cohort.name},
                 {"selector", report.cohort.selector},
                 {"size", report.cohort.focal_nodes.size()}};
  j["parameters"] = {
      {"direction", std::string(to_string(opt.direction))},
      {"code_level", std::string(to_string(opt.relevance.code_level))},
      {"empty_codes", std::string(to_string(opt.relevance.empty_codes))},
      {"max_depth", opt.max_depth ? Json(*opt.max_depth) : Json(nullptr)},
      {"log_bins", opt.log_bins},
      {"linear_bin_width", opt.linear_bin_width},
      {"min_span_ratio", opt.min_span_ratio},
      {"include_unreached", opt.include_unreached},
      {"relevance_aggregation", opt.pooled_relevance ? "pooled" : "cascade_mean"}};

  const auto& s = report.summary;
  j["summary"] = {{"cohort_size", s.cohort_size},
                  {"max_depth", s.max_depth},
                  {"max_size", s.max_size},
                  {"zero_reference_count", s.zero_reference_count},
                  {"zero_reference_fraction", s.zero_reference_fraction}};

  Json depths = Json::array();
  for (auto [d, c] : report.depth_distribution) depths.push_back({{"depth", d}, {"count", c}});
  j["depth_distribution"] = std::move(depths);

  auto hist = [](const Histogram& h) {
    return Json{{"edges", h.edges}, {"counts", h.counts}};
  };
  j["size_histograms"] = {{"log", hist(report.log_histogram)},
                          {"linear", hist(report.linear_histogram)}};

  Json zones = Json::array();
  for (const auto& z : report.vacuum_zones) zones.push_back({{"low", z.low}, {"high", z.high}});
  j["vacuum_zones"] = std::move(zones);

  Json gens = Json::array();
  for (const auto& g : report.generations) {
    gens.push_back({{"generation", g.generation},
                    {"reach_count", g.reach_count},
                    {"median_width", g.median_width},
                    {"mean_relevance", optional_number(g.mean_relevance)},
                    {"relevance_sample_count", g.relevance_sample_count},
                    {"pooled_relevance", optional_number(g.pooled_relevance)},
                    {"pooled_pair_count", g.pooled_pair_count}});
  }
  j["generations"] = std::move(gens);

  Json cascades = Json::array();
  for (const auto& r : report.cascades) {
    cascades.push_back(
        {{"focal", r.focal_id}, {"depth", r.depth}, {"size", r.size}, {"width", r.width}});
  }
  j["cascades"] = std::move(cascades);
  return j;
}

void write_depths_csv(std::ostream& out, const CohortReport& report) {
  out << "depth,count\n";
  for (auto [d, c] : report.depth_distribution) out << d << ',' << c << '\n';
}

void write_sizes_csv(std::ostream& out, const CohortReport& report) {
  out << "focal_id,depth,size,width\n";
  for (const auto& r : report.cascades) {
    out << r.focal_id << ',' << r.depth << ',' << r.size << ',' << r.width << '\n';
  }
}

void write_generations_csv(std::ostream& out, const CohortReport& report) {
  const bool pooled = report.options.pooled_relevance;
  out << "generation,reach_count,median_width,mean_relevance,sample_count\n";
  for (const auto& g : report.generations) {
    out << g.generation << ',' << g.reach_count << ',' << format_double(g.median_width) << ','
        << optional_text(pooled ? g.pooled_relevance : g.mean_relevance) << ','
        << (pooled ? g.pooled_pair_count : g.relevance_sample_count) << '\n';
  }
}

void write_vacuum_zones_csv(std::ostream& out, const CohortReport& report) {
  out << "low,high\n";
  for (const auto& z : report.vacuum_zones) {
    out << format_double(z.low) << ',' << format_double(z.high) << '\n';
  }
}

void write_report(const std::filesystem::path& dir, const CohortReport& report) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
  write_file(dir / "report.json", report_to_json(report).dump(2) + "\n");
  write_file(dir / "depths.csv", render([&](std::ostream& o) { write_depths_csv(o, report); }));
  write_file(dir / "sizes.csv", render([&](std::ostream& o) { write_sizes_csv(o, report); }));
  write_file(dir / "generations.csv",
             render([&](std::ostream& o) { write_generations_csv(o, report); }));
  write_file(dir / "vacuum_zones.csv",
             render([&](std::ostream& o) { write_vacuum_zones_csv(o, report); }));
}

void write_recommendations_csv(std::ostream& out, const RecommendResult& result) {
  out << "rank,external_id,generation,relevance\n";
  std::size_t rank = 1;
  for (const auto& r : result.items) {
    out << rank++ << ',' << r.paper << ',' << r.generation << ','
        << format_double(r.relevance.value()) << '\n';
  }
}

Json recommendations_to_json(const RecommendResult& result) {
  Json items = Json::array();
  std::size_t rank = 1;
  for (const auto& r : result.items) {
    items.push_back({{"rank", rank++},
                     {"external_id", r.paper},
                     {"generation", r.generation},
                     {"relevance", r.relevance.value()}});
  }
  Json j;
  j["status"] = result.status == RecommendStatus::ok ? "ok" : "focal_without_codes";
  if (!result.message.empty()) j["message"] = result.message;
  j["recommendations"] = std::move(items);
  return j;
}

void write_ingest_summary(std::ostream& out, const Corpus& corpus) {
  const auto& c = corpus.counters();
  out << "papers: " << corpus.size() << '\n'
      << "edge rows: " << c.input_edge_rows << '\n'
      << "kept: " << c.kept_edges << '\n'
      << "dangling dropped: " << c.dangling_dropped << '\n'
      << "self-loops: " << c.self_loops << '\n'
      << "duplicates: " << c.duplicates << '\n'
      << "stubs created: " << c.stubs_created << '\n';
}

}  // namespace refcascade
