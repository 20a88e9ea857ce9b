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

#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <thread>

#include <CLI11.hpp>

#include "refcascade/analytics.hpp"
#include "refcascade/cascade.hpp"
#include "refcascade/corpus.hpp"
#include "refcascade/error.hpp"
#include "refcascade/graph.hpp"
#include "refcascade/plots.hpp"
#include "refcascade/recommend.hpp"
#include "refcascade/relevance.hpp"
#include "refcascade/report.hpp"
#include "refcascade/synth.hpp"

namespace refcascade::cli {
namespace {

namespace fs = std::filesystem;

struct SourceFlags {
  std::string snapshot;
  std::string papers;
  std::string edges;
  std::string dangling = "stub";
  bool aps = false;
  bool normalize_codes = false;

  void attach(CLI::App* cmd, bool snapshot_is_output) {
    cmd->add_option("--papers", papers,
                    "Papers table (TSV id/year/codes, or APS metadata CSV with --aps)");
    cmd->add_option("--edges", edges,
                    "Edges table (TSV citing/cited, or APS citation CSV with --aps)");
    cmd->add_option("--snapshot", snapshot,
                    snapshot_is_output ? "Snapshot file to write" : "Binary snapshot to load");
    cmd->add_option("--dangling", dangling, "Unknown-id edge policy: stub|drop|error");
    cmd->add_flag("--aps", aps, "Read the APS CSV formats");
    cmd->add_flag("--normalize-codes", normalize_codes, "Lower-case classification codes");
  }

  Corpus load_corpus() const {
    if (papers.empty() || edges.empty()) {
      throw UsageError("both --papers and --edges are required");
    }
    IngestOptions opt;
    opt.dangling = parse_dangling_policy(dangling);
    opt.normalize_codes = normalize_codes;
    Corpus corpus = aps ? load_aps(papers, edges, opt)
                        : load_edges(edges, load_papers(papers, opt), opt.dangling);
    corpus.validate();
    return corpus;
  }

  Snapshot load() const {
    if (!snapshot.empty()) {
      if (!papers.empty() || !edges.empty()) {
        throw UsageError("give either --snapshot or --papers/--edges, not both");
      }
      return load_snapshot(snapshot);
    }
    Snapshot s;
    s.corpus = load_corpus();
    s.graph = CitationGraph::build(s.corpus);
    return s;
  }
};

std::size_t default_workers() {
  if (const char* env = std::getenv("REFCASCADE_WORKERS"); env && *env) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) {
      throw UsageError("REFCASCADE_WORKERS must be a positive integer");
    }
    return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

NodeId lookup(const Snapshot& s, const std::string& id) {
  auto node = s.corpus.find(id);
  if (!node) throw DataError("unknown paper id '" + id + "'");
  return *node;
}

RelevanceConfig relevance_config(const std::string& level, const std::string& empty) {
  return {parse_code_level(level), parse_empty_code_policy(empty)};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reference and citation cascade analysis for citation networks", "refcascade"};
  app.require_subcommand(1);

  // ingest
  SourceFlags ingest_src;
  auto* ingest = app.add_subcommand("ingest", "Parse papers/edges and write a graph snapshot");
  ingest_src.attach(ingest, true);

  // cascade
  SourceFlags cascade_src;
  std::string cascade_focal;
  std::string cascade_direction = "backward";
  std::optional<std::size_t> cascade_max_depth;
  auto* cascade = app.add_subcommand("cascade", "Print one paper's cascade as JSON");
  cascade_src.attach(cascade, false);
  cascade->add_option("--focal", cascade_focal, "Focal paper external id")->required();
  cascade->add_option("--direction", cascade_direction, "backward|forward");
  cascade->add_option("--max-depth", cascade_max_depth, "Stop after this many generations");

  // cohort
  SourceFlags cohort_src;
  std::string code_prefix;
  std::string cohort_direction = "backward";
  std::string cohort_level = "full";
  std::string cohort_empty = "exclude";
  std::size_t bins = 20;
  double linear_width = 5000.0;
  double span_ratio = 2.0;
  std::optional<std::size_t> workers;
  std::optional<std::size_t> cohort_max_depth;
  std::string out_dir;
  bool emit_plots = false;
  bool include_unreached = false;
  bool pooled = false;
  auto* cohort = app.add_subcommand("cohort", "Analyse the cohort selected by a code prefix");
  cohort_src.attach(cohort, false);
  cohort->add_option("--code-prefix", code_prefix, "Classification-code prefix")->required();
  cohort->add_option("--direction", cohort_direction, "backward|forward");
  cohort->add_option("--code-level", cohort_level, "full|two|one");
  cohort->add_option("--empty-codes", cohort_empty, "exclude|zero");
  cohort->add_option("--bins", bins, "Log-scale size histogram bins");
  cohort->add_option("--linear-bin-width", linear_width, "Linear size histogram bin width");
  cohort->add_option("--min-span-ratio", span_ratio, "Minimum high/low ratio of a vacuum zone");
  cohort->add_option("--workers", workers, "Worker threads (default $REFCASCADE_WORKERS)");
  cohort->add_option("--max-depth", cohort_max_depth, "Truncate cascades at this depth");
  cohort->add_option("--out", out_dir, "Output directory")->required();
  cohort->add_flag("--emit-plots", emit_plots, "Also write SVG figures");
  cohort->add_flag("--include-unreached", include_unreached,
                   "Count unreached generations as width 0 in medians");
  cohort->add_flag("--pooled-relevance", pooled,
                   "Report pooled pair relevance in generations.csv");

  // recommend
  SourceFlags rec_src;
  std::string rec_focal;
  std::size_t max_generation = 4;
  double min_relevance = 0.2;
  std::optional<std::size_t> top_k;
  std::string rec_level = "full";
  std::string rec_empty = "exclude";
  bool exclude_direct = false;
  bool rec_json = false;
  auto* rec = app.add_subcommand("recommend", "Rank related papers from a reference cascade");
  rec_src.attach(rec, false);
  rec->add_option("--focal", rec_focal, "Focal paper external id")->required();
  rec->add_option("--max-generation", max_generation, "Deepest generation considered");
  rec->add_option("--min-relevance", min_relevance, "Relevance threshold");
  rec->add_option("--top-k", top_k, "Keep only the best k");
  rec->add_option("--code-level", rec_level, "full|two|one");
  rec->add_option("--empty-codes", rec_empty, "exclude|zero");
  rec->add_flag("--exclude-direct", exclude_direct, "Skip the focal paper's own references");
  rec->add_flag("--json", rec_json, "JSON instead of CSV");

  // synth
  SynthParams synth_params;
  std::string refs_spec = "const:5";
  std::string attachment_spec = "uniform";
  std::optional<double> half_life;
  std::string synth_out = ".";
  std::string synth_papers;
  std::string synth_edges;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus as TSV files");
  synth->add_option("--n-papers", synth_params.n_papers, "Number of papers");
  synth->add_option("--refs", refs_spec, "const:K | uniform:A:B | geometric:P:CAP");
  synth->add_option("--attachment", attachment_spec, "uniform | pref:ALPHA");
  synth->add_option("--recency-half-life", half_life, "Recency half-life in papers");
  synth->add_option("--code-universe", synth_params.code_universe, "Distinct codes");
  synth->add_option("--codes-per-paper", synth_params.codes_per_paper, "Codes per paper");
  synth->add_option("--code-inheritance", synth_params.code_inheritance,
                    "Probability a code is copied from a cited paper");
  synth->add_option("--seed", synth_params.seed, "Random seed");
  synth->add_option("--first-year", synth_params.first_year, "Year of the first paper");
  synth->add_option("--last-year", synth_params.last_year, "Year of the last paper");
  synth->add_option("--out", synth_out, "Output directory (papers.tsv, edges.tsv)");
  synth->add_option("--papers", synth_papers, "Papers output path");
  synth->add_option("--edges", synth_edges, "Edges output path");

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*ingest) {
      if (ingest_src.snapshot.empty()) throw UsageError("ingest needs --snapshot for output");
      Corpus corpus = ingest_src.load_corpus();
      CitationGraph graph = CitationGraph::build(corpus);
      save_snapshot(ingest_src.snapshot, corpus, graph);
      write_ingest_summary(out, corpus);
      out << "snapshot: " << ingest_src.snapshot << '\n';
    } else if (*cascade) {
      Snapshot s = cascade_src.load();
      NodeId focal = lookup(s, cascade_focal);
      Cascade c = build_cascade(s.graph, focal, parse_direction(cascade_direction),
                                cascade_max_depth);
      out << cascade_to_json(c, s.graph).dump(2) << '\n';
    } else if (*cohort) {
      CohortOptions opt;
      opt.direction = parse_direction(cohort_direction);
      opt.relevance = relevance_config(cohort_level, cohort_empty);
      opt.workers = workers.value_or(default_workers());
      opt.max_depth = cohort_max_depth;
      opt.log_bins = bins;
      opt.linear_bin_width = linear_width;
      opt.min_span_ratio = span_ratio;
      opt.include_unreached = include_unreached;
      opt.pooled_relevance = pooled;
      if (opt.workers < 1) throw UsageError("--workers must be at least 1");
      if (bins < 1) throw UsageError("--bins must be at least 1");
      Snapshot s = cohort_src.load();
      Cohort selected = select_cohort(s.corpus, code_prefix);
      if (selected.focal_nodes.empty()) {
        err << "warning: no paper has a code starting with '" << code_prefix
            << "'; writing an empty report\n";
      }
      CohortReport report = run_cohort(s.graph, s.corpus, selected, opt);
      write_report(out_dir, report);
      if (emit_plots) write_plots(out_dir, report);
      out << "cohort " << selected.name << ": " << report.summary.cohort_size
          << " focal papers, max depth " << report.summary.max_depth << ", max size "
          << report.summary.max_size << ", zero-reference fraction "
          << format_double(report.summary.zero_reference_fraction) << '\n'
          << "report written to " << out_dir << '\n';
    } else if (*rec) {
      RecommendOptions opt;
      opt.max_generation = max_generation;
      opt.min_relevance = min_relevance;
      opt.top_k = top_k;
      opt.exclude_direct = exclude_direct;
      RelevanceConfig cfg = relevance_config(rec_level, rec_empty);
      Snapshot s = rec_src.load();
      NodeId focal = lookup(s, rec_focal);
      TopicIndex topics(s.corpus, cfg);
      RecommendResult result = recommend(s.graph, topics, focal, opt);
      if (result.status != RecommendStatus::ok) err << "note: " << result.message << '\n';
      if (rec_json) {
        out << recommendations_to_json(result).dump(2) << '\n';
      } else {
        write_recommendations_csv(out, result);
      }
    } else if (*synth) {
      synth_params.refs = parse_ref_count(refs_spec);
      synth_params.attachment = parse_attachment(attachment_spec);
      synth_params.recency_half_life = half_life;
      Corpus corpus = generate(synth_params);
      fs::path dir(synth_out);
      fs::path papers_path = synth_papers.empty() ? dir / "papers.tsv" : fs::path(synth_papers);
      fs::path edges_path = synth_edges.empty() ? dir / "edges.tsv" : fs::path(synth_edges);
      std::error_code ec;
      if (synth_papers.empty() || synth_edges.empty()) fs::create_directories(dir, ec);
      if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
      save_papers(papers_path, corpus);
      save_edges(edges_path, corpus);
      out << "wrote " << corpus.size() << " papers to " << papers_path.string() << " and "
          << corpus.edges().size() << " edges to " << edges_path.string() << '\n';
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kData;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}

}  // namespace refcascade::cli
