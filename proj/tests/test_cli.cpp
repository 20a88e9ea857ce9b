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

#include <sstream>

#include "cli.hpp"
#include "golden_params.hpp"
#include "refcascade/report.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using refcascade::Json;
using refcascade::testing::read_text;
using refcascade::testing::temp_dir;
using refcascade::testing::write_text;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "refcascade");
  std::ostringstream out, err;
  int code = refcascade::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct Fixture {
  fs::path dir;
  std::string papers;
  std::string edges;
};

Fixture five_node(const std::string& name) {
  Fixture f{temp_dir(name), "", ""};
  f.papers = (f.dir / "papers.tsv").string();
  f.edges = (f.dir / "edges.tsv").string();
  write_text(f.papers, "id\tyear\tcodes\nA\t2000\tx;y\nB\t1999\tx\nC\t1998\ty\nD\t1990\tx\nE\t\t\n");
  write_text(f.edges, "citing\tcited\nA\tB\nA\tC\nB\tD\nC\tD\nD\tE\n");
  return f;
}

}  // namespace

TEST_CASE("ingest writes a snapshot that later commands accept") {
  auto f = five_node("cli_ingest");
  auto snap = (f.dir / "g.snap").string();
  auto r = run({"ingest", "--papers", f.papers, "--edges", f.edges, "--snapshot", snap});
  CHECK(r.code == 0);
  CHECK(r.out.find("papers: 5") != std::string::npos);
  CHECK(r.out.find("kept: 5") != std::string::npos);
  auto c = run({"cascade", "--snapshot", snap, "--focal", "A"});
  CHECK(c.code == 0);
  Json j = Json::parse(c.out);
  CHECK(j["depth"] == 3);
  CHECK(j["size"] == 5);
}

TEST_CASE("data errors exit with code 2 and name the problem") {
  auto f = five_node("cli_errors");
  auto missing = (f.dir / "nope.tsv").string();
  auto r = run({"ingest", "--papers", missing, "--edges", f.edges, "--snapshot",
                (f.dir / "x.snap").string()});
  CHECK(r.code == 2);
  CHECK(r.err.find(missing) != std::string::npos);

  write_text(f.papers, "id\tyear\tcodes\nA\t2000\tx\nB\t2001\t\nA\t2002\t\n");
  r = run({"cascade", "--papers", f.papers, "--edges", f.edges, "--focal", "A"});
  CHECK(r.code == 2);
  CHECK(r.err.find(":4:") != std::string::npos);

  f = five_node("cli_errors2");
  r = run({"cascade", "--papers", f.papers, "--edges", f.edges, "--focal", "Z"});
  CHECK(r.code == 2);
  CHECK(r.err.find("Z") != std::string::npos);

  write_text(f.edges, "citing\tcited\nA\tQ\n");
  r = run({"cascade", "--papers", f.papers, "--edges", f.edges, "--focal", "A", "--dangling",
           "error"});
  CHECK(r.code == 2);
}

TEST_CASE("usage errors exit with code 1") {
  auto f = five_node("cli_usage");
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"cascade", "--papers", f.papers, "--edges", f.edges}).code == 1);
  CHECK(run({"cascade", "--papers", f.papers, "--edges", f.edges, "--focal", "A", "--direction",
             "sideways"})
            .code == 1);
  CHECK(run({"recommend", "--papers", f.papers, "--edges", f.edges, "--focal", "A",
             "--max-generation", "0"})
            .code == 1);
  CHECK(run({"synth", "--n-papers", "10", "--refs", "poisson:2", "--out",
             (f.dir / "s").string()})
            .code == 1);
  CHECK(run({"cohort", "--papers", f.papers, "--edges", f.edges, "--code-prefix", "",
             "--out", (f.dir / "o").string()})
            .code == 1);
  auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("cohort") != std::string::npos);
}

TEST_CASE("cascade depth limit and direction") {
  auto f = five_node("cli_cascade");
  auto r = run({"cascade", "--papers", f.papers, "--edges", f.edges, "--focal", "A",
                "--max-depth", "1"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["depth"] == 1);
  CHECK(j["size"] == 3);
  r = run({"cascade", "--papers", f.papers, "--edges", f.edges, "--focal", "E", "--direction",
           "forward"});
  REQUIRE(r.code == 0);
  j = Json::parse(r.out);
  CHECK(j["layers"] == Json::parse(R"([["E"],["D"],["B","C"],["A"]])"));
}

TEST_CASE("cohort via the command line reproduces the golden report") {
  const fs::path data = REFCASCADE_TEST_DATA;
  auto dir = temp_dir("cli_cohort");
  auto r = run({"cohort", "--papers", (data / "synth200_papers.tsv").string(), "--edges",
                (data / "synth200_edges.tsv").string(), "--code-prefix",
                refcascade::testing::kGoldenPrefix, "--out", dir.string(), "--workers", "3",
                "--emit-plots"});
  REQUIRE(r.code == 0);
  Json got = Json::parse(read_text(dir / "report.json"));
  Json want = Json::parse(read_text(data / "golden_cohort_200.json"));
  CHECK(refcascade::testing::json_close(got, want));
  std::size_t svgs = 0;
  for (const auto& e : fs::directory_iterator(dir)) svgs += e.path().extension() == ".svg";
  CHECK(svgs == 5);
}

TEST_CASE("empty cohort warns and writes an empty report") {
  auto f = five_node("cli_empty");
  auto out = f.dir / "out";
  auto r = run({"cohort", "--papers", f.papers, "--edges", f.edges, "--code-prefix", "zz",
                "--out", out.string()});
  CHECK(r.code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
  Json j = Json::parse(read_text(out / "report.json"));
  CHECK(j["summary"]["cohort_size"] == 0);
  CHECK(j["cascades"].empty());
}

TEST_CASE("recommend prints ranked CSV or JSON") {
  auto f = five_node("cli_recommend");
  auto r = run({"recommend", "--papers", f.papers, "--edges", f.edges, "--focal", "A"});
  REQUIRE(r.code == 0);
  // A {x,y}: B {x} 1/2, C {y} 1/2, D {x} 1/2 at generation 2.
  CHECK(r.out == "rank,external_id,generation,relevance\n1,B,1,0.5\n2,C,1,0.5\n3,D,2,0.5\n");
  r = run({"recommend", "--papers", f.papers, "--edges", f.edges, "--focal", "A",
           "--exclude-direct", "--json"});
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["recommendations"].size() == 1);
  CHECK(j["recommendations"][0]["external_id"] == "D");
  r = run({"recommend", "--papers", f.papers, "--edges", f.edges, "--focal", "E"});
  CHECK(r.code == 0);
  CHECK(r.err.find("note:") != std::string::npos);
}

TEST_CASE("synth is reproducible from the command line") {
  auto dir = temp_dir("cli_synth");
  std::vector<std::string> args = {"synth", "--n-papers", "300", "--refs", "uniform:1:4",
                                   "--attachment", "pref:1", "--seed", "9"};
  auto a = args, b = args;
  a.insert(a.end(), {"--out", (dir / "a").string()});
  b.insert(b.end(), {"--out", (dir / "b").string()});
  REQUIRE(run(a).code == 0);
  REQUIRE(run(b).code == 0);
  CHECK(read_text(dir / "a" / "papers.tsv") == read_text(dir / "b" / "papers.tsv"));
  CHECK(read_text(dir / "a" / "edges.tsv") == read_text(dir / "b" / "edges.tsv"));
  auto r = run({"ingest", "--papers", (dir / "a" / "papers.tsv").string(), "--edges",
                (dir / "a" / "edges.tsv").string(), "--snapshot", (dir / "a.snap").string()});
  CHECK(r.code == 0);
}
