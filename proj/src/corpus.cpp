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

#include "refcascade/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <unordered_set>

#include "refcascade/error.hpp"

namespace refcascade {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

// Minimal RFC 4180 field splitter: quoted fields, doubled quotes inside.
std::vector<std::string> split_csv(std::string_view line, const std::string& source,
                                   std::size_t line_no) {
  std::vector<std::string> out;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"' && !was_quoted && trim(field).empty()) {
      field.clear();
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
      was_quoted = false;
    } else {
      field.push_back(c);
    }
  }
  if (quoted) throw ParseError(source, line_no, "unterminated quoted field");
  out.push_back(std::move(field));
  return out;
}

// Strips a trailing CR so CRLF files parse like LF files.
bool next_line(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

std::optional<int> parse_year(std::string_view text, const std::string& source,
                              std::size_t line_no, bool allow_date) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  if (allow_date && text.size() > 4 && text[4] == '-') text = text.substr(0, 4);
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(source, line_no, "invalid year '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string> split_codes(std::string_view field, bool allow_space_separator) {
  std::vector<std::string> codes;
  for (std::string_view part : split(field, ';')) {
    if (allow_space_separator) {
      std::size_t i = 0;
      while (i < part.size()) {
        while (i < part.size() && is_space(part[i])) ++i;
        std::size_t j = i;
        while (j < part.size() && !is_space(part[j])) ++j;
        if (j > i) codes.emplace_back(part.substr(i, j - i));
        i = j;
      }
    } else {
      codes.emplace_back(part);
    }
  }
  return codes;
}

void expect_header(std::istream& in, std::string_view expected, char sep,
                   const std::string& source) {
  std::string line;
  if (!next_line(in, line)) throw ParseError(source, 1, "missing header line");
  auto want = split(expected, sep);
  auto got = split(line, sep);
  bool ok = want.size() == got.size();
  for (std::size_t i = 0; ok && i < want.size(); ++i) ok = trim(got[i]) == want[i];
  if (!ok) {
    throw ParseError(source, 1, "expected header '" + std::string(expected) + "'");
  }
}

std::uint64_t edge_key(NodeId citing, NodeId cited) {
  return (static_cast<std::uint64_t>(citing) << 32) | cited;
}

// Shared edge-ingest path for the TSV and APS readers.
class EdgeIngest {
 public:
  EdgeIngest(Corpus& corpus, DanglingPolicy policy, const std::string& source)
      : corpus_(corpus), policy_(policy), source_(source) {
    seen_.reserve(corpus.edges().size());
    for (const auto& e : corpus.edges()) seen_.insert(edge_key(e.citing, e.cited));
  }

  void add(std::string_view citing, std::string_view cited, std::size_t line_no) {
    citing = trim(citing);
    cited = trim(cited);
    if (citing.empty() || cited.empty()) {
      throw ParseError(source_, line_no, "empty paper id in edge row");
    }
    auto& counters = corpus_.mutable_counters();
    ++counters.input_edge_rows;
    if (citing == cited) {
      ++counters.self_loops;
      return;
    }
    auto from = resolve(citing, line_no);
    auto to = resolve(cited, line_no);
    if (!from || !to) {
      ++counters.dangling_dropped;
      return;
    }
    if (!seen_.insert(edge_key(*from, *to)).second) {
      ++counters.duplicates;
      return;
    }
    corpus_.add_edge({*from, *to});
    ++counters.kept_edges;
  }

 private:
  std::optional<NodeId> resolve(std::string_view id, std::size_t line_no) {
    if (auto found = corpus_.find(id)) return found;
    switch (policy_) {
      case DanglingPolicy::stub:
        ++corpus_.mutable_counters().stubs_created;
        return corpus_.add_paper(PaperRecord{std::string(id), std::nullopt, {}});
      case DanglingPolicy::drop:
        return std::nullopt;
      case DanglingPolicy::error:
        break;
    }
    throw ParseError(source_, line_no, "unknown paper id '" + std::string(id) + "'");
  }

  Corpus& corpus_;
  DanglingPolicy policy_;
  const std::string& source_;
  std::unordered_set<std::uint64_t> seen_;
};

}  // namespace

std::string_view to_string(DanglingPolicy p) noexcept {
  switch (p) {
    case DanglingPolicy::stub: return "stub";
    case DanglingPolicy::drop: return "drop";
    case DanglingPolicy::error: return "error";
  }
  return "stub";
}

DanglingPolicy parse_dangling_policy(std::string_view text) {
  if (text == "stub") return DanglingPolicy::stub;
  if (text == "drop") return DanglingPolicy::drop;
  if (text == "error") return DanglingPolicy::error;
  throw UsageError("unknown dangling policy '" + std::string(text) + "'");
}

std::vector<std::string> make_code_set(std::vector<std::string> codes, bool normalize) {
  std::vector<std::string> out;
  out.reserve(codes.size());
  for (auto& raw : codes) {
    std::string_view t = trim(raw);
    if (t.empty()) continue;
    if (std::any_of(t.begin(), t.end(), is_space)) {
      throw ValidationError("code '" + std::string(t) + "' contains whitespace");
    }
    std::string code(t);
    if (normalize) {
      std::transform(code.begin(), code.end(), code.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    }
    out.push_back(std::move(code));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const PaperRecord& Corpus::paper(NodeId id) const {
  if (id >= papers_.size()) {
    throw IndexError("paper index " + std::to_string(id) + " out of range");
  }
  return papers_[id];
}

std::optional<NodeId> Corpus::find(std::string_view external_id) const {
  auto it = id_index_.find(external_id);
  if (it == id_index_.end()) return std::nullopt;
  return it->second;
}

NodeId Corpus::add_paper(PaperRecord record) {
  if (record.external_id.empty()) throw ValidationError("empty paper id");
  for (const auto& code : record.codes) {
    if (code.empty() || std::any_of(code.begin(), code.end(), is_space)) {
      throw ValidationError("paper '" + record.external_id + "' has a malformed code");
    }
  }
  if (!std::is_sorted(record.codes.begin(), record.codes.end()) ||
      std::adjacent_find(record.codes.begin(), record.codes.end()) != record.codes.end()) {
    record.codes = make_code_set(std::move(record.codes));
  }
  if (papers_.size() >= std::numeric_limits<NodeId>::max()) {
    throw ValidationError("corpus exceeds the maximum paper count");
  }
  auto id = static_cast<NodeId>(papers_.size());
  auto [it, inserted] = id_index_.emplace(record.external_id, id);
  if (!inserted) throw ValidationError("duplicate paper id '" + record.external_id + "'");
  papers_.push_back(std::move(record));
  return id;
}

void Corpus::add_edge(CitationEdge edge) { edges_.push_back(edge); }

void Corpus::validate() const {
  if (id_index_.size() != papers_.size()) {
    throw ValidationError("id index size does not match paper count");
  }
  for (std::size_t i = 0; i < papers_.size(); ++i) {
    const auto& p = papers_[i];
    auto it = id_index_.find(p.external_id);
    if (p.external_id.empty() || it == id_index_.end() || it->second != i) {
      throw ValidationError("id index is not a bijection at paper " + std::to_string(i));
    }
    for (std::size_t c = 0; c < p.codes.size(); ++c) {
      const auto& code = p.codes[c];
      if (code.empty() || std::any_of(code.begin(), code.end(), is_space) ||
          (c > 0 && !(p.codes[c - 1] < code))) {
        throw ValidationError("paper '" + p.external_id + "' has a malformed code set");
      }
    }
  }
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges_.size());
  for (const auto& e : edges_) {
    if (e.citing >= papers_.size() || e.cited >= papers_.size()) {
      throw ValidationError("edge endpoint out of range");
    }
    if (e.citing == e.cited) throw ValidationError("self-citation edge present");
    if (!seen.insert(edge_key(e.citing, e.cited)).second) {
      throw ValidationError("duplicate edge present");
    }
  }
}

Corpus read_papers(std::istream& in, const IngestOptions& options, const std::string& source) {
  expect_header(in, "id\tyear\tcodes", '\t', source);
  Corpus corpus;
  std::string line;
  std::size_t line_no = 1;
  while (next_line(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split(line, '\t');
    if (fields.size() != 3) {
      throw ParseError(source, line_no,
                       "expected 3 columns, found " + std::to_string(fields.size()));
    }
    PaperRecord record;
    record.external_id = std::string(trim(fields[0]));
    if (record.external_id.empty()) throw ParseError(source, line_no, "empty paper id");
    record.year = parse_year(fields[1], source, line_no, false);
    try {
      record.codes = make_code_set(split_codes(fields[2], false), options.normalize_codes);
      corpus.add_paper(std::move(record));
    } catch (const ValidationError& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  return corpus;
}

Corpus load_papers(const std::filesystem::path& path, const IngestOptions& options) {
  auto in = open_input(path);
  return read_papers(in, options, path.string());
}

void read_edges(std::istream& in, Corpus& corpus, DanglingPolicy policy,
                const std::string& source) {
  expect_header(in, "citing\tcited", '\t', source);
  EdgeIngest ingest(corpus, policy, source);
  std::string line;
  std::size_t line_no = 1;
  while (next_line(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split(line, '\t');
    if (fields.size() != 2) {
      throw ParseError(source, line_no,
                       "expected 2 columns, found " + std::to_string(fields.size()));
    }
    ingest.add(fields[0], fields[1], line_no);
  }
}

Corpus load_edges(const std::filesystem::path& path, Corpus corpus, DanglingPolicy policy) {
  auto in = open_input(path);
  read_edges(in, corpus, policy, path.string());
  return corpus;
}

void write_papers(std::ostream& out, const Corpus& corpus) {
  out << "id\tyear\tcodes\n";
  for (const auto& p : corpus.papers()) {
    out << p.external_id << '\t';
    if (p.year) out << *p.year;
    out << '\t';
    for (std::size_t i = 0; i < p.codes.size(); ++i) {
      if (i) out << ';';
      out << p.codes[i];
    }
    out << '\n';
  }
}

void write_edges(std::ostream& out, const Corpus& corpus) {
  out << "citing\tcited\n";
  const auto& papers = corpus.papers();
  for (const auto& e : corpus.edges()) {
    out << papers[e.citing].external_id << '\t' << papers[e.cited].external_id << '\n';
  }
}

void save_papers(const std::filesystem::path& path, const Corpus& corpus) {
  auto out = open_output(path);
  write_papers(out, corpus);
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void save_edges(const std::filesystem::path& path, const Corpus& corpus) {
  auto out = open_output(path);
  write_edges(out, corpus);
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

Corpus read_aps_metadata(std::istream& in, const IngestOptions& options,
                         const std::string& source) {
  std::string line;
  if (!next_line(in, line)) throw ParseError(source, 1, "missing header line");
  auto header = split_csv(line, source, 1);
  if (header.size() != 3 || trim(header[0]) != "doi" || trim(header[1]) != "year" ||
      trim(header[2]) != "pacs") {
    throw ParseError(source, 1, "expected header 'doi,year,pacs'");
  }
  Corpus corpus;
  std::size_t line_no = 1;
  while (next_line(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_csv(line, source, line_no);
    if (fields.size() != 3) {
      throw ParseError(source, line_no,
                       "expected 3 columns, found " + std::to_string(fields.size()));
    }
    PaperRecord record;
    record.external_id = std::string(trim(fields[0]));
    if (record.external_id.empty()) throw ParseError(source, line_no, "empty doi");
    record.year = parse_year(fields[1], source, line_no, true);
    try {
      record.codes = make_code_set(split_codes(fields[2], true), options.normalize_codes);
      corpus.add_paper(std::move(record));
    } catch (const ValidationError& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  return corpus;
}

void read_aps_citations(std::istream& in, Corpus& corpus, DanglingPolicy policy,
                        const std::string& source) {
  std::string line;
  if (!next_line(in, line)) throw ParseError(source, 1, "missing header line");
  auto header = split_csv(line, source, 1);
  if (header.size() != 2 || trim(header[0]) != "citing_doi" || trim(header[1]) != "cited_doi") {
    throw ParseError(source, 1, "expected header 'citing_doi,cited_doi'");
  }
  EdgeIngest ingest(corpus, policy, source);
  std::size_t line_no = 1;
  while (next_line(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_csv(line, source, line_no);
    if (fields.size() != 2) {
      throw ParseError(source, line_no,
                       "expected 2 columns, found " + std::to_string(fields.size()));
    }
    ingest.add(fields[0], fields[1], line_no);
  }
}

Corpus load_aps(const std::filesystem::path& metadata, const std::filesystem::path& citations,
                const IngestOptions& options) {
  auto meta_in = open_input(metadata);
  Corpus corpus = read_aps_metadata(meta_in, options, metadata.string());
  auto cit_in = open_input(citations);
  read_aps_citations(cit_in, corpus, options.dangling, citations.string());
  return corpus;
}

}  // namespace refcascade
