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

#include "refcascade/synth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <vector>

#include "refcascade/error.hpp"
#include "refcascade/random.hpp"

namespace refcascade {
namespace {

std::vector<std::string_view> split_colon(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(':', start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw UsageError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

// Fenwick tree over nonnegative weights with weighted index lookup.
class WeightTree {
 public:
  explicit WeightTree(std::size_t n) : tree_(n + 1, 0.0) {
    step_ = 1;
    while (step_ * 2 <= n) step_ *= 2;
  }

  void add(std::size_t i, double delta) {
    for (++i; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
  }

  double total(std::size_t count) const {
    double s = 0.0;
    for (std::size_t i = count; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

  // Index of the first element whose inclusive prefix sum exceeds target.
  std::size_t find(double target) const {
    std::size_t pos = 0;
    for (std::size_t step = step_; step > 0; step /= 2) {
      if (pos + step < tree_.size() && tree_[pos + step] <= target) {
        pos += step;
        target -= tree_[pos];
      }
    }
    return pos;
  }

  // O(n) rebuild from explicit weights of elements [0, weights.size()).
  void rebuild(const std::vector<double>& weights, std::size_t count) {
    std::fill(tree_.begin(), tree_.end(), 0.0);
    for (std::size_t i = 0; i < count; ++i) tree_[i + 1] = weights[i];
    for (std::size_t i = 1; i < tree_.size(); ++i) {
      std::size_t parent = i + (i & (~i + 1));
      if (parent < tree_.size()) tree_[parent] += tree_[i];
    }
  }

 private:
  std::vector<double> tree_;
  std::size_t step_;
};

std::uint32_t draw_ref_count(const RefCountSpec& spec, Random& rng) {
  switch (spec.kind) {
    case RefCountSpec::Kind::constant:
      return spec.count;
    case RefCountSpec::Kind::uniform:
      return static_cast<std::uint32_t>(rng.between(spec.low, spec.high));
    case RefCountSpec::Kind::geometric: {
      if (spec.p >= 1.0) return 0;
      double u = 1.0 - rng.unit();  // (0, 1]
      double k = std::floor(std::log(u) / std::log1p(-spec.p));
      return k >= spec.cap ? spec.cap : static_cast<std::uint32_t>(k);
    }
  }
  return 0;
}

// Weights are stored relative to a moving origin so that recency factors
// 2^(j/h) never overflow; crossing this exponent triggers a rebase.
constexpr double kMaxExponent = 900.0;
constexpr std::size_t kRebuildInterval = 1u << 16;

}  // namespace

RefCountSpec parse_ref_count(std::string_view text) {
  auto parts = split_colon(text);
  if (parts[0] == "const" && parts.size() == 2) {
    return RefCountSpec::constant(parse_number<std::uint32_t>(parts[1], "reference count"));
  }
  if (parts[0] == "uniform" && parts.size() == 3) {
    return RefCountSpec::uniform(parse_number<std::uint32_t>(parts[1], "reference count"),
                                 parse_number<std::uint32_t>(parts[2], "reference count"));
  }
  if (parts[0] == "geometric" && parts.size() == 3) {
    return RefCountSpec::geometric(parse_number<double>(parts[1], "probability"),
                                   parse_number<std::uint32_t>(parts[2], "cap"));
  }
  throw UsageError("invalid reference-count spec '" + std::string(text) +
                   "' (want const:K, uniform:A:B or geometric:P:CAP)");
}

std::string to_string(const RefCountSpec& spec) {
  switch (spec.kind) {
    case RefCountSpec::Kind::constant:
      return "const:" + std::to_string(spec.count);
    case RefCountSpec::Kind::uniform:
      return "uniform:" + std::to_string(spec.low) + ":" + std::to_string(spec.high);
    case RefCountSpec::Kind::geometric: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "geometric:%g:%u", spec.p, spec.cap);
      return buf;
    }
  }
  return {};
}

AttachmentSpec parse_attachment(std::string_view text) {
  if (text == "uniform") return AttachmentSpec::uniform();
  auto parts = split_colon(text);
  if (parts.size() == 2 && (parts[0] == "pref" || parts[0] == "preferential")) {
    return AttachmentSpec::preferential(parse_number<double>(parts[1], "alpha"));
  }
  throw UsageError("invalid attachment spec '" + std::string(text) +
                   "' (want uniform or pref:ALPHA)");
}

std::string to_string(const AttachmentSpec& spec) {
  if (spec.kind == AttachmentSpec::Kind::uniform) return "uniform";
  char buf[64];
  std::snprintf(buf, sizeof buf, "pref:%g", spec.alpha);
  return buf;
}

void SynthParams::validate() const {
  if (n_papers < 1) throw UsageError("n_papers must be at least 1");
  if (n_papers >= UINT32_MAX) throw UsageError("n_papers too large");
  if (refs.kind == RefCountSpec::Kind::uniform && refs.low > refs.high) {
    throw UsageError("uniform reference count needs low <= high");
  }
  if (refs.kind == RefCountSpec::Kind::geometric && !(refs.p > 0.0 && refs.p <= 1.0)) {
    throw UsageError("geometric probability must be in (0, 1]");
  }
  if (attachment.kind == AttachmentSpec::Kind::preferential &&
      !(attachment.alpha >= 0.0 && std::isfinite(attachment.alpha))) {
    throw UsageError("preferential alpha must be a finite value >= 0");
  }
  if (recency_half_life && !(*recency_half_life > 0.0 && std::isfinite(*recency_half_life))) {
    throw UsageError("recency half-life must be positive");
  }
  if (code_universe < 1) throw UsageError("code_universe must be at least 1");
  if (codes_per_paper > code_universe) {
    throw UsageError("codes_per_paper cannot exceed code_universe");
  }
  if (!(code_inheritance >= 0.0 && code_inheritance <= 1.0)) {
    throw UsageError("code_inheritance must be in [0, 1]");
  }
  if (first_year > last_year) throw UsageError("first_year must not exceed last_year");
}

std::string synth_paper_id(std::size_t index) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "10.5555/syn.%07zu", index);
  return buf;
}

std::string synth_code(std::uint32_t code) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%02u.%02u.%02u", code % 100, (code / 100) % 100,
                (code / 10000) % 100);
  return buf;
}

Corpus generate(const SynthParams& params) {
  params.validate();
  const std::size_t n = params.n_papers;
  Random rng(params.seed);

  const bool preferential = params.attachment.kind == AttachmentSpec::Kind::preferential;
  const double alpha = params.attachment.alpha;
  const double half_life = params.recency_half_life.value_or(0.0);
  const bool recency = params.recency_half_life.has_value();

  std::vector<std::uint32_t> in_degree(n, 0);
  std::vector<double> weight(n, 0.0);
  std::size_t origin = 0;
  auto base = [&](std::size_t j) {
    return preferential ? std::pow(static_cast<double>(in_degree[j]) + 1.0, alpha) : 1.0;
  };
  auto scale = [&](std::size_t j) {
    return recency ? std::exp2((static_cast<double>(j) - static_cast<double>(origin)) / half_life)
                   : 1.0;
  };

  WeightTree tree(n);
  std::vector<std::vector<std::uint32_t>> codes(n);
  std::vector<std::vector<NodeId>> refs(n);
  std::vector<NodeId> chosen;

  for (std::size_t i = 0; i < n; ++i) {
    // Periodic rebuild resets accumulated rounding in the tree; a rebase
    // additionally moves the recency origin.
    bool rebase = recency && (static_cast<double>(i) - static_cast<double>(origin)) / half_life >
                                 kMaxExponent;
    if (rebase || (i > 0 && i % kRebuildInterval == 0)) {
      if (rebase) origin = i;
      for (std::size_t j = 0; j < i; ++j) weight[j] = base(j) * scale(j);
      tree.rebuild(weight, i);
    }

    auto want = std::min<std::size_t>(draw_ref_count(params.refs, rng), i);
    chosen.clear();
    while (chosen.size() < want) {
      double total = tree.total(i);
      if (!(total > 0.0)) break;
      std::size_t j = tree.find(rng.unit() * total);
      if (j >= i) j = i - 1;
      if (weight[j] <= 0.0 ||
          std::find(chosen.begin(), chosen.end(), static_cast<NodeId>(j)) != chosen.end()) {
        // Landed on a removed or vanishing entry through rounding; the
        // remaining mass is negligible.
        break;
      }
      chosen.push_back(static_cast<NodeId>(j));
      tree.add(j, -weight[j]);
      weight[j] = 0.0;
    }
    for (NodeId j : chosen) {
      ++in_degree[j];
      weight[j] = base(j) * scale(j);
      tree.add(j, weight[j]);
    }

    auto& mine = codes[i];
    const std::uint32_t target = params.codes_per_paper;
    for (std::uint32_t attempt = 0; mine.size() < target && attempt < 4 * target + 4; ++attempt) {
      std::uint32_t code;
      if (!chosen.empty() && rng.chance(params.code_inheritance)) {
        const auto& parent = codes[chosen[rng.below(chosen.size())]];
        if (parent.empty()) {
          code = static_cast<std::uint32_t>(rng.below(params.code_universe));
        } else {
          code = parent[rng.below(parent.size())];
        }
      } else {
        code = static_cast<std::uint32_t>(rng.below(params.code_universe));
      }
      if (std::find(mine.begin(), mine.end(), code) == mine.end()) mine.push_back(code);
    }

    refs[i] = chosen;
    weight[i] = base(i) * scale(i);
    tree.add(i, weight[i]);
  }

  Corpus corpus;
  const long span = static_cast<long>(params.last_year) - params.first_year;
  for (std::size_t i = 0; i < n; ++i) {
    PaperRecord p;
    p.external_id = synth_paper_id(i);
    p.year = params.first_year +
             static_cast<int>(n > 1 ? static_cast<long>(i) * span / static_cast<long>(n - 1) : 0);
    std::vector<std::string> names;
    names.reserve(codes[i].size());
    for (auto c : codes[i]) names.push_back(synth_code(c));
    p.codes = make_code_set(std::move(names));
    corpus.add_paper(std::move(p));
  }
  auto& counters = corpus.mutable_counters();
  for (std::size_t i = 0; i < n; ++i) {
    for (NodeId j : refs[i]) {
      corpus.add_edge({static_cast<NodeId>(i), j});
      ++counters.input_edge_rows;
      ++counters.kept_edges;
    }
  }
  return corpus;
}

}  // namespace refcascade
