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
#include <optional>
#include <string>
#include <string_view>

#include "refcascade/corpus.hpp"

namespace refcascade {

// Number of references each paper draws (before capping at the number of
// earlier papers).
struct RefCountSpec {
  enum class Kind { constant, uniform, geometric };

  Kind kind = Kind::constant;
  std::uint32_t count = 5;   // constant
  std::uint32_t low = 0;     // uniform, inclusive
  std::uint32_t high = 0;    // uniform, inclusive
  double p = 0.5;            // geometric success probability
  std::uint32_t cap = 100;   // geometric cap

  static RefCountSpec constant(std::uint32_t k) { return {Kind::constant, k, 0, 0, 0.5, 0}; }
  static RefCountSpec uniform(std::uint32_t a, std::uint32_t b) {
    return {Kind::uniform, 0, a, b, 0.5, 0};
  }
  // Failures before the first success, capped.
  static RefCountSpec geometric(double p, std::uint32_t cap) {
    return {Kind::geometric, 0, 0, 0, p, cap};
  }
};

// "const:K", "uniform:A:B" or "geometric:P:CAP".
RefCountSpec parse_ref_count(std::string_view text);
std::string to_string(const RefCountSpec& spec);

// uniform: every earlier paper equally likely. preferential: weight
// (in_degree + 1)^alpha.
struct AttachmentSpec {
  enum class Kind { uniform, preferential };

  Kind kind = Kind::uniform;
  double alpha = 1.0;

  static AttachmentSpec uniform() { return {Kind::uniform, 0.0}; }
  static AttachmentSpec preferential(double alpha) { return {Kind::preferential, alpha}; }
};

// "uniform" or "pref:ALPHA".
AttachmentSpec parse_attachment(std::string_view text);
std::string to_string(const AttachmentSpec& spec);

struct SynthParams {
  std::size_t n_papers = 1000;
  RefCountSpec refs = RefCountSpec::constant(5);
  AttachmentSpec attachment;
  // Citing weight of an earlier paper halves every `half_life` papers back.
  std::optional<double> recency_half_life;
  std::uint32_t code_universe = 1000;
  std::uint32_t codes_per_paper = 2;
  // Probability that each code slot copies a code from a cited paper.
  double code_inheritance = 0.5;
  std::uint64_t seed = 1;
  int first_year = 1893;
  int last_year = 2013;

  // Throws UsageError.
  void validate() const;
};

// Paper i cites only papers < i, so the result is acyclic. Fully determined
// by the params, seed included.
Corpus generate(const SynthParams& params);

// Identifier and code naming used by generate().
std::string synth_paper_id(std::size_t index);
std::string synth_code(std::uint32_t code);

}  // namespace refcascade
