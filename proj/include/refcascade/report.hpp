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

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "refcascade/analytics.hpp"
#include "refcascade/cascade.hpp"
#include "refcascade/corpus.hpp"
#include "refcascade/recommend.hpp"

namespace refcascade {

using Json = nlohmann::ordered_json;

// Shortest decimal text that round-trips the double.
std::string format_double(double value);

// {focal, direction, depth, size, widths, layers}; layer members are external
// ids in ascending order.
Json cascade_to_json(const Cascade& cascade, const CitationGraph& graph);

Json report_to_json(const CohortReport& report);

void write_depths_csv(std::ostream& out, const CohortReport& report);
void write_sizes_csv(std::ostream& out, const CohortReport& report);
void write_generations_csv(std::ostream& out, const CohortReport& report);
void write_vacuum_zones_csv(std::ostream& out, const CohortReport& report);

// report.json plus depths.csv, sizes.csv, generations.csv and
// vacuum_zones.csv. Creates `dir` if needed.
void write_report(const std::filesystem::path& dir, const CohortReport& report);

// rank,external_id,generation,relevance
void write_recommendations_csv(std::ostream& out, const RecommendResult& result);
Json recommendations_to_json(const RecommendResult& result);

void write_ingest_summary(std::ostream& out, const Corpus& corpus);

}  // namespace refcascade
