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
#include <string>
#include <vector>

#include "refcascade/analytics.hpp"

namespace refcascade {

// Static SVG renderings of a cohort report. Each data point carries its
// value in a <title> element so the files double as data exports.
std::string depth_plot_svg(const CohortReport& report);
std::string size_log_plot_svg(const CohortReport& report);
std::string size_linear_plot_svg(const CohortReport& report);
std::string width_plot_svg(const CohortReport& report);
std::string relevance_plot_svg(const CohortReport& report);

// Writes the five plots into `dir` and returns their paths.
std::vector<std::filesystem::path> write_plots(const std::filesystem::path& dir,
                                               const CohortReport& report);

}  // namespace refcascade
