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

#include "refcascade/plots.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "refcascade/error.hpp"
#include "refcascade/report.hpp"

namespace refcascade {
namespace {

constexpr double kWidth = 640, kHeight = 400;
constexpr double kLeft = 60, kRight = 20, kTop = 40, kBottom = 50;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Point {
  std::string label;
  std::optional<double> value;
};

class Canvas {
 public:
  Canvas(const std::string& title, const std::string& x_label, const std::string& y_label) {
    svg_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
         << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
         << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
         << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         << "font-family=\"sans-serif\" font-size=\"16\">" << escape(title) << "</text>\n"
         << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10
         << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
         << escape(x_label) << "</text>\n"
         << "<text x=\"14\" y=\"" << kHeight / 2 << "\" text-anchor=\"middle\" "
         << "font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 14 "
         << kHeight / 2 << ")\">" << escape(y_label) << "</text>\n"
         << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\""
         << kWidth - kRight << "\" y2=\"" << kHeight - kBottom << "\" stroke=\"black\"/>\n"
         << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
         << kHeight - kBottom << "\" stroke=\"black\"/>\n";
  }

  void bars(const std::vector<Point>& points) { plot(points, false); }
  void line(const std::vector<Point>& points) { plot(points, true); }

  std::string finish() {
    svg_ << "</svg>\n";
    return svg_.str();
  }

 private:
  void plot(const std::vector<Point>& points, bool as_line) {
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    double top = 0.0;
    for (const auto& p : points) {
      if (p.value) top = std::max(top, *p.value);
    }
    if (top <= 0.0) top = 1.0;
    svg_ << "<text x=\"" << kLeft - 4 << "\" y=\"" << kTop + 4
         << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
         << format_double(top) << "</text>\n";
    if (points.empty()) {
      svg_ << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight / 2
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\">no data</text>\n";
      return;
    }
    const double slot = plot_w / static_cast<double>(points.size());
    std::string path;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& p = points[i];
      const double x = kLeft + slot * static_cast<double>(i);
      const std::string value = p.value ? format_double(*p.value) : "undefined";
      if (!p.value) continue;
      const double h = plot_h * (*p.value / top);
      const double y = kTop + plot_h - h;
      if (as_line) {
        const double cx = x + slot / 2;
        path += (path.empty() ? "M" : " L") + format_double(cx) + ' ' + format_double(y);
        svg_ << "<circle cx=\"" << format_double(cx) << "\" cy=\"" << format_double(y)
             << "\" r=\"2.5\" fill=\"steelblue\"><title>" << escape(p.label) << ": " << value
             << "</title></circle>\n";
      } else {
        svg_ << "<rect x=\"" << format_double(x + slot * 0.1) << "\" y=\"" << format_double(y)
             << "\" width=\"" << format_double(slot * 0.8) << "\" height=\"" << format_double(h)
             << "\" fill=\"steelblue\"><title>" << escape(p.label) << ": " << value
             << "</title></rect>\n";
      }
    }
    if (as_line && !path.empty()) {
      svg_ << "<path d=\"" << path << "\" fill=\"none\" stroke=\"steelblue\"/>\n";
    }
    // Label roughly ten evenly spaced ticks.
    const std::size_t every = std::max<std::size_t>(1, points.size() / 10);
    for (std::size_t i = 0; i < points.size(); i += every) {
      svg_ << "<text x=\"" << format_double(kLeft + slot * (static_cast<double>(i) + 0.5))
           << "\" y=\"" << kHeight - kBottom + 14
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"9\">"
           << escape(points[i].label) << "</text>\n";
    }
  }

  std::ostringstream svg_;
};

std::vector<Point> histogram_points(const Histogram& h) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    pts.push_back({format_double(h.edges[i]) + "-" + format_double(h.edges[i + 1]),
                   static_cast<double>(h.counts[i])});
  }
  return pts;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace

std::string depth_plot_svg(const CohortReport& report) {
  Canvas c("Cascade depth distribution (" + report.cohort.name + ")", "depth", "papers");
  std::vector<Point> pts;
  for (std::size_t d = 0; d <= report.summary.max_depth && !report.cascades.empty(); ++d) {
    auto it = report.depth_distribution.find(d);
    double count = it == report.depth_distribution.end() ? 0.0 : static_cast<double>(it->second);
    pts.push_back({std::to_string(d), count});
  }
  c.line(pts);
  return c.finish();
}

std::string size_log_plot_svg(const CohortReport& report) {
  Canvas c("Cascade size, log bins (" + report.cohort.name + ")", "size", "papers");
  c.bars(histogram_points(report.log_histogram));
  return c.finish();
}

std::string size_linear_plot_svg(const CohortReport& report) {
  Canvas c("Cascade size, linear bins (" + report.cohort.name + ")", "size", "papers");
  c.bars(histogram_points(report.linear_histogram));
  return c.finish();
}

std::string width_plot_svg(const CohortReport& report) {
  Canvas c("Median generation width (" + report.cohort.name + ")", "generation",
           "median width");
  std::vector<Point> pts;
  for (const auto& g : report.generations) {
    pts.push_back({std::to_string(g.generation), g.median_width});
  }
  c.line(pts);
  return c.finish();
}

std::string relevance_plot_svg(const CohortReport& report) {
  Canvas c("Topic relevance by generation (" + report.cohort.name + ")", "generation",
           "mean relevance");
  std::vector<Point> pts;
  for (const auto& g : report.generations) {
    pts.push_back({std::to_string(g.generation),
                   report.options.pooled_relevance ? g.pooled_relevance : g.mean_relevance});
  }
  c.line(pts);
  return c.finish();
}

std::vector<std::filesystem::path> write_plots(const std::filesystem::path& dir,
                                               const CohortReport& report) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
  std::vector<std::filesystem::path> paths = {
      dir / "fig1_depth.svg", dir / "fig2_size_log.svg", dir / "fig2_size_linear.svg",
      dir / "fig3_width.svg", dir / "fig3_relevance.svg"};
  write_file(paths[0], depth_plot_svg(report));
  write_file(paths[1], size_log_plot_svg(report));
  write_file(paths[2], size_linear_plot_svg(report));
  write_file(paths[3], width_plot_svg(report));
  write_file(paths[4], relevance_plot_svg(report));
  return paths;
}

}  // namespace refcascade
