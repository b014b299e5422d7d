#pragma once

// Versioned JSON reports, human summaries and static SVG plots.

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "zeroset/measure.hpp"

namespace zeroset {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kReportSchema = "zeroset.report/1";

// {"schema": ..., "command": ..., "params": ...}; callers append fields.
Json report_envelope(std::string_view command, Json params);

// Writes <stem>.json (two-space indent, trailing newline) and <stem>.txt into
// `dir`, creating it when missing.
void write_report(const std::filesystem::path& dir, std::string_view stem, const Json& report,
                  const std::string& summary);

struct PlotLayer {
  std::string label;
  std::string color;  // SVG color
  std::vector<std::pair<double, double>> points;
};

// Scatter plot of 2-D points over [x0, x1] x [y0, y1].
void write_svg_scatter(const std::filesystem::path& path, const std::string& title,
                       const std::vector<PlotLayer>& layers, double x0, double x1, double y0, double y1);

// log(count) against log(1/scale) with the fitted line.
void write_svg_box_count(const std::filesystem::path& path, const std::string& title, const BoxCountReport& r);

// Projection of a cloud onto two axes.
std::vector<std::pair<double, double>> project(const PointCloud& cloud, std::size_t ax, std::size_t ay);

}  // namespace zeroset
