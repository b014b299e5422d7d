#include "zeroset/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace zeroset {

Json report_envelope(std::string_view command, Json params) {
  Json j;
  j["schema"] = std::string(kReportSchema);
  j["command"] = std::string(command);
  j["params"] = std::move(params);
  return j;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
  if (!os) throw std::runtime_error("cannot write " + path.string());
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string svg_header(const std::string& title) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"520\" height=\"520\" viewBox=\"0 0 520 520\">\n"
         "<rect width=\"520\" height=\"520\" fill=\"white\"/>\n"
         "<text x=\"260\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">" +
         title + "</text>\n<rect x=\"40\" y=\"40\" width=\"440\" height=\"440\" fill=\"none\" stroke=\"black\"/>\n";
}

}  // namespace

void write_report(const std::filesystem::path& dir, std::string_view stem, const Json& report,
                  const std::string& summary) {
  std::filesystem::create_directories(dir);
  write_text(dir / (std::string(stem) + ".json"), report.dump(2) + "\n");
  write_text(dir / (std::string(stem) + ".txt"), summary);
}

void write_svg_scatter(const std::filesystem::path& path, const std::string& title,
                       const std::vector<PlotLayer>& layers, double x0, double x1, double y0, double y1) {
  if (!(x1 > x0) || !(y1 > y0)) throw std::invalid_argument("empty plot window");
  std::string s = svg_header(title);
  double legend = 56.0;
  for (const auto& layer : layers) {
    s += "<g fill=\"" + layer.color + "\">\n";
    for (auto [x, y] : layer.points) {
      double px = 40.0 + 440.0 * (x - x0) / (x1 - x0);
      double py = 480.0 - 440.0 * (y - y0) / (y1 - y0);
      s += "<circle cx=\"" + num(px) + "\" cy=\"" + num(py) + "\" r=\"1.2\"/>\n";
    }
    s += "</g>\n<text x=\"50\" y=\"" + num(legend) + "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" +
         layer.color + "\">" + layer.label + "</text>\n";
    legend += 16.0;
  }
  s += "</svg>\n";
  write_text(path, s);
}

void write_svg_box_count(const std::filesystem::path& path, const std::string& title, const BoxCountReport& r) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < r.scales.size(); ++i) {
    pts.emplace_back(std::log(1.0 / r.scales[i]), std::log(static_cast<double>(std::max<std::size_t>(r.counts[i], 1))));
  }
  if (pts.empty()) throw std::invalid_argument("nothing to plot");
  double x0 = pts.front().first, x1 = pts.back().first;
  double y0 = pts.front().second, y1 = pts.back().second;
  for (auto [x, y] : pts) {
    x0 = std::min(x0, x), x1 = std::max(x1, x);
    y0 = std::min(y0, y), y1 = std::max(y1, y);
  }
  x0 -= 0.5, x1 += 0.5, y0 -= 0.5, y1 += 0.5;
  auto px = [&](double x) { return 40.0 + 440.0 * (x - x0) / (x1 - x0); };
  auto py = [&](double y) { return 480.0 - 440.0 * (y - y0) / (y1 - y0); };
  std::string s = svg_header(title + " (slope " + num(r.slope) + ")");
  // Fitted line through the centroid.
  double mx = 0.0, my = 0.0;
  for (auto [x, y] : pts) mx += x, my += y;
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double a = pts.front().first, b = pts.back().first;
  s += "<line x1=\"" + num(px(a)) + "\" y1=\"" + num(py(my + r.slope * (a - mx))) + "\" x2=\"" + num(px(b)) +
       "\" y2=\"" + num(py(my + r.slope * (b - mx))) + "\" stroke=\"gray\"/>\n";
  for (auto [x, y] : pts) {
    s += "<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) + "\" r=\"4\" fill=\"navy\"/>\n";
  }
  s += "<text x=\"260\" y=\"506\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">"
       "log(1/scale) vs log(count)</text>\n</svg>\n";
  write_text(path, s);
}

std::vector<std::pair<double, double>> project(const PointCloud& cloud, std::size_t ax, std::size_t ay) {
  if (ax >= cloud.dim || ay >= cloud.dim) throw std::invalid_argument("projection axis out of range");
  std::vector<std::pair<double, double>> out;
  out.reserve(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    auto p = cloud.point(i);
    out.emplace_back(p[ax], p[ay]);
  }
  return out;
}

}  // namespace zeroset
