#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qteleport/report.hpp"

namespace qteleport::plot {

// Static bar charts of probability-like values in [0, 1]. Coordinates
// are printed with fixed precision so the same report always renders to
// the same bytes.

namespace detail {

inline std::string fmt(double v, const char* spec = "%.2f") {
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

struct Bar {
  double value = 0.0;    // bar height as a fraction of the y-axis
  std::string label;     // tick text under the bar
  std::string color;
};

struct ChartSpec {
  std::string title;
  std::vector<Bar> bars;
  std::vector<double> dashed_lines;            // theory overlays, y in [0, 1]
  std::vector<std::pair<std::string, std::string>> legend;  // (label, color)
  int group_size = 1;    // bars per visual group (extra gap between groups)
};

inline constexpr double kWidth = 720.0;
inline constexpr double kHeight = 420.0;
inline constexpr double kLeft = 70.0;
inline constexpr double kRight = 700.0;
inline constexpr double kTop = 52.0;
inline constexpr double kBottom = 360.0;

inline double y_pixel(double frac) { return kBottom - frac * (kBottom - kTop); }

inline std::string render(const ChartSpec& spec) {
  if (spec.bars.empty()) throw std::invalid_argument("nothing to plot");
  if (spec.bars.size() > 64) throw std::invalid_argument("too many bins to plot");

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"420\" "
         "viewBox=\"0 0 720 420\">\n";
  svg += "<rect width=\"720\" height=\"420\" fill=\"#ffffff\"/>\n";
  svg += "<text x=\"360\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" + spec.title + "</text>\n";

  for (int tick = 0; tick <= 4; ++tick) {
    const double frac = tick * 0.25;
    const std::string y = fmt(y_pixel(frac));
    svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + y + "\" x2=\"" + fmt(kRight) +
           "\" y2=\"" + y + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + fmt(kLeft - 8) + "\" y=\"" + fmt(y_pixel(frac) + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" +
           fmt(frac) + "</text>\n";
  }

  const auto n = spec.bars.size();
  const auto group_size = static_cast<std::size_t>(spec.group_size);
  const auto n_groups = (n + group_size - 1) / group_size;
  const double span = kRight - kLeft;
  const double group_w = span / static_cast<double>(n_groups);
  const double bar_w = group_w * 0.8 / static_cast<double>(group_size);

  for (std::size_t i = 0; i < n; ++i) {
    const Bar& bar = spec.bars[i];
    const std::size_t group = i / group_size;
    const std::size_t slot = i % group_size;
    const double x0 = kLeft + group_w * static_cast<double>(group) + group_w * 0.1 +
                      bar_w * static_cast<double>(slot);
    const double top = y_pixel(bar.value);
    svg += "<rect x=\"" + fmt(x0) + "\" y=\"" + fmt(top) + "\" width=\"" + fmt(bar_w) +
           "\" height=\"" + fmt(kBottom - top) + "\" fill=\"" + bar.color + "\"/>\n";
    svg += "<text x=\"" + fmt(x0 + bar_w / 2) + "\" y=\"" + fmt(top - 5) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
           fmt(bar.value, "%.4f") + "</text>\n";
    if (!bar.label.empty())
      svg += "<text x=\"" + fmt(x0 + bar_w / 2) + "\" y=\"" + fmt(kBottom + 18) +
             "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
             bar.label + "</text>\n";
  }

  for (double level : spec.dashed_lines) {
    const std::string y = fmt(y_pixel(level));
    svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + y + "\" x2=\"" + fmt(kRight) +
           "\" y2=\"" + y +
           "\" stroke=\"#333333\" stroke-width=\"1.5\" stroke-dasharray=\"5 4\"/>\n";
    svg += "<text x=\"" + fmt(kRight + 2) + "\" y=\"" + fmt(y_pixel(level) + 4) +
           "\" text-anchor=\"start\" font-family=\"sans-serif\" font-size=\"10\">" +
           fmt(level, "%.4f") + "</text>\n";
  }

  double legend_y = kTop + 4;
  for (const auto& [label, color] : spec.legend) {
    svg += "<rect x=\"" + fmt(kRight - 120) + "\" y=\"" + fmt(legend_y - 9) +
           "\" width=\"12\" height=\"12\" fill=\"" + color + "\"/>\n";
    svg += "<text x=\"" + fmt(kRight - 104) + "\" y=\"" + fmt(legend_y + 1) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + label + "</text>\n";
    legend_y += 18;
  }

  svg += "<line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(kBottom) + "\" x2=\"" + fmt(kRight) +
         "\" y2=\"" + fmt(kBottom) + "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  svg += "</svg>\n";
  return svg;
}

inline constexpr const char* kBlue = "#4a78b8";
inline constexpr const char* kOrange = "#c86a4a";

using report::json;

inline double number_at(const json& node, const char* key) {
  if (!node.contains(key) || !node[key].is_number())
    throw std::invalid_argument(std::string("report is missing numeric field '") + key + "'");
  return node[key].get<double>();
}

inline ChartSpec prep_chart(const json& results) {
  ChartSpec spec;
  spec.title = "State preparation: Z-basis populations";
  spec.bars = {{number_at(results, "p0"), "0", kBlue},
               {number_at(results, "p1"), "1", kBlue}};
  spec.dashed_lines = {number_at(results, "theory_p0"), number_at(results, "theory_p1")};
  return spec;
}

inline ChartSpec teleport_chart(const json& results) {
  if (!results.contains("per_outcome") || !results["per_outcome"].is_object())
    throw std::invalid_argument("report has no per_outcome object");
  ChartSpec spec;
  spec.title = "Teleportation: Bob populations by Alice outcome";
  spec.group_size = 2;
  for (const auto& [key, stats] : results["per_outcome"].items()) {
    spec.bars.push_back({number_at(stats, "p_alpha"), key, kBlue});
    spec.bars.push_back({number_at(stats, "p_beta"), "", kOrange});
  }
  spec.dashed_lines = {number_at(results, "theory_p_alpha"),
                       number_at(results, "theory_p_beta")};
  spec.legend = {{"p_alpha", kBlue}, {"p_beta", kOrange}};
  return spec;
}

inline ChartSpec histogram_chart(const json& results) {
  const json& hist = results["histogram"];
  if (!hist.is_object()) throw std::invalid_argument("report has no histogram object");
  const double shots = number_at(results, "shots");
  ChartSpec spec;
  spec.title = "Measurement histogram";
  for (const auto& [key, count] : hist.items()) {
    if (!count.is_number()) throw std::invalid_argument("histogram counts must be numbers");
    const double frac = shots > 0 ? count.get<double>() / shots : 0.0;
    spec.bars.push_back({frac, key, kBlue});
  }
  if (spec.bars.empty()) spec.bars.push_back({0.0, "", kBlue});
  return spec;
}

inline ChartSpec analytic_chart(const json& results) {
  const json& keys = results["bitstrings"];
  const json& probs = results["probabilities"];
  if (!keys.is_array() || !probs.is_array() || keys.size() != probs.size())
    throw std::invalid_argument("report has no bitstring probabilities");
  ChartSpec spec;
  spec.title = "Exact outcome probabilities";
  for (std::size_t i = 0; i < keys.size(); ++i)
    spec.bars.push_back({probs[i].get<double>(), keys[i].get<std::string>(), kBlue});
  return spec;
}

}  // namespace detail

/// Renders an OutputReport (the JSON envelope emitted by every command)
/// to an SVG bar chart. Dispatch keys off the results payload; throws
/// std::invalid_argument when the report carries nothing plottable.
inline std::string render_report_svg(const report::json& rep) {
  if (!rep.is_object() || !rep.contains("results") || !rep["results"].is_object())
    throw std::invalid_argument("not an OutputReport: missing results object");
  const report::json& results = rep["results"];
  detail::ChartSpec spec;
  if (results.contains("per_outcome"))
    spec = detail::teleport_chart(results);
  else if (results.contains("p0"))
    spec = detail::prep_chart(results);
  else if (results.contains("histogram"))
    spec = detail::histogram_chart(results);
  else if (results.contains("probabilities"))
    spec = detail::analytic_chart(results);
  else
    throw std::invalid_argument("report has no plottable results");
  return detail::render(spec);
}

}  // namespace qteleport::plot
