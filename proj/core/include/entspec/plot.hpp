#pragma once

#include <string>
#include <utility>
#include <vector>

namespace entspec {

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

/// Standalone SVG line chart, one polyline per series with a legend.
/// Byte-stable for fixed input; throws on empty input without touching disk.
std::string render_line_chart(const std::vector<PlotSeries>& series, const std::string& title,
                              const std::string& x_label, const std::string& y_label);

void emit_plot(const std::vector<PlotSeries>& series, const std::string& title,
               const std::string& x_label, const std::string& y_label, const std::string& path);

}  // namespace entspec
