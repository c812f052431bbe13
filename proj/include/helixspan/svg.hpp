#pragma once

#include <string>
#include <vector>

namespace helixspan {

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

// Render a scatter/line chart as a standalone SVG document. Fixed 800x600
// viewport, fixed tick policy, fixed number formatting: identical inputs
// produce identical bytes. With allow_empty, an input without points yields
// an empty-axes chart instead of an error.
std::string render_svg(const std::vector<PlotSeries>& series,
                       const std::string& title, const std::string& x_label,
                       const std::string& y_label, bool allow_empty = false);

}  // namespace helixspan
