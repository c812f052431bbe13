#include "helixspan/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "helixspan/numeric.hpp"

namespace helixspan {

namespace {

constexpr double kWidth = 800;
constexpr double kHeight = 600;
constexpr double kLeft = 70;
constexpr double kRight = 780;
constexpr double kTop = 40;
constexpr double kBottom = 550;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                "#9467bd", "#8c564b"};
constexpr int kPaletteSize = 6;

std::string fmt(double v, const char* spec) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string coord(double v) { return fmt(v, "%.2f"); }
std::string tick_label(double v) { return fmt(v, "%.6g"); }

std::string escape_xml(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

// Fixed tick policy: ~6 intervals at a 1/2/2.5/5 x 10^k step.
double nice_step(double range) {
  const double raw = range / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  if (norm <= 1.0) return mag;
  if (norm <= 2.0) return 2.0 * mag;
  if (norm <= 2.5) return 2.5 * mag;
  if (norm <= 5.0) return 5.0 * mag;
  return 10.0 * mag;
}

}  // namespace

std::string render_svg(const std::vector<PlotSeries>& series,
                       const std::string& title, const std::string& x_label,
                       const std::string& y_label, bool allow_empty) {
  bool has_points = false;
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min;
  double y_min = x_min;
  double y_max = -x_min;
  for (const PlotSeries& s : series)
    for (const auto& [x, y] : s.points) {
      has_points = true;
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  if (!has_points) {
    if (!allow_empty)
      throw Error(ErrorCode::SchemaMismatch, "no data points to plot");
    x_min = y_min = 0;
    x_max = y_max = 1;
  }
  if (x_min == x_max) {
    x_min -= 0.5;
    x_max += 0.5;
  } else {
    const double pad = 0.05 * (x_max - x_min);
    x_min -= pad;
    x_max += pad;
  }
  if (y_min == y_max) {
    y_min -= 0.5;
    y_max += 0.5;
  } else {
    const double pad = 0.05 * (y_max - y_min);
    y_min -= pad;
    y_max += pad;
  }

  const auto X = [&](double v) {
    return kLeft + (v - x_min) / (x_max - x_min) * (kRight - kLeft);
  };
  const auto Y = [&](double v) {
    return kBottom - (v - y_min) / (y_max - y_min) * (kBottom - kTop);
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" fill=\"white\"/>\n"
      << "<text x=\"" << (kWidth / 2)
      << "\" y=\"24\" text-anchor=\"middle\" font-family=\"monospace\" "
         "font-size=\"16\">"
      << escape_xml(title) << "</text>\n";

  // Grid and tick labels.
  const double x_step = nice_step(x_max - x_min);
  const double y_step = nice_step(y_max - y_min);
  const long x_first = static_cast<long>(std::ceil(x_min / x_step));
  const long x_last = static_cast<long>(std::floor(x_max / x_step));
  for (long i = x_first; i <= x_last; ++i) {
    const double t = static_cast<double>(i) * x_step;
    const std::string px = coord(X(t));
    svg << "<line x1=\"" << px << "\" y1=\"" << coord(kTop) << "\" x2=\"" << px
        << "\" y2=\"" << coord(kBottom)
        << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n"
        << "<text x=\"" << px << "\" y=\"" << coord(kBottom + 18)
        << "\" text-anchor=\"middle\" font-family=\"monospace\" "
           "font-size=\"11\">"
        << tick_label(t) << "</text>\n";
  }
  const long y_first = static_cast<long>(std::ceil(y_min / y_step));
  const long y_last = static_cast<long>(std::floor(y_max / y_step));
  for (long i = y_first; i <= y_last; ++i) {
    const double t = static_cast<double>(i) * y_step;
    const std::string py = coord(Y(t));
    svg << "<line x1=\"" << coord(kLeft) << "\" y1=\"" << py << "\" x2=\""
        << coord(kRight) << "\" y2=\"" << py
        << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n"
        << "<text x=\"" << coord(kLeft - 8) << "\" y=\"" << py
        << "\" dy=\"4\" text-anchor=\"end\" font-family=\"monospace\" "
           "font-size=\"11\">"
        << tick_label(t) << "</text>\n";
  }

  // Frame and axis labels.
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\""
      << (kRight - kLeft) << "\" height=\"" << (kBottom - kTop)
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n"
      << "<text x=\"" << ((kLeft + kRight) / 2) << "\" y=\"" << (kHeight - 10)
      << "\" text-anchor=\"middle\" font-family=\"monospace\" "
         "font-size=\"13\">"
      << escape_xml(x_label) << "</text>\n"
      << "<text x=\"18\" y=\"" << ((kTop + kBottom) / 2)
      << "\" text-anchor=\"middle\" font-family=\"monospace\" "
         "font-size=\"13\" transform=\"rotate(-90 18 "
      << ((kTop + kBottom) / 2) << ")\">" << escape_xml(y_label)
      << "</text>\n";

  // Data series: polyline plus point markers, fixed palette order.
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* color = kPalette[k % kPaletteSize];
    const PlotSeries& s = series[k];
    if (s.points.size() > 1) {
      svg << "<polyline fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < s.points.size(); ++i) {
        if (i) svg << ' ';
        svg << coord(X(s.points[i].first)) << ','
            << coord(Y(s.points[i].second));
      }
      svg << "\"/>\n";
    }
    for (const auto& [x, y] : s.points)
      svg << "<circle cx=\"" << coord(X(x)) << "\" cy=\"" << coord(Y(y))
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
  }

  // Legend, top-right corner of the plot area.
  double legend_y = kTop + 16;
  for (std::size_t k = 0; k < series.size(); ++k) {
    if (series[k].label.empty()) continue;
    const char* color = kPalette[k % kPaletteSize];
    svg << "<rect x=\"" << coord(kRight - 160) << "\" y=\""
        << coord(legend_y - 9) << "\" width=\"10\" height=\"10\" fill=\""
        << color << "\"/>\n"
        << "<text x=\"" << coord(kRight - 145) << "\" y=\"" << coord(legend_y)
        << "\" font-family=\"monospace\" font-size=\"12\">"
        << escape_xml(series[k].label) << "</text>\n";
    legend_y += 16;
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace helixspan
