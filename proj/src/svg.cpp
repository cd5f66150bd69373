#include "qdr/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qdr {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 610.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 370.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#17becf"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string xml_escape(const std::string& raw) {
  std::string out;
  for (const char ch : raw) {
    switch (ch) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      default:
        out += ch;
    }
  }
  return out;
}

struct AxisRange {
  double lo = 0.0;
  double hi = 1.0;
};

bool usable(double v, bool log_scale) {
  return std::isfinite(v) && (!log_scale || v > 0.0);
}

}  // namespace

std::string render_line_plot(const PlotSpec& spec) {
  AxisRange xr{std::numeric_limits<double>::infinity(),
               -std::numeric_limits<double>::infinity()};
  AxisRange yr = xr;
  for (const auto& s : spec.series) {
    if (s.x.size() != s.y.size()) {
      throw std::invalid_argument("render_line_plot: x/y length mismatch");
    }
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!usable(s.x[i], false) || !usable(s.y[i], spec.log_y)) {
        continue;
      }
      xr.lo = std::min(xr.lo, s.x[i]);
      xr.hi = std::max(xr.hi, s.x[i]);
      const double yv = spec.log_y ? std::log10(s.y[i]) : s.y[i];
      yr.lo = std::min(yr.lo, yv);
      yr.hi = std::max(yr.hi, yv);
    }
  }
  if (!(xr.lo <= xr.hi)) {
    xr = {0.0, 1.0};
    yr = {0.0, 1.0};
  }
  if (xr.hi == xr.lo) {
    xr.lo -= 0.5;
    xr.hi += 0.5;
  }
  if (yr.hi == yr.lo) {
    yr.lo -= 0.5;
    yr.hi += 0.5;
  }

  const auto map_x = [&](double v) {
    return kLeft + (v - xr.lo) / (xr.hi - xr.lo) * (kRight - kLeft);
  };
  const auto map_y = [&](double v) {
    const double t = spec.log_y ? std::log10(v) : v;
    return kBottom - (t - yr.lo) / (yr.hi - yr.lo) * (kBottom - kTop);
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"15\">"
      << xml_escape(spec.title) << "</text>\n";

  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\""
      << kRight - kLeft << "\" height=\"" << kBottom - kTop
      << "\" fill=\"none\" stroke=\"#333\"/>\n";

  constexpr int kTicks = 5;
  for (int i = 0; i < kTicks; ++i) {
    const double fx = xr.lo + (xr.hi - xr.lo) * i / (kTicks - 1);
    const double px = map_x(fx);
    out << "<line x1=\"" << px << "\" y1=\"" << kBottom << "\" x2=\"" << px
        << "\" y2=\"" << kBottom + 5 << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << px << "\" y=\"" << kBottom + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << fmt(fx) << "</text>\n";

    const double fy = yr.lo + (yr.hi - yr.lo) * i / (kTicks - 1);
    const double py = kBottom - (fy - yr.lo) / (yr.hi - yr.lo) *
                                    (kBottom - kTop);
    out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py << "\" x2=\""
        << kLeft << "\" y2=\"" << py << "\" stroke=\"#333\"/>\n";
    const double label = spec.log_y ? std::pow(10.0, fy) : fy;
    out << "<text x=\"" << kLeft - 8 << "\" y=\"" << py + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << fmt(label) << "</text>\n";
  }

  out << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">"
      << xml_escape(spec.x_label) << "</text>\n";
  out << "<text x=\"18\" y=\"" << (kTop + kBottom) / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 18 "
      << (kTop + kBottom) / 2 << ")\">" << xml_escape(spec.y_label)
      << "</text>\n";

  int color_index = 0;
  for (const auto& s : spec.series) {
    const char* color = kPalette[color_index % 6];
    bool gap = true;
    std::string path;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!usable(s.x[i], false) || !usable(s.y[i], spec.log_y)) {
        gap = true;
        continue;
      }
      path += gap ? "M" : "L";
      path += fmt(map_x(s.x[i]));
      path += " ";
      path += fmt(map_y(s.y[i]));
      gap = false;
    }
    out << "<path d=\"" << path << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.6\"";
    if (s.dashed) {
      out << " stroke-dasharray=\"6 4\"";
    }
    out << "/>\n";

    const double ly = kTop + 16 + 18 * color_index;
    out << "<line x1=\"" << kRight - 150 << "\" y1=\"" << ly << "\" x2=\""
        << kRight - 120 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"1.6\"";
    if (s.dashed) {
      out << " stroke-dasharray=\"6 4\"";
    }
    out << "/>\n";
    out << "<text x=\"" << kRight - 114 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"11\">"
        << xml_escape(s.name) << "</text>\n";
    ++color_index;
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace qdr
