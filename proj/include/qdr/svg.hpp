#pragma once

#include <string>
#include <vector>

namespace qdr {

// Minimal self-contained line plots for the figure bundles. Points with
// non-finite coordinates (and non-positive y on log axes) are skipped.
struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  std::vector<Series> series;
};

std::string render_line_plot(const PlotSpec& spec);

}  // namespace qdr
