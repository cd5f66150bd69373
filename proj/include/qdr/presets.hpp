#pragma once

#include <string>
#include <vector>

#include "qdr/csv.hpp"
#include "qdr/svg.hpp"

namespace qdr {

struct FigureCheck {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  std::string detail;
};

struct FigurePanel {
  std::string name;  // file stem, e.g. "panel_a"
  CsvTable table;
  PlotSpec plot;
};

// One manifest entry; either a number or a string.
struct ManifestParam {
  std::string key;
  bool numeric = true;
  double num = 0.0;
  std::string text;
};

struct FigureBundle {
  int figure = 0;
  std::string title;
  std::vector<FigurePanel> panels;
  std::vector<ManifestParam> parameters;  // every resolved input + tolerance
  std::vector<FigureCheck> checks;
  std::vector<std::string> notes;
};

// Builds figure 2..7 deterministically. Throws std::out_of_range otherwise.
FigureBundle make_figure(int figure);

// Operating points of the modulated-drive figure, reused by the acceptance
// runner. Energies linear GHz, angles rad; gz values linear GHz.
struct Fig7Operating {
  double x1 = 0.0;          // lower solution of s(x) = s_target
  double x2 = 0.0;          // upper solution
  double x_max = 0.0;       // argmax of s
  double s_max = 0.0;
  double amp_t_GHz = 0.0;   // solved tunneling modulation amplitude at x1
  double amp_t_linear_GHz = 0.0;
  double amp_phi_rad = 0.0;  // solved flux modulation amplitude at x=1/2
  double amp_phi_linear_rad = 0.0;
  double gz_target_GHz = 0.0;
};

Fig7Operating solve_fig7_operating();

}  // namespace qdr
