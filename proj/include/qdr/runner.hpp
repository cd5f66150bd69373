#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qdr/config.hpp"

namespace qdr {

// Frequencies resolved from a scenario, all angular rad/ns.
struct OperatingPoint {
  double omega_q = 0.0;       // readout-relevant qubit transition
  double g = 0.0;             // |coupling| used for the detuning ratio
  double omega_r = 0.0;
  double lambda = 0.0;
  double delta_over_g = 0.0;  // (omega_q - omega_r) / g
  int box_block = 0;          // active block for the box qubit
  std::vector<std::string> warnings;
};

OperatingPoint resolve_operating(const ScenarioConfig& cfg);

enum class ChiMethod { numeric, analytic, both };

struct RunResult {
  int exit_code = 0;
  std::vector<std::string> warnings;
};

// Level spectrum versus offset charge; the sweep path must be qubit.n_g.
RunResult run_spectrum(const ScenarioConfig& cfg, const SweepSpec& sweep,
                       std::ostream& out);

// Qubit pull along an arbitrary sweep. Rows hitting a resonant pair are
// emitted blank with a flag and a warning; if every row fails the exit code
// is 3.
RunResult run_chi(const ScenarioConfig& cfg, const SweepSpec& sweep,
                  ChiMethod method, std::ostream& out);

// Single-point readout budget as a JSON document echoing the resolved
// configuration.
RunResult run_readout(const ScenarioConfig& cfg, std::ostream& out);

// Writes one figure bundle (CSV data, SVG panels, manifest.json) under
// out_dir/fig<N>/. Returns 0, or 3 when an embedded check fails; partial
// output is kept either way.
int reproduce_figure(int figure, const std::string& out_dir,
                     std::ostream& diag);

}  // namespace qdr
