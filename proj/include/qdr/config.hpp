#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdr/params.hpp"

namespace qdr {

enum class QubitType { transmon, majorana_transmon, majorana_box };

const char* qubit_type_name(QubitType type);

// Resonator section. Exactly one of delta_over_g and omega_r_GHz must be
// given; the other is resolved from the qubit's closed-form frequency.
struct ResonatorConfig {
  double lambda_GHz = 0.0;
  std::optional<double> delta_over_g;
  std::optional<double> omega_r_GHz;
};

struct NumericsConfig {
  int n_max = 30;     // charge lattice half-width
  int ncp = 20;       // pair lattice half-width (transmon)
  int k_levels = 0;   // levels kept by the engine; 0 picks the task default
  double guard = 1e-3;
  int n_window = 2;   // box block window
};

enum class ReadoutScheme { dispersive, longitudinal };

struct ReadoutConfig {
  ReadoutScheme scheme = ReadoutScheme::dispersive;
  double nbar_target_ratio = 0.2;
  std::optional<double> kappa_MHz;     // default is the matched value 2|chi|
  std::optional<double> gz_tilde_MHz;  // required for the longitudinal scheme
  double target_fidelity = 0.9999;
  std::vector<double> tau_grid_us = {0.1, 0.2, 0.5, 1.0};
};

struct ScenarioConfig {
  QubitType qubit_type = QubitType::transmon;
  TransmonParams transmon;  // active when qubit_type == transmon
  MTParams mt;              // active when qubit_type == majorana_transmon
  MBParams mb;              // active when qubit_type == majorana_box
  ResonatorConfig resonator;
  NumericsConfig numerics;
  ReadoutConfig readout;
};

// Carries every validation issue found, each prefixed with its field path.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

ScenarioConfig parse_config(const std::string& json_text,
                            const std::string& source_name);
ScenarioConfig load_config(const std::string& path);

// One swept parameter: "path=start:stop:count" (inclusive linear grid,
// count >= 1) or "path=[v1,v2,...]".
struct SweepSpec {
  std::string path;
  std::vector<double> values;
};

SweepSpec parse_sweep(const std::string& arg);

// Paths accepted by apply_sweep_value for this qubit type.
std::vector<std::string> sweep_paths(QubitType type);

// Writes one swept value into the config. "qubit.t" sets both box tunneling
// amplitudes; setting one member of the resonator pair clears the other.
void apply_sweep_value(ScenarioConfig& cfg, const std::string& path,
                       double value);

}  // namespace qdr
