#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qdr/basis.hpp"
#include "qdr/eigensystem.hpp"

namespace qdr {

// Level frequencies in angular units (rad/ns), measured from the ground level
// (frequencies[0] == 0) and sorted ascending. `labels` is either empty or one
// sector tag per level.
struct LevelSpectrum {
  RealVector frequencies;
  std::vector<int> labels;
};

// g[l,lp] = i * lambda * <l| N |lp> in the qubit eigenbasis; anti-Hermitian.
struct LevelCouplings {
  Matrix g;
};

struct DispersiveResult {
  RealVector chi;   // full second-order shift per level, angular
  RealVector eta;   // ac-Stark row sums per level, angular
  double resonance_margin = 0.0;  // min |delta| / |g| over contributing pairs
};

class ResonantPairError : public std::runtime_error {
 public:
  ResonantPairError(int level_a, int level_b, double delta, double g_mag);
  int level_a;
  int level_b;
  double delta;
  double g_mag;
};

// Couplings from an eigendecomposition and a charge-like operator. Keeps the
// lowest k_levels levels (all if k_levels <= 0).
LevelCouplings coupling_matrix(const Eigensystem& eig, const Matrix& n_op,
                               double lambda, int k_levels = 0);

LevelSpectrum spectrum_from_eigensystem(const Eigensystem& eig, int k_levels = 0);

// Second-order dispersive shifts: for every ordered pair (l,lp) with nonzero
// coupling, chi_pair = |g|^2 / (w_l - w_lp - w_r); chi_l is the row sum minus
// the column sum. Throws ResonantPairError when a non-negligible pair has
// |delta| < guard * |g|.
DispersiveResult dispersive_shifts(const LevelSpectrum& spectrum,
                                   const LevelCouplings& couplings,
                                   double omega_r, double guard = 1e-3);

// Qubit shift (chi[l1] - chi[l0]) / 2. Throws std::domain_error if l1 == l0
// and std::out_of_range for bad indices.
double qubit_chi(const DispersiveResult& result, int l1, int l0);

// Qubit shift together with the worst resonance margin of the run.
struct ChiResult {
  double chi;               // angular rad/ns
  double resonance_margin;  // min |delta| / |g| over coupled pairs
};

// One row of a spectrum-vs-offset-charge sweep, in I/O units.
struct SpectrumRow {
  double n_g;
  int sector;
  int level;
  double freq_GHz;
};

}  // namespace qdr
