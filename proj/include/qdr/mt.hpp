#pragma once

#include <vector>

#include "qdr/basis.hpp"
#include "qdr/eigensystem.hpp"
#include "qdr/engine.hpp"
#include "qdr/params.hpp"

namespace qdr {

// Majorana-transmon Hamiltonian on the full electron-charge lattice, angular
// rad/ns. `parity` (+1 or -1) selects the sign of the single-electron term
// and only matters for the two-sector representation below.
Matrix build_mt_hamiltonian(const MTParams& p, int parity,
                            const ChargeBasis& basis);

struct MTEigensystem {
  LevelSpectrum levels;          // angular, labels filled per level
  Matrix n_elements;             // <l| N |l'> on the kept levels
  std::vector<double> cos_half;  // diagnostic used for the labels
};

// Single-lattice diagonalization with interleaved parity families. Levels are
// labeled +1/-1 by the sign of <cos>, with index-parity used as a tie break
// when |<cos>| < 1e-6 (the E_M = 0 degenerate case).
MTEigensystem mt_eigensystem(const MTParams& p, const ChargeBasis& basis,
                             int k_levels = 12);

// Indices of the first +1-labeled and first -1-labeled level.
struct LogicalPair {
  int plus;
  int minus;
};
LogicalPair mt_logical_pair(const std::vector<int>& labels);

// Parity-resolved pull (chi[-1] - chi[+1]) / 2. Returns exactly 0 when
// E_M == 0. lambda and omega_r angular.
ChiResult chi_mt_numeric(const MTParams& p, double lambda, double omega_r,
                         const ChargeBasis& basis, int k_levels = 12,
                         double guard = 1e-3);

// Doubles the lattice until two successive results agree to rtol.
ChiResult chi_mt_converged(const MTParams& p, double lambda, double omega_r,
                           int n_max_start = 30, int k_levels = 12,
                           double guard = 1e-3, double rtol = 1e-8,
                           int max_doublings = 4);

// Explicit parity-sector representation: the lattice is doubled into a
// +1 block and a -1 block that share no charge matrix elements.
struct TwoSectorEigensystem {
  Eigensystem plus;
  Eigensystem minus;
};
TwoSectorEigensystem mt_two_sector_eigensystem(const MTParams& p,
                                               const ChargeBasis& basis);

// Charge elements in the assembled two-sector eigenbasis, k levels per
// sector ordered [plus levels..., minus levels...]. Cross-sector entries are
// structurally zero.
Matrix two_sector_charge_elements(const TwoSectorEigensystem& ts,
                                  const ChargeBasis& basis, int k_levels);

std::vector<SpectrumRow> mt_spectrum_vs_ng(const MTParams& p,
                                           const std::vector<double>& ng_grid,
                                           const ChargeBasis& basis,
                                           int k_per_sector = 4);

}  // namespace qdr
