#pragma once

#include <array>
#include <vector>

#include "qdr/basis.hpp"
#include "qdr/engine.hpp"
#include "qdr/params.hpp"

namespace qdr {

// Closed-form solution of one total-charge block of the box qubit. All
// energies linear GHz, angles radians.
struct BlockSolution {
  int n;                  // total charge of the block
  double delta_n;         // dot detuning inside the block
  double f_plus;          // hybridization gaps
  double f_minus;
  double eps_c;           // common shift
  double eps_m;           // parity splitting
  double E_n;             // lowest level of the block
  double alpha_plus_mag;  // mixing-angle magnitudes
  double alpha_minus_mag;

  // The four block levels {E, E+eps_m, E+eps_c, E+eps_c+eps_m}, sorted
  // ascending.
  std::array<double, 4> levels() const;
};

BlockSolution block_solution(const MBParams& p, int n);

// The same block as an explicit 4x4 Hamiltonian on the ordered basis
// (n_d, m) = (0,0), (0,1), (1,0), (1,1). Angular rad/ns.
Matrix block_hamiltonian(const MBParams& p, int n);

// Resonator couplings of the block transitions, angular rad/ns.
struct BoxCouplings {
  double g_c;                  // common (real by construction)
  double g_m;                  // parity-resolved (real by construction)
  std::complex<double> g_plus;   // intra-sector transition couplings
  std::complex<double> g_minus;
};

BoxCouplings box_couplings(const MBParams& p, int n, double lambda);

// Closed-form parity-resolved pull of block n. Angular in and out. Throws
// ResonantPairError when either transition passes within guard*|g| of the
// resonator.
double chi_mb_analytic(const MBParams& p, double lambda, double omega_r,
                       int n, double guard = 1e-3);

// Same quantity through exact diagonalization of the block plus the level
// engine, using the island-charge coupling lambda * (n - n_dot).
ChiResult chi_mb_numeric(const MBParams& p, double lambda, double omega_r,
                         int n, double guard = 1e-3);

// Block whose ground level is lowest within n in [-n_window, n_window].
int operating_block(const MBParams& p, int n_window = 2);

// All block levels across the window, referenced to the global minimum.
// Row.sector holds the block charge n.
std::vector<SpectrumRow> mb_spectrum_vs_ng(const MBParams& p,
                                           const std::vector<double>& ng_grid,
                                           int n_window = 2);

// Static longitudinal coupling g_m / 2 of block n, angular.
double gz_static(const MBParams& p, double lambda, int n = 0);

}  // namespace qdr
