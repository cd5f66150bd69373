#pragma once

#include <vector>

#include "qdr/basis.hpp"
#include "qdr/engine.hpp"
#include "qdr/params.hpp"

namespace qdr {

// Island + readout-dot + fermion-occupation model on the product space
// |N> (x) |n_d> (x) |m>, dimension 4 * (2 n_max + 1). Angular rad/ns.
Matrix build_indirect_hamiltonian(const IndirectMTParams& p,
                                  const ChargeBasis& basis);

// Total charge seen by the resonator: island charge plus half the dot
// occupation. Dimensionless.
Matrix indirect_charge_operator(const ChargeBasis& basis);

// Diagonal of the conserved joint parity (dot occupation times fermion
// occupation), entries +1/-1.
RealVector indirect_parity_diagonal(const ChargeBasis& basis);

struct IndirectSector {
  LevelSpectrum levels;          // angular, labels filled per level
  Matrix n_elements;             // total charge on the kept levels
  std::vector<double> cos_half;  // label diagnostic
};

// Projects onto one joint-parity sector, diagonalizes, and labels the
// interleaved families the same way as the direct model.
IndirectSector indirect_sector(const IndirectMTParams& p,
                               const ChargeBasis& basis, int parity = 1,
                               int k_levels = 12);

// Logical splitting (first -1 level minus first +1 level), angular.
double indirect_omega_mt(const IndirectMTParams& p, const ChargeBasis& basis,
                         int k_levels = 12);

// Bisects the shared tunneling amplitude t_L = t_R (linear GHz) until the
// indirect splitting matches the direct model's numeric splitting.
double match_tunneling(const MTParams& direct, double eps_dot,
                       const ChargeBasis& direct_basis,
                       const ChargeBasis& indirect_basis, double t_lo = 0.5,
                       double t_hi = 12.0, int iterations = 60,
                       int k_levels = 12);

// Parity-resolved pull through the level engine, using the total-charge
// coupling. lambda and omega_r angular.
ChiResult chi_mt_indirect(const IndirectMTParams& p, double lambda,
                          double omega_r, const ChargeBasis& basis,
                          int k_levels = 12, double guard = 1e-3);

}  // namespace qdr
