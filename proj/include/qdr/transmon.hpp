#pragma once

#include "qdr/basis.hpp"
#include "qdr/engine.hpp"
#include "qdr/params.hpp"

namespace qdr {

// Charge qubit on an even-charge (Cooper-pair) lattice of dimension
// 2*ncp + 1. The Hamiltonian is angular rad/ns; the charge operator counts
// electrons (twice the pair index) and is dimensionless.
Matrix build_transmon_hamiltonian(const TransmonParams& p, int ncp);
Matrix pair_charge_operator(int ncp);

struct TransmonLevels {
  LevelSpectrum spectrum;  // angular, referenced to the ground state
  Matrix n_elements;       // <l| N |l'> on the kept levels, dimensionless
};

TransmonLevels transmon_levels(const TransmonParams& p, int ncp = 20,
                               int n_levels = 10);

// Full second-order pull of the 0-1 qubit through the level engine.
ChiResult chi_transmon_numeric(const TransmonParams& p, double lambda,
                               double omega_r, int ncp = 20, int n_levels = 10,
                               double guard = 1e-3);

}  // namespace qdr
