#pragma once

#include "qdr/params.hpp"

namespace qdr {

// Closed-form weak-anharmonicity data for the charge qubit. All frequency
// fields are linear GHz.
struct KerrApprox {
  double omega_t;         // sqrt(8 E_J E_C) - E_C
  double xi0;             // (4 sqrt(8 E_J E_C) - E_C) / (64 E_J)
  double xi1;             // (4 sqrt(8 E_J E_C) - 2 E_C) / (32 E_J)
  double xi2;             // E_C / (32 E_J)
  double omega_mt;        // 2 E_M (1 - xi0)
  double omega_plus;      // omega_t + E_M xi1
  double omega_minus;     // omega_t - E_M xi1
  double g_t_per_lambda;  // (E_J / 2 E_C)^(1/4), dimensionless
};

// Valid deep in the E_J >> E_C regime; callers should warn below E_J/E_C = 10.
KerrApprox kerr_approximation(const MTParams& p);

// Closed-form qubit pulls. lambda and omega_r are angular rad/ns; the return
// value is angular rad/ns. Throws ResonantPairError when a denominator passes
// within guard*g of zero.
double chi_transmon_analytic(const TransmonParams& p, double lambda,
                             double omega_r, double guard = 1e-3);
double chi_mt_analytic(const MTParams& p, double lambda, double omega_r,
                       double guard = 1e-3);

}  // namespace qdr
