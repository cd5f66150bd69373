#pragma once

#include <functional>

#include "qdr/params.hpp"

namespace qdr {

// Complementary error function accurate to ~1e-10 relative: power series for
// the erf part below x = 2, Lentz-evaluated continued fraction above.
double erfc_accurate(double x);

// Assignment fidelity of a balanced two-outcome Gaussian measurement.
double fidelity_from_snr(double snr);

// Inputs for the dispersive heterodyne budget. Rates angular rad/ns; the
// formula assumes the resonator linewidth is matched to 2|chi|, so kappa is
// carried for reporting and callers warn on a mismatch.
struct DispersiveBudgetParams {
  double chi;               // qubit pull, angular (sign irrelevant)
  double kappa;             // resonator linewidth, angular
  double drive_amp;         // heterodyne drive amplitude, angular
  double delta_over_g;      // detuning ratio used for the photon budget
  double nbar_target_ratio; // steady photon number as a fraction of critical
};

struct LongitudinalBudgetParams {
  double gz_tilde;  // modulated longitudinal coupling, angular, >= 0
  double kappa;     // resonator linewidth, angular, > 0
};

struct ReadoutBudget {
  double snr;
  double fidelity;
  double tau_us;
  double nbar;
  const char* scheme;
};

// Integrated heterodyne SNR after tau_us of dispersive readout.
double snr_dispersive(const DispersiveBudgetParams& p, double tau_us);

// Same for longitudinal readout with a modulated coupling.
double snr_longitudinal(const LongitudinalBudgetParams& p, double tau_us);

// Drive amplitude that holds nbar at nbar_target_ratio of the critical
// photon number (delta_over_g / 2)^2. Rates angular.
struct DriveBudget {
  double drive_amp;
  double nbar;
  double n_crit;
};
DriveBudget drive_from_photon_budget(double kappa, double delta_over_g,
                                     double nbar_target_ratio);

// Smallest tau_us with fidelity_from_snr(snr_of_tau_us(tau)) >= target,
// bisected to |F - target| < 1e-8. Throws std::domain_error for targets
// outside (0, 1) and a numeric error when no bracket exists or 200
// bisection steps fail to converge.
double time_to_fidelity(const std::function<double(double)>& snr_of_tau_us,
                        double target);

// One-parameter drive applied to the box qubit for longitudinal readout.
enum class ModulatedParameter { tunneling, flux };

struct ModulationResult {
  double gz_tilde;         // first Fourier cosine coefficient of g_z, angular
  double gz_tilde_linear;  // small-amplitude estimate amp * dg_z/dparam
};

// Modulates t_L = t_R (GHz) or phi_x (rad) as mean + amp*cos(theta) and
// extracts the fundamental of g_z over one period (256-point midpoint rule).
// Tunneling modulation requires t_L == t_R and mean - amp >= 0.
ModulationResult longitudinal_modulation(const MBParams& p, double lambda,
                                         ModulatedParameter param, double amp,
                                         int n = 0);

}  // namespace qdr
