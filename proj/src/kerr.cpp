#include "qdr/kerr.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qdr/engine.hpp"
#include "qdr/units.hpp"

namespace qdr {

namespace {

void check_charge_params(double e_c, double e_j, const char* context) {
  if (!(e_c > 0.0)) {
    throw std::domain_error(std::string(context) + ": E_C must be positive");
  }
  if (!(e_j > 0.0)) {
    throw std::domain_error(std::string(context) + ": E_J must be positive");
  }
}

}  // namespace

KerrApprox kerr_approximation(const MTParams& p) {
  check_charge_params(p.E_C, p.E_J, "kerr_approximation");
  KerrApprox k;
  const double omega_p = std::sqrt(8.0 * p.E_J * p.E_C);
  k.omega_t = omega_p - p.E_C;
  k.xi0 = (4.0 * omega_p - p.E_C) / (64.0 * p.E_J);
  k.xi1 = (4.0 * omega_p - 2.0 * p.E_C) / (32.0 * p.E_J);
  k.xi2 = p.E_C / (32.0 * p.E_J);
  k.omega_mt = 2.0 * p.E_M * (1.0 - k.xi0);
  k.omega_plus = k.omega_t + p.E_M * k.xi1;
  k.omega_minus = k.omega_t - p.E_M * k.xi1;
  k.g_t_per_lambda = std::pow(p.E_J / (2.0 * p.E_C), 0.25);
  return k;
}

double chi_transmon_analytic(const TransmonParams& p, double lambda,
                             double omega_r, double guard) {
  check_charge_params(p.E_C, p.E_J, "chi_transmon_analytic");
  const double lam = to_linear(lambda);
  const double w_r = to_linear(omega_r);
  const double g_t = lam * std::pow(p.E_J / (2.0 * p.E_C), 0.25);
  const double omega_t = std::sqrt(8.0 * p.E_J * p.E_C) - p.E_C;

  const double d01 = omega_t - w_r;
  const double d12 = omega_t - p.E_C - w_r;
  const double g_scale = std::abs(g_t);
  if (std::abs(d01) < guard * g_scale) {
    throw ResonantPairError(1, 0, d01, g_scale);
  }
  if (std::abs(d12) < guard * g_scale) {
    throw ResonantPairError(2, 1, d12, g_scale);
  }
  return to_angular(g_t * g_t / d01 - g_t * g_t / d12);
}

double chi_mt_analytic(const MTParams& p, double lambda, double omega_r,
                       double guard) {
  const KerrApprox k = kerr_approximation(p);
  const double lam = to_linear(lambda);
  const double w_r = to_linear(omega_r);
  const double g_t = lam * k.g_t_per_lambda;

  const double d_plus = k.omega_plus - w_r;
  const double d_minus = k.omega_minus - w_r;
  const double g_scale = std::abs(g_t);
  if (std::abs(d_plus) < guard * g_scale) {
    throw ResonantPairError(1, 0, d_plus, g_scale);
  }
  if (std::abs(d_minus) < guard * g_scale) {
    throw ResonantPairError(1, 0, d_minus, g_scale);
  }
  return to_angular(0.5 * (g_t * g_t / d_plus - g_t * g_t / d_minus));
}

}  // namespace qdr
