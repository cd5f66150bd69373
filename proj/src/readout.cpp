#include "qdr/readout.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qdr/box.hpp"
#include "qdr/units.hpp"

namespace qdr {

namespace {

// Series/continued-fraction split point for erfc.
constexpr double kErfcSplit = 2.0;

double erf_series(double x) {
  // erf(x) = 2/sqrt(pi) * sum_n (-1)^n x^(2n+1) / (n! (2n+1))
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (int n = 1; n <= 200; ++n) {
    term *= -x2 / n;
    const double add = term / (2 * n + 1);
    sum += add;
    if (std::abs(add) < 1e-18 * std::abs(sum)) {
      break;
    }
  }
  return 2.0 * std::numbers::inv_sqrtpi * sum;
}

double erfc_continued_fraction(double x) {
  // erfc(x) = exp(-x^2)/sqrt(pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
  // evaluated with the modified Lentz algorithm, a_n = n/2, b_n = x.
  constexpr double tiny = 1e-300;
  double f = x;
  double c = f;
  double d = 0.0;
  for (int n = 1; n <= 300; ++n) {
    const double a = 0.5 * n;
    d = x + a * d;
    if (d == 0.0) {
      d = tiny;
    }
    c = x + a / c;
    if (c == 0.0) {
      c = tiny;
    }
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-17) {
      break;
    }
  }
  return std::exp(-x * x) * std::numbers::inv_sqrtpi / f;
}

// Small-argument series keep the tau -> 0 limit exact; both brackets rise
// from 0 to 1 as the integration window grows. Below the split the closed
// forms lose most of their digits to cancellation, so the series carry
// enough terms to hand over at relative 1e-11 or better.
double bracket_dispersive(double x) {
  if (x < 5e-2) {
    const double x2 = x * x;
    const double x3 = x2 * x;
    return x2 / 3.0 - x3 / 6.0 + x2 * x2 / 30.0 - x3 * x3 / 630.0 +
           x3 * x2 * x2 / 2520.0;
  }
  return 1.0 - (1.0 / x) * (1.0 - std::exp(-x) * std::cos(x));
}

double bracket_longitudinal(double y) {
  if (y < 5e-2) {
    const double y2 = y * y;
    return y / 4.0 - y2 / 24.0 + y2 * y / 192.0 - y2 * y2 / 1920.0 +
           y2 * y2 * y / 23040.0;
  }
  return 1.0 - (2.0 / y) * (1.0 - std::exp(-y / 2.0));
}

}  // namespace

double erfc_accurate(double x) {
  if (x < 0.0) {
    return 2.0 - erfc_accurate(-x);
  }
  if (x < kErfcSplit) {
    return 1.0 - erf_series(x);
  }
  return erfc_continued_fraction(x);
}

double fidelity_from_snr(double snr) {
  if (snr < 0.0) {
    throw std::domain_error("fidelity_from_snr: snr must be >= 0");
  }
  return 1.0 - erfc_accurate(snr / 2.0);
}

double snr_dispersive(const DispersiveBudgetParams& p, double tau_us) {
  if (p.chi == 0.0) {
    throw std::domain_error("snr_dispersive: chi must be nonzero");
  }
  if (!(p.kappa > 0.0)) {
    throw std::domain_error("snr_dispersive: kappa must be positive");
  }
  if (p.drive_amp < 0.0) {
    throw std::domain_error("snr_dispersive: drive_amp must be >= 0");
  }
  if (tau_us < 0.0) {
    throw std::domain_error("snr_dispersive: tau must be >= 0");
  }
  const double chi = std::abs(p.chi);
  const double tau_ns = us_to_ns(tau_us);
  const double x = chi * tau_ns;
  return 2.0 * p.drive_amp * std::sqrt(tau_ns / chi) * bracket_dispersive(x);
}

double snr_longitudinal(const LongitudinalBudgetParams& p, double tau_us) {
  if (p.gz_tilde < 0.0) {
    throw std::domain_error("snr_longitudinal: gz_tilde must be >= 0");
  }
  if (!(p.kappa > 0.0)) {
    throw std::domain_error("snr_longitudinal: kappa must be positive");
  }
  if (tau_us < 0.0) {
    throw std::domain_error("snr_longitudinal: tau must be >= 0");
  }
  const double tau_ns = us_to_ns(tau_us);
  const double y = p.kappa * tau_ns;
  return std::sqrt(8.0) * p.gz_tilde * std::sqrt(tau_ns / p.kappa) *
         bracket_longitudinal(y);
}

DriveBudget drive_from_photon_budget(double kappa, double delta_over_g,
                                     double nbar_target_ratio) {
  if (!(kappa > 0.0)) {
    throw std::domain_error("drive_from_photon_budget: kappa must be positive");
  }
  if (nbar_target_ratio < 0.0) {
    throw std::domain_error(
        "drive_from_photon_budget: nbar_target_ratio must be >= 0");
  }
  DriveBudget out;
  out.n_crit = (delta_over_g / 2.0) * (delta_over_g / 2.0);
  out.nbar = nbar_target_ratio * out.n_crit;
  out.drive_amp = kappa * std::sqrt(out.nbar / 2.0);
  return out;
}

double time_to_fidelity(const std::function<double(double)>& snr_of_tau_us,
                        double target) {
  if (!(target > 0.0) || !(target < 1.0)) {
    throw std::domain_error("time_to_fidelity: target must be in (0, 1)");
  }
  const auto fidelity_at_ns = [&](double tau_ns) {
    return fidelity_from_snr(snr_of_tau_us(ns_to_us(tau_ns)));
  };

  double lo = 0.0;
  double hi = 0.1;
  while (fidelity_at_ns(hi) < target) {
    hi *= 2.0;
    if (hi > 1e12) {
      throw std::runtime_error(
          "time_to_fidelity: no bracket below 1e12 ns; the SNR never reaches "
          "the target");
    }
  }

  bool converged = false;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (fidelity_at_ns(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
    const double center = 0.5 * (lo + hi);
    if (std::abs(fidelity_at_ns(center) - target) < 1e-8 &&
        hi - lo < 1e-6 * std::max(hi, 1.0)) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "time_to_fidelity: bisection did not converge in 200 iterations "
           "(bracket ["
        << lo << ", " << hi << "] ns)";
    throw std::runtime_error(msg.str());
  }
  return ns_to_us(0.5 * (lo + hi));
}

ModulationResult longitudinal_modulation(const MBParams& p, double lambda,
                                         ModulatedParameter param, double amp,
                                         int n) {
  if (amp < 0.0) {
    throw std::domain_error("longitudinal_modulation: amplitude must be >= 0");
  }
  if (param == ModulatedParameter::tunneling) {
    if (p.t_L != p.t_R) {
      throw std::domain_error(
          "longitudinal_modulation: tunneling modulation requires t_L == t_R");
    }
    if (p.t_L - amp < 0.0) {
      throw std::domain_error(
          "longitudinal_modulation: amplitude would drive the tunneling "
          "amplitude negative");
    }
  }

  const auto gz_at = [&](double value) {
    MBParams q = p;
    if (param == ModulatedParameter::tunneling) {
      q.t_L = value;
      q.t_R = value;
    } else {
      q.phi_x = value;
    }
    return gz_static(q, lambda, n);
  };
  const double mean =
      (param == ModulatedParameter::tunneling) ? p.t_L : p.phi_x;

  constexpr int kQuadraturePoints = 256;
  double acc = 0.0;
  for (int k = 0; k < kQuadraturePoints; ++k) {
    const double theta = (k + 0.5) * two_pi / kQuadraturePoints;
    acc += gz_at(mean + amp * std::cos(theta)) * std::cos(theta);
  }

  ModulationResult out;
  out.gz_tilde = 2.0 / kQuadraturePoints * acc;
  const double h = 1e-6;
  const double slope = (gz_at(mean + h) - gz_at(mean - h)) / (2.0 * h);
  out.gz_tilde_linear = slope * amp;
  return out;
}

}  // namespace qdr
