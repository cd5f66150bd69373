#include "qdr/engine.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qdr {

namespace {

std::string resonant_message(int level_a, int level_b, double delta,
                             double g_mag) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "resonant pair (" << level_a << "," << level_b << "): delta=" << delta
      << " g=" << g_mag;
  return msg.str();
}

}  // namespace

ResonantPairError::ResonantPairError(int level_a_in, int level_b_in,
                                     double delta_in, double g_mag_in)
    : std::runtime_error(
          resonant_message(level_a_in, level_b_in, delta_in, g_mag_in)),
      level_a(level_a_in),
      level_b(level_b_in),
      delta(delta_in),
      g_mag(g_mag_in) {}

LevelCouplings coupling_matrix(const Eigensystem& eig, const Matrix& n_op,
                               double lambda, int k_levels) {
  if (n_op.rows() != n_op.cols() || n_op.rows() != eig.vectors.rows()) {
    std::ostringstream msg;
    msg << "coupling_matrix: operator is " << n_op.rows() << "x" << n_op.cols()
        << " but the eigenbasis has dimension " << eig.vectors.rows();
    throw std::invalid_argument(msg.str());
  }
  Eigen::Index keep = eig.vectors.cols();
  if (k_levels > 0 && k_levels < keep) {
    keep = k_levels;
  }
  const Matrix v = eig.vectors.leftCols(keep);
  LevelCouplings out;
  out.g = std::complex<double>(0.0, 1.0) * lambda * (v.adjoint() * n_op * v);
  return out;
}

LevelSpectrum spectrum_from_eigensystem(const Eigensystem& eig, int k_levels) {
  Eigen::Index keep = eig.values.size();
  if (k_levels > 0 && k_levels < keep) {
    keep = k_levels;
  }
  LevelSpectrum out;
  out.frequencies.resize(keep);
  const double ground = eig.values(0);
  for (Eigen::Index l = 0; l < keep; ++l) {
    out.frequencies(l) = eig.values(l) - ground;
  }
  return out;
}

DispersiveResult dispersive_shifts(const LevelSpectrum& spectrum,
                                   const LevelCouplings& couplings,
                                   double omega_r, double guard) {
  const Eigen::Index levels = spectrum.frequencies.size();
  if (levels < 2) {
    throw std::invalid_argument(
        "dispersive_shifts: need at least two levels");
  }
  if (couplings.g.rows() != levels || couplings.g.cols() != levels) {
    std::ostringstream msg;
    msg << "dispersive_shifts: coupling matrix is " << couplings.g.rows()
        << "x" << couplings.g.cols() << " for " << levels << " levels";
    throw std::invalid_argument(msg.str());
  }
  if (spectrum.frequencies(0) != 0.0) {
    throw std::invalid_argument(
        "dispersive_shifts: frequencies must be referenced to the ground "
        "level (frequencies[0] == 0)");
  }
  for (Eigen::Index l = 0; l + 1 < levels; ++l) {
    if (spectrum.frequencies(l + 1) < spectrum.frequencies(l)) {
      throw std::invalid_argument(
          "dispersive_shifts: frequencies must be sorted ascending");
    }
  }
  if (!(guard >= 0.0)) {
    throw std::invalid_argument("dispersive_shifts: guard must be >= 0");
  }

  const double g_max = couplings.g.cwiseAbs().maxCoeff();
  // Pairs this far below the largest coupling are numerical dust. Their
  // second-order weight is below double precision, and they may sit exactly
  // on a resonance, so they are dropped from the sums and the guard alike.
  // The threshold scales with the couplings, which keeps the quadratic
  // scaling of the shifts exact.
  const double dust = 1e-12 * std::max(g_max, 1e-300);

  Eigen::MatrixXd chi_pair = Eigen::MatrixXd::Zero(levels, levels);
  double margin = std::numeric_limits<double>::infinity();
  for (Eigen::Index l = 0; l < levels; ++l) {
    for (Eigen::Index lp = 0; lp < levels; ++lp) {
      const double g_mag = std::abs(couplings.g(l, lp));
      if (g_mag <= dust) {
        continue;
      }
      const double delta =
          spectrum.frequencies(l) - spectrum.frequencies(lp) - omega_r;
      if (std::abs(delta) < guard * g_mag) {
        throw ResonantPairError(static_cast<int>(l), static_cast<int>(lp),
                                delta, g_mag);
      }
      margin = std::min(margin, std::abs(delta) / g_mag);
      chi_pair(l, lp) = g_mag * g_mag / delta;
    }
  }

  DispersiveResult out;
  out.chi.resize(levels);
  out.eta.resize(levels);
  for (Eigen::Index l = 0; l < levels; ++l) {
    double row = 0.0;
    double col = 0.0;
    for (Eigen::Index lp = 0; lp < levels; ++lp) {
      row += chi_pair(l, lp);
      col += chi_pair(lp, l);
    }
    out.chi(l) = row - col;
    out.eta(l) = row;
  }
  out.resonance_margin = margin;
  return out;
}

double qubit_chi(const DispersiveResult& result, int l1, int l0) {
  const Eigen::Index levels = result.chi.size();
  if (l1 < 0 || l0 < 0 || l1 >= levels || l0 >= levels) {
    std::ostringstream msg;
    msg << "qubit_chi: level indices (" << l1 << "," << l0
        << ") outside [0, " << levels << ")";
    throw std::out_of_range(msg.str());
  }
  if (l1 == l0) {
    throw std::domain_error("qubit_chi: the two logical levels must differ");
  }
  return (result.chi(l1) - result.chi(l0)) / 2.0;
}

}  // namespace qdr
