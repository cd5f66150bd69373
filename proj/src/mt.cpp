#include "qdr/mt.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qdr/units.hpp"

namespace qdr {

Matrix build_mt_hamiltonian(const MTParams& p, int parity,
                            const ChargeBasis& basis) {
  if (parity != 1 && parity != -1) {
    throw std::invalid_argument("build_mt_hamiltonian: parity must be +1 or -1");
  }
  const int dim = basis.dimension();
  const double e_c = to_angular(p.E_C);
  const double e_j = to_angular(p.E_J);
  const double e_m = to_angular(p.E_M);

  Matrix h = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const double n = basis.charge(i) - p.n_g;
    h(i, i) = e_c * n * n;
  }
  const Matrix s2 = charge_shift(basis, 2);
  h -= (e_j / 2.0) * (s2 + s2.adjoint());
  const Matrix s1 = charge_shift(basis, 1);
  const std::complex<double> phase =
      std::exp(std::complex<double>(0.0, p.phi_x / 2.0));
  h -= (parity * e_m / 2.0) *
       (phase * s1 + std::conj(phase) * s1.adjoint());
  require_hermitian(h, "build_mt_hamiltonian");
  return h;
}

namespace {

// Families are labeled by the sign of <cos(phase/2)>; exactly degenerate
// levels (the E_M = 0 case) alternate, so index parity breaks the tie.
int family_label(double cos_half, int level_index) {
  if (std::abs(cos_half) < 1e-6) {
    return (level_index % 2 == 0) ? 1 : -1;
  }
  return cos_half >= 0.0 ? 1 : -1;
}

}  // namespace

MTEigensystem mt_eigensystem(const MTParams& p, const ChargeBasis& basis,
                             int k_levels) {
  const Matrix h = build_mt_hamiltonian(p, 1, basis);
  const Eigensystem eig = hermitian_eig(h);
  const int dim = basis.dimension();
  const int keep = std::min(k_levels, dim);
  if (keep < 2) {
    throw std::invalid_argument("mt_eigensystem: need at least two levels");
  }

  const Matrix s1 = charge_shift(basis, 1);
  const Matrix w = (s1 + s1.adjoint()) / 2.0;
  const Matrix v = eig.vectors.leftCols(keep);
  const Matrix wv = w * v;

  MTEigensystem out;
  out.levels = spectrum_from_eigensystem(eig, keep);
  out.levels.labels.resize(keep);
  out.cos_half.resize(keep);
  for (int j = 0; j < keep; ++j) {
    const double cos_half = std::real(v.col(j).dot(wv.col(j)));
    out.cos_half[j] = cos_half;
    out.levels.labels[j] = family_label(cos_half, j);
  }
  out.n_elements = v.adjoint() * number_operator(basis) * v;
  return out;
}

LogicalPair mt_logical_pair(const std::vector<int>& labels) {
  LogicalPair pair{-1, -1};
  for (int j = 0; j < static_cast<int>(labels.size()); ++j) {
    if (labels[j] == 1 && pair.plus < 0) {
      pair.plus = j;
    } else if (labels[j] == -1 && pair.minus < 0) {
      pair.minus = j;
    }
  }
  if (pair.plus < 0 || pair.minus < 0) {
    throw std::runtime_error(
        "mt_logical_pair: kept levels do not contain both parity families");
  }
  return pair;
}

ChiResult chi_mt_numeric(const MTParams& p, double lambda, double omega_r,
                         const ChargeBasis& basis, int k_levels,
                         double guard) {
  if (p.E_M == 0.0) {
    return {0.0, std::numeric_limits<double>::infinity()};
  }
  const MTEigensystem ms = mt_eigensystem(p, basis, k_levels);
  LevelCouplings couplings;
  couplings.g = std::complex<double>(0.0, 1.0) * lambda * ms.n_elements;
  const DispersiveResult res =
      dispersive_shifts(ms.levels, couplings, omega_r, guard);
  const LogicalPair pair = mt_logical_pair(ms.levels.labels);
  return {qubit_chi(res, pair.minus, pair.plus), res.resonance_margin};
}

ChiResult chi_mt_converged(const MTParams& p, double lambda, double omega_r,
                           int n_max_start, int k_levels, double guard,
                           double rtol, int max_doublings) {
  if (p.E_M == 0.0) {
    return {0.0, std::numeric_limits<double>::infinity()};
  }
  int n_max = n_max_start;
  ChiResult prev = chi_mt_numeric(p, lambda, omega_r, ChargeBasis(n_max),
                                  k_levels, guard);
  for (int step = 0; step < max_doublings; ++step) {
    n_max *= 2;
    const ChiResult next = chi_mt_numeric(p, lambda, omega_r,
                                          ChargeBasis(n_max), k_levels, guard);
    const double scale = std::max(std::abs(next.chi), 1e-300);
    if (std::abs(next.chi - prev.chi) <= rtol * scale) {
      return next;
    }
    prev = next;
  }
  std::ostringstream msg;
  msg << "chi_mt_converged: no convergence to rtol " << rtol
      << " after reaching n_max = " << n_max;
  throw std::runtime_error(msg.str());
}

TwoSectorEigensystem mt_two_sector_eigensystem(const MTParams& p,
                                               const ChargeBasis& basis) {
  TwoSectorEigensystem ts;
  ts.plus = hermitian_eig(build_mt_hamiltonian(p, 1, basis));
  ts.minus = hermitian_eig(build_mt_hamiltonian(p, -1, basis));
  return ts;
}

Matrix two_sector_charge_elements(const TwoSectorEigensystem& ts,
                                  const ChargeBasis& basis, int k_levels) {
  const int dim = basis.dimension();
  const int keep = std::min(k_levels, dim);
  Matrix v = Matrix::Zero(2 * dim, 2 * keep);
  v.block(0, 0, dim, keep) = ts.plus.vectors.leftCols(keep);
  v.block(dim, keep, dim, keep) = ts.minus.vectors.leftCols(keep);

  const Matrix n = number_operator(basis);
  Matrix n_joint = Matrix::Zero(2 * dim, 2 * dim);
  n_joint.block(0, 0, dim, dim) = n;
  n_joint.block(dim, dim, dim, dim) = n;
  return v.adjoint() * n_joint * v;
}

std::vector<SpectrumRow> mt_spectrum_vs_ng(const MTParams& p,
                                           const std::vector<double>& ng_grid,
                                           const ChargeBasis& basis,
                                           int k_per_sector) {
  if (k_per_sector < 1) {
    throw std::invalid_argument(
        "mt_spectrum_vs_ng: need at least one level per sector");
  }
  std::vector<SpectrumRow> rows;
  for (const double ng : ng_grid) {
    MTParams q = p;
    q.n_g = ng;
    if (q.E_M == 0.0) {
      // Degenerate case: both families share one spectrum.
      const Eigensystem eig = hermitian_eig(build_mt_hamiltonian(q, 1, basis));
      const int keep = std::min(k_per_sector, basis.dimension());
      for (const int sector : {1, -1}) {
        for (int l = 0; l < keep; ++l) {
          rows.push_back(
              {ng, sector, l, to_linear(eig.values(l) - eig.values(0))});
        }
      }
      continue;
    }
    const MTEigensystem ms =
        mt_eigensystem(q, basis, std::min(2 * k_per_sector, basis.dimension()));
    for (const int sector : {1, -1}) {
      int emitted = 0;
      for (int j = 0;
           j < static_cast<int>(ms.levels.labels.size()) &&
           emitted < k_per_sector;
           ++j) {
        if (ms.levels.labels[j] != sector) {
          continue;
        }
        rows.push_back(
            {ng, sector, emitted, to_linear(ms.levels.frequencies(j))});
        ++emitted;
      }
    }
  }
  return rows;
}

}  // namespace qdr
