#include "qdr/indirect.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "qdr/mt.hpp"
#include "qdr/units.hpp"

namespace qdr {

namespace {

using Complex = std::complex<double>;

Matrix kron3(const Matrix& a, const Matrix& b, const Matrix& c) {
  return kron(kron(a, b), c);
}

Matrix dot_lowering() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

Matrix dot_occupation() {
  Matrix m = Matrix::Zero(2, 2);
  m(1, 1) = 1.0;
  return m;
}

Matrix pauli_x() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

Matrix pauli_y() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = Complex(0.0, -1.0);
  m(1, 0) = Complex(0.0, 1.0);
  return m;
}

Matrix pauli_z() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

}  // namespace

// The base parameters supply E_C, E_J, n_g, and phi_x; the splitting that
// E_M models in the direct Hamiltonian emerges here from the dot couplings,
// so base.E_M is ignored.
Matrix build_indirect_hamiltonian(const IndirectMTParams& p,
                                  const ChargeBasis& basis) {
  const int dim_l = basis.dimension();
  const Matrix il = Matrix::Identity(dim_l, dim_l);
  const Matrix i2 = Matrix::Identity(2, 2);
  const double e_c = to_angular(p.base.E_C);
  const double e_j = to_angular(p.base.E_J);
  const double eps = to_angular(p.eps_dot);
  const double t_l = to_angular(p.t_L);
  const double t_r = to_angular(p.t_R);

  const int dim = 4 * dim_l;
  Matrix h = Matrix::Zero(dim, dim);
  const Matrix n_isl = kron3(number_operator(basis), i2, i2);
  for (int i = 0; i < dim; ++i) {
    const double n = std::real(n_isl(i, i)) - p.base.n_g;
    h(i, i) = e_c * n * n;
  }
  h += eps * kron3(il, dot_occupation(), i2);

  const Matrix s2 = kron3(charge_shift(basis, 2), i2, i2);
  h -= (e_j / 2.0) * (s2 + s2.adjoint());

  const Complex phase = std::exp(Complex(0.0, p.base.phi_x / 2.0));
  const Matrix t_left = Complex(0.0, -1.0) * phase *
                        kron3(charge_shift(basis, 1), dot_lowering(),
                              pauli_x());
  h -= (t_l / 2.0) * (t_left + t_left.adjoint());
  const Matrix t_right = kron3(il, dot_lowering(), pauli_y());
  h -= (t_r / 2.0) * (t_right + t_right.adjoint());

  require_hermitian(h, "build_indirect_hamiltonian");
  return h;
}

Matrix indirect_charge_operator(const ChargeBasis& basis) {
  const Matrix il = Matrix::Identity(basis.dimension(), basis.dimension());
  const Matrix i2 = Matrix::Identity(2, 2);
  // The dot sits across the junction, so its occupation moves half an
  // effective charge relative to the island.
  return kron3(number_operator(basis), i2, i2) +
         kron3(il, dot_occupation(), i2) / 2.0;
}

RealVector indirect_parity_diagonal(const ChargeBasis& basis) {
  const Matrix il = Matrix::Identity(basis.dimension(), basis.dimension());
  const Matrix parity = kron3(il, pauli_z(), pauli_z());
  RealVector diag(parity.rows());
  for (Eigen::Index i = 0; i < parity.rows(); ++i) {
    diag(i) = std::real(parity(i, i));
  }
  return diag;
}

IndirectSector indirect_sector(const IndirectMTParams& p,
                               const ChargeBasis& basis, int parity,
                               int k_levels) {
  if (parity != 1 && parity != -1) {
    throw std::invalid_argument("indirect_sector: parity must be +1 or -1");
  }
  const Matrix h = build_indirect_hamiltonian(p, basis);
  const Matrix n_tot = indirect_charge_operator(basis);
  const Matrix i2 = Matrix::Identity(2, 2);
  const Matrix s1 = charge_shift(basis, 1);
  const Matrix w = kron3((s1 + s1.adjoint()) / 2.0, i2, i2);
  const RealVector pdiag = indirect_parity_diagonal(basis);

  std::vector<int> keep;
  for (Eigen::Index i = 0; i < pdiag.size(); ++i) {
    if (pdiag(i) * parity > 0.0) {
      keep.push_back(static_cast<int>(i));
    }
  }
  const int ns = static_cast<int>(keep.size());
  Matrix h_s(ns, ns), n_s(ns, ns), w_s(ns, ns);
  for (int a = 0; a < ns; ++a) {
    for (int b = 0; b < ns; ++b) {
      h_s(a, b) = h(keep[a], keep[b]);
      n_s(a, b) = n_tot(keep[a], keep[b]);
      w_s(a, b) = w(keep[a], keep[b]);
    }
  }

  const Eigensystem eig = hermitian_eig(h_s);
  const int kept = std::min(k_levels, ns);
  if (kept < 2) {
    throw std::invalid_argument("indirect_sector: need at least two levels");
  }
  const Matrix v = eig.vectors.leftCols(kept);
  const Matrix wv = w_s * v;

  IndirectSector out;
  out.levels = spectrum_from_eigensystem(eig, kept);
  out.levels.labels.resize(kept);
  out.cos_half.resize(kept);
  for (int j = 0; j < kept; ++j) {
    const double cos_half = std::real(v.col(j).dot(wv.col(j)));
    out.cos_half[j] = cos_half;
    out.levels.labels[j] =
        (std::abs(cos_half) < 1e-6) ? ((j % 2 == 0) ? 1 : -1)
                                    : (cos_half >= 0.0 ? 1 : -1);
  }
  out.n_elements = v.adjoint() * n_s * v;
  return out;
}

double indirect_omega_mt(const IndirectMTParams& p, const ChargeBasis& basis,
                         int k_levels) {
  const IndirectSector sec = indirect_sector(p, basis, 1, k_levels);
  const LogicalPair pair = mt_logical_pair(sec.levels.labels);
  return sec.levels.frequencies(pair.minus) -
         sec.levels.frequencies(pair.plus);
}

double match_tunneling(const MTParams& direct, double eps_dot,
                       const ChargeBasis& direct_basis,
                       const ChargeBasis& indirect_basis, double t_lo,
                       double t_hi, int iterations, int k_levels) {
  if (!(t_lo > 0.0) || !(t_hi > t_lo)) {
    throw std::invalid_argument(
        "match_tunneling: bracket must satisfy 0 < t_lo < t_hi");
  }
  if (iterations < 1) {
    throw std::invalid_argument("match_tunneling: need at least one iteration");
  }
  const MTEigensystem ms = mt_eigensystem(direct, direct_basis, k_levels);
  const LogicalPair dp = mt_logical_pair(ms.levels.labels);
  const double target =
      ms.levels.frequencies(dp.minus) - ms.levels.frequencies(dp.plus);

  IndirectMTParams q;
  q.base = direct;
  q.eps_dot = eps_dot;
  const auto mismatch = [&](double t) {
    q.t_L = t;
    q.t_R = t;
    return indirect_omega_mt(q, indirect_basis, k_levels) - target;
  };

  double lo = t_lo;
  double hi = t_hi;
  double f_lo = mismatch(lo);
  for (int it = 0; it < iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = mismatch(mid);
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ChiResult chi_mt_indirect(const IndirectMTParams& p, double lambda,
                          double omega_r, const ChargeBasis& basis,
                          int k_levels, double guard) {
  const IndirectSector sec = indirect_sector(p, basis, 1, k_levels);
  LevelCouplings couplings;
  couplings.g = Complex(0.0, 1.0) * lambda * sec.n_elements;
  const DispersiveResult res =
      dispersive_shifts(sec.levels, couplings, omega_r, guard);
  const LogicalPair pair = mt_logical_pair(sec.levels.labels);
  return {qubit_chi(res, pair.minus, pair.plus), res.resonance_margin};
}

}  // namespace qdr
