#include "qdr/transmon.hpp"

#include <stdexcept>

#include "qdr/units.hpp"

namespace qdr {

Matrix build_transmon_hamiltonian(const TransmonParams& p, int ncp) {
  const ChargeBasis pairs(ncp);
  const int dim = pairs.dimension();
  const double e_c = to_angular(p.E_C);
  const double e_j = to_angular(p.E_J);

  Matrix h = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const double n_el = 2.0 * pairs.charge(i) - p.n_g;
    h(i, i) = e_c * n_el * n_el;
  }
  const Matrix hop = charge_shift(pairs, 1);
  h -= (e_j / 2.0) * (hop + hop.adjoint());
  require_hermitian(h, "build_transmon_hamiltonian");
  return h;
}

Matrix pair_charge_operator(int ncp) {
  const ChargeBasis pairs(ncp);
  const int dim = pairs.dimension();
  Matrix n = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    n(i, i) = 2.0 * pairs.charge(i);
  }
  return n;
}

TransmonLevels transmon_levels(const TransmonParams& p, int ncp,
                               int n_levels) {
  if (n_levels < 2) {
    throw std::invalid_argument("transmon_levels: need at least two levels");
  }
  const Matrix h = build_transmon_hamiltonian(p, ncp);
  const Eigensystem eig = hermitian_eig(h);
  const Matrix n_op = pair_charge_operator(ncp);
  const int keep = std::min<int>(n_levels, static_cast<int>(h.rows()));

  TransmonLevels out;
  out.spectrum = spectrum_from_eigensystem(eig, keep);
  const Matrix v = eig.vectors.leftCols(keep);
  out.n_elements = v.adjoint() * n_op * v;
  return out;
}

ChiResult chi_transmon_numeric(const TransmonParams& p, double lambda,
                               double omega_r, int ncp, int n_levels,
                               double guard) {
  const Matrix h = build_transmon_hamiltonian(p, ncp);
  const Eigensystem eig = hermitian_eig(h);
  const Matrix n_op = pair_charge_operator(ncp);
  const int keep = std::min<int>(n_levels, static_cast<int>(h.rows()));

  const LevelSpectrum spectrum = spectrum_from_eigensystem(eig, keep);
  const LevelCouplings couplings = coupling_matrix(eig, n_op, lambda, keep);
  const DispersiveResult res =
      dispersive_shifts(spectrum, couplings, omega_r, guard);
  return {qubit_chi(res, 1, 0), res.resonance_margin};
}

}  // namespace qdr
