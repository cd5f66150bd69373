#include "qdr/box.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "qdr/eigensystem.hpp"
#include "qdr/units.hpp"

namespace qdr {

namespace {

using Complex = std::complex<double>;

}  // namespace

std::array<double, 4> BlockSolution::levels() const {
  std::array<double, 4> out{E_n, E_n + eps_m, E_n + eps_c,
                            E_n + eps_c + eps_m};
  std::sort(out.begin(), out.end());
  return out;
}

BlockSolution block_solution(const MBParams& p, int n) {
  BlockSolution sol;
  sol.n = n;
  const double e0 = p.E_tot * (n - p.n_g) * (n - p.n_g);
  const double e1 =
      p.E_tot * (n - 1 - p.n_g) * (n - 1 - p.n_g) + p.eps_dot;
  sol.delta_n = e1 - e0;

  const double cos_half = std::cos(p.phi_x / 2.0);
  const double tt = p.t_L * p.t_L + p.t_R * p.t_R;
  const double cross = 2.0 * p.t_L * p.t_R * cos_half;
  sol.f_plus = std::sqrt(sol.delta_n * sol.delta_n + tt + cross);
  sol.f_minus = std::sqrt(sol.delta_n * sol.delta_n + tt - cross);

  const double sg = sol.delta_n >= 0.0 ? 1.0 : -1.0;
  sol.eps_c = sg * (sol.f_plus + sol.f_minus) / 2.0;
  sol.eps_m = sg * (sol.f_plus - sol.f_minus) / 2.0;
  sol.E_n = e0 + (sol.delta_n - sol.eps_c - sol.eps_m) / 2.0;

  const Complex phase = std::exp(Complex(0.0, p.phi_x / 2.0));
  sol.alpha_plus_mag =
      0.5 * std::atan2(std::abs(p.t_L * phase + p.t_R), 2.0 * sol.delta_n);
  sol.alpha_minus_mag =
      0.5 * std::atan2(std::abs(p.t_L * phase - p.t_R), 2.0 * sol.delta_n);
  return sol;
}

Matrix block_hamiltonian(const MBParams& p, int n) {
  const double e0 =
      to_angular(p.E_tot * (n - p.n_g) * (n - p.n_g));
  const double e1 =
      to_angular(p.E_tot * (n - 1 - p.n_g) * (n - 1 - p.n_g) + p.eps_dot);
  const double t_l = to_angular(p.t_L);
  const double t_r = to_angular(p.t_R);
  const Complex phase = std::exp(Complex(0.0, p.phi_x / 2.0));

  // Basis order (n_d, m) = (0,0), (0,1), (1,0), (1,1).
  Matrix h = Matrix::Zero(4, 4);
  h(0, 0) = e0;
  h(1, 1) = e0;
  h(2, 2) = e1;
  h(3, 3) = e1;
  h(0, 3) = Complex(0.0, 1.0) * (t_l * phase - t_r) / 2.0;
  h(1, 2) = Complex(0.0, 1.0) * (t_l * phase + t_r) / 2.0;
  h(3, 0) = std::conj(h(0, 3));
  h(2, 1) = std::conj(h(1, 2));
  require_hermitian(h, "block_hamiltonian");
  return h;
}

BoxCouplings box_couplings(const MBParams& p, int n, double lambda) {
  const BlockSolution sol = block_solution(p, n);
  const double lam = to_linear(lambda);
  const Complex phase = std::exp(Complex(0.0, p.phi_x / 2.0));

  const double g_c =
      -lam / 2.0 * (sol.delta_n / sol.f_plus + sol.delta_n / sol.f_minus);
  const double g_m =
      -lam / 2.0 * (sol.delta_n / sol.f_plus - sol.delta_n / sol.f_minus);
  const Complex g_plus = -lam / 2.0 * Complex(0.0, 1.0) *
                         (p.t_L * phase + p.t_R) / sol.f_plus;
  const Complex g_minus = -lam / 2.0 * Complex(0.0, 1.0) *
                          (p.t_L * phase - p.t_R) / sol.f_minus;

  BoxCouplings out;
  out.g_c = to_angular(g_c);
  out.g_m = to_angular(g_m);
  out.g_plus = two_pi * g_plus;
  out.g_minus = two_pi * g_minus;
  return out;
}

double chi_mb_analytic(const MBParams& p, double lambda, double omega_r,
                       int n, double guard) {
  const BlockSolution sol = block_solution(p, n);
  const double lam = to_linear(lambda);
  const double w_r = to_linear(omega_r);
  const Complex phase = std::exp(Complex(0.0, p.phi_x / 2.0));
  const Complex g_plus = -lam / 2.0 * Complex(0.0, 1.0) *
                         (p.t_L * phase + p.t_R) / sol.f_plus;
  const Complex g_minus = -lam / 2.0 * Complex(0.0, 1.0) *
                          (p.t_L * phase - p.t_R) / sol.f_minus;

  const double d_plus = sol.f_plus - w_r;
  const double d_minus = sol.f_minus - w_r;
  if (std::abs(d_plus) < guard * std::abs(g_plus)) {
    throw ResonantPairError(3, 0, d_plus, std::abs(g_plus));
  }
  if (std::abs(d_minus) < guard * std::abs(g_minus)) {
    throw ResonantPairError(2, 1, d_minus, std::abs(g_minus));
  }
  const double gp2 = std::abs(g_plus) * std::abs(g_plus);
  const double gm2 = std::abs(g_minus) * std::abs(g_minus);
  return to_angular(0.5 * (gp2 / d_plus - gm2 / d_minus));
}

ChiResult chi_mb_numeric(const MBParams& p, double lambda, double omega_r,
                         int n, double guard) {
  const Matrix h = block_hamiltonian(p, n);
  const Eigensystem eig = hermitian_eig(h);

  // Island charge seen by the resonator: n on the dot-empty states, n-1 on
  // the dot-occupied ones.
  Matrix n_op = Matrix::Zero(4, 4);
  n_op(0, 0) = n;
  n_op(1, 1) = n;
  n_op(2, 2) = n - 1.0;
  n_op(3, 3) = n - 1.0;

  const LevelSpectrum spectrum = spectrum_from_eigensystem(eig);
  const LevelCouplings couplings = coupling_matrix(eig, n_op, lambda);
  const DispersiveResult res =
      dispersive_shifts(spectrum, couplings, omega_r, guard);
  return {qubit_chi(res, 1, 0), res.resonance_margin};
}

int operating_block(const MBParams& p, int n_window) {
  if (n_window < 0) {
    throw std::invalid_argument("operating_block: n_window must be >= 0");
  }
  int best_n = -n_window;
  double best = std::numeric_limits<double>::infinity();
  for (int n = -n_window; n <= n_window; ++n) {
    const Eigensystem eig = hermitian_eig(block_hamiltonian(p, n));
    if (eig.values(0) < best) {
      best = eig.values(0);
      best_n = n;
    }
  }
  return best_n;
}

std::vector<SpectrumRow> mb_spectrum_vs_ng(const MBParams& p,
                                           const std::vector<double>& ng_grid,
                                           int n_window) {
  std::vector<SpectrumRow> rows;
  for (const double ng : ng_grid) {
    MBParams q = p;
    q.n_g = ng;
    double global_min = std::numeric_limits<double>::infinity();
    std::vector<std::array<double, 4>> block_levels;
    for (int n = -n_window; n <= n_window; ++n) {
      block_levels.push_back(block_solution(q, n).levels());
      global_min = std::min(global_min, block_levels.back()[0]);
    }
    for (int n = -n_window; n <= n_window; ++n) {
      const auto& lv = block_levels[n + n_window];
      for (int l = 0; l < 4; ++l) {
        rows.push_back({ng, n, l, lv[l] - global_min});
      }
    }
  }
  return rows;
}

double gz_static(const MBParams& p, double lambda, int n) {
  return box_couplings(p, n, lambda).g_m / 2.0;
}

}  // namespace qdr
