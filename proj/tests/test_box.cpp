#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "qdr/basis.hpp"
#include "qdr/box.hpp"
#include "qdr/eigensystem.hpp"
#include "qdr/engine.hpp"
#include "qdr/units.hpp"
#include "test_util.hpp"

using namespace qdr;
using qdr_test::rel_err;
using qdr_test::uniform01;

namespace {

MBParams figure_params() {
  MBParams p;
  p.E_tot = 2.5;
  p.eps_dot = 2.5;
  p.n_g = 0.0;
  p.t_L = 1.0;
  p.t_R = 1.0;
  p.phi_x = std::numbers::pi / 2.0;
  return p;
}

MBParams symmetric_point(double t, double phi_x) {
  MBParams p = figure_params();
  p.t_L = t;
  p.t_R = t;
  p.phi_x = phi_x;
  return p;
}

// Resonator placed ten couplings above the upper transition of block 0.
double detuned_omega_r(const MBParams& p, double lambda) {
  const BlockSolution sol = block_solution(p, 0);
  const BoxCouplings cpl = box_couplings(p, 0, lambda);
  return to_angular(sol.f_plus + 10.0 * to_linear(std::abs(cpl.g_plus)));
}

}  // namespace

TEST_CASE("block solution matches pinned values at the operating point") {
  const BlockSolution sol = block_solution(figure_params(), 0);
  CHECK(sol.n == 0);
  CHECK(sol.delta_n == 5.0);
  CHECK(rel_err(sol.f_plus, 5.330498434703) < 1e-12);
  CHECK(rel_err(sol.f_minus, 5.058239460289) < 1e-12);
  CHECK(rel_err(sol.eps_c, 5.194368947496) < 1e-12);
  CHECK(rel_err(sol.eps_m, 0.1361294872070) < 1e-12);
  CHECK(rel_err(sol.E_n, -0.1652492173516) < 1e-12);

  const auto lv = sol.levels();
  CHECK(lv[0] == sol.E_n);
  CHECK(rel_err(lv[1] - lv[0], sol.eps_m) < 1e-12);
  CHECK(rel_err(lv[3] - lv[0], sol.f_plus) < 1e-12);
  CHECK(rel_err(lv[2] - lv[1], sol.f_minus) < 1e-12);
  CHECK(rel_err(lv[2] - lv[0], sol.eps_c) < 1e-12);
}

TEST_CASE("dot detuning equals the expanded charging difference") {
  std::mt19937_64 rng(314);
  for (int trial = 0; trial < 50; ++trial) {
    MBParams p;
    p.E_tot = 1.0 + 3.0 * uniform01(rng);
    p.eps_dot = 0.5 + 3.5 * uniform01(rng);
    p.n_g = 2.0 * uniform01(rng) - 1.0;
    p.t_L = 0.1 + 2.9 * uniform01(rng);
    p.t_R = 0.1 + 2.9 * uniform01(rng);
    p.phi_x = 2.0 * std::numbers::pi * uniform01(rng);
    const int n = static_cast<int>(uniform01(rng) * 5.0) - 2;

    const BlockSolution sol = block_solution(p, n);
    const double expanded =
        p.E_tot * (1.0 - 2.0 * (n - p.n_g)) + p.eps_dot;
    CHECK(std::abs(sol.delta_n - expanded) <
          1e-12 * (std::abs(sol.delta_n) + 1.0));
  }
}

TEST_CASE("closed-form block invariants hold on random draws") {
  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 50; ++trial) {
    MBParams p;
    p.E_tot = 1.0 + 3.0 * uniform01(rng);
    p.eps_dot = 0.5 + 3.5 * uniform01(rng);
    p.n_g = 2.0 * uniform01(rng) - 1.0;
    p.t_L = 0.1 + 2.9 * uniform01(rng);
    p.t_R = 0.1 + 2.9 * uniform01(rng);
    p.phi_x = 2.0 * std::numbers::pi * uniform01(rng);
    const int n = static_cast<int>(uniform01(rng) * 5.0) - 2;

    const BlockSolution sol = block_solution(p, n);
    const double tt = p.t_L * p.t_L + p.t_R * p.t_R;
    const double cross =
        2.0 * p.t_L * p.t_R * std::cos(p.phi_x / 2.0);

    CHECK(sol.f_plus >= std::abs(sol.delta_n));
    CHECK(sol.f_minus >= std::abs(sol.delta_n));
    const double scale = sol.delta_n * sol.delta_n + tt;
    CHECK(std::abs(sol.eps_c * sol.eps_c + sol.eps_m * sol.eps_m -
                   scale) < 1e-12 * scale);
    CHECK(std::abs(sol.eps_c * sol.eps_m - cross / 2.0) < 1e-12 * scale);
    if (cross > 0.0) {
      CHECK(sol.f_plus >= sol.f_minus);
    } else if (cross < 0.0) {
      CHECK(sol.f_minus >= sol.f_plus);
    }

    const auto lv = sol.levels();
    CHECK(lv[0] <= lv[1]);
    CHECK(lv[1] <= lv[2]);
    CHECK(lv[2] <= lv[3]);

    const Eigensystem eig = hermitian_eig(block_hamiltonian(p, n));
    for (int l = 0; l < 4; ++l) {
      CHECK(std::abs(to_linear(eig.values(l)) - lv[l]) < 1e-10);
    }
  }
}

TEST_CASE("mixing angles follow the hybridization geometry") {
  const BlockSolution sol = block_solution(figure_params(), 0);
  const std::complex<double> phase =
      std::exp(std::complex<double>(0.0, std::numbers::pi / 4.0));
  const double w_plus = std::abs(1.0 * phase + 1.0);
  const double w_minus = std::abs(1.0 * phase - 1.0);
  CHECK(rel_err(std::tan(2.0 * sol.alpha_plus_mag),
                w_plus / (2.0 * sol.delta_n)) < 1e-12);
  CHECK(rel_err(std::tan(2.0 * sol.alpha_minus_mag),
                w_minus / (2.0 * sol.delta_n)) < 1e-12);
  CHECK(sol.alpha_plus_mag > sol.alpha_minus_mag);
  CHECK(sol.alpha_plus_mag < std::numbers::pi / 4.0);

  MBParams degenerate;
  degenerate.E_tot = 2.5;
  degenerate.eps_dot = 2.5;
  degenerate.n_g = 0.0;
  degenerate.t_L = 1.3;
  degenerate.t_R = 0.7;
  degenerate.phi_x = 1.1;
  const BlockSolution deg = block_solution(degenerate, 1);
  CHECK(deg.delta_n == 0.0);
  CHECK(rel_err(deg.alpha_plus_mag, std::numbers::pi / 4.0) < 1e-15);
  CHECK(rel_err(deg.alpha_minus_mag, std::numbers::pi / 4.0) < 1e-15);
}

TEST_CASE("parity splitting vanishes without tunneling") {
  MBParams p = figure_params();
  p.t_L = 0.0;
  p.t_R = 0.0;
  const BlockSolution sol = block_solution(p, 0);
  CHECK(sol.eps_m == 0.0);
  CHECK(sol.f_plus == sol.f_minus);
}

TEST_CASE("weak tunneling reduces to the perturbative splitting") {
  MBParams p = symmetric_point(0.1, std::numbers::pi / 2.0);
  const BlockSolution sol = block_solution(p, 0);
  const double estimate =
      p.t_L * p.t_R * std::cos(p.phi_x / 2.0) / sol.delta_n;
  CHECK(rel_err(sol.eps_m, estimate) < 1e-2);
}

TEST_CASE("block Hamiltonian carries the cross-coupling structure") {
  const MBParams p = figure_params();
  const Matrix h = block_hamiltonian(p, 0);
  CHECK(h.rows() == 4);
  CHECK(std::abs(h(0, 1)) == 0.0);
  CHECK(std::abs(h(0, 2)) == 0.0);
  CHECK(std::abs(h(1, 3)) == 0.0);
  CHECK(std::abs(h(2, 3)) == 0.0);
  CHECK(std::abs(h(0, 0)) == 0.0);
  CHECK(rel_err(h(2, 2).real(), to_angular(5.0)) < 1e-15);
  CHECK(h(2, 2) == h(3, 3));

  const std::complex<double> phase =
      std::exp(std::complex<double>(0.0, p.phi_x / 2.0));
  const std::complex<double> h03 = std::complex<double>(0.0, 1.0) *
                                   (to_angular(1.0) * phase -
                                    to_angular(1.0)) /
                                   2.0;
  const std::complex<double> h12 = std::complex<double>(0.0, 1.0) *
                                   (to_angular(1.0) * phase +
                                    to_angular(1.0)) /
                                   2.0;
  CHECK(std::abs(h(0, 3) - h03) < 1e-15 * std::abs(h12));
  CHECK(std::abs(h(1, 2) - h12) < 1e-15 * std::abs(h12));
}

TEST_CASE("resonator couplings match pinned values at the operating point") {
  const BoxCouplings cpl = box_couplings(figure_params(), 0, to_angular(0.1));
  CHECK(rel_err(to_linear(cpl.g_c), -9.632424031317e-2) < 1e-12);
  CHECK(rel_err(to_linear(cpl.g_m), 2.524381608618e-3) < 1e-12);
  CHECK(rel_err(to_linear(std::abs(cpl.g_plus)), 1.733195392192e-2) <
        1e-12);
  CHECK(rel_err(to_linear(std::abs(cpl.g_minus)), 7.565545984318e-3) <
        1e-12);
}

TEST_CASE("degenerate block decouples the diagonal and saturates the rest") {
  MBParams p;
  p.E_tot = 2.5;
  p.eps_dot = 2.5;
  p.n_g = 0.0;
  p.t_L = 1.3;
  p.t_R = 0.7;
  p.phi_x = 1.1;
  const BoxCouplings cpl = box_couplings(p, 1, to_angular(0.1));
  CHECK(cpl.g_c == 0.0);
  CHECK(cpl.g_m == 0.0);
  CHECK(std::abs(to_linear(std::abs(cpl.g_plus)) - 0.05) < 1e-15);
  CHECK(rel_err(to_linear(std::abs(cpl.g_minus)),
                4.999999999999999e-2) < 1e-13);
}

TEST_CASE("closed-form pull matches pinned spot values") {
  const double lambda = to_angular(0.1);

  SUBCASE("zero flux") {
    const double ratios[3] = {0.5, 0.2, 0.05};
    const double pins[3] = {-1.767766952966e-3, -9.284766908853e-4,
                            -2.487592975525e-4};
    for (int i = 0; i < 3; ++i) {
      const MBParams p = symmetric_point(5.0 * ratios[i], 0.0);
      const double w_r = detuned_omega_r(p, lambda);
      const double chi = chi_mb_analytic(p, lambda, w_r, 0);
      CHECK(rel_err(to_linear(chi), pins[i]) < 1e-12);
    }
  }

  SUBCASE("quarter flux") {
    const MBParams p = symmetric_point(1.0, std::numbers::pi / 2.0);
    const double w_r = detuned_omega_r(p, lambda);
    const double chi = chi_mb_analytic(p, lambda, w_r, 0);
    CHECK(rel_err(to_linear(chi), -8.023694127636e-4) < 1e-12);
  }
}

TEST_CASE("diagonalized pull matches pinned spot values") {
  const double lambda = to_angular(0.1);

  SUBCASE("zero flux") {
    const double ratios[3] = {0.5, 0.2, 0.05};
    const double pins[3] = {-1.724650685821e-3, -9.127397978194e-4,
                            -2.475338822936e-4};
    for (int i = 0; i < 3; ++i) {
      const MBParams p = symmetric_point(5.0 * ratios[i], 0.0);
      const double w_r = detuned_omega_r(p, lambda);
      const ChiResult res = chi_mb_numeric(p, lambda, w_r, 0);
      CHECK(rel_err(to_linear(res.chi), pins[i]) < 1e-8);
      CHECK(res.resonance_margin > 1.0);
      CHECK(std::isfinite(res.resonance_margin));
    }
  }

  SUBCASE("quarter flux") {
    const MBParams p = symmetric_point(1.0, std::numbers::pi / 2.0);
    const double w_r = detuned_omega_r(p, lambda);
    const ChiResult res = chi_mb_numeric(p, lambda, w_r, 0);
    CHECK(rel_err(to_linear(res.chi), -7.912157914148e-4) < 1e-8);
  }
}

TEST_CASE("pull vanishes identically without tunneling") {
  MBParams p = figure_params();
  p.t_L = 0.0;
  p.t_R = 0.0;
  const double lambda = to_angular(0.1);
  const double w_r = to_angular(6.0);
  CHECK(chi_mb_analytic(p, lambda, w_r, 0) == 0.0);
  CHECK(chi_mb_numeric(p, lambda, w_r, 0).chi == 0.0);
}

TEST_CASE("half flux closes the parity gap and nulls the pull") {
  const MBParams p = symmetric_point(1.0, std::numbers::pi);
  const BlockSolution sol = block_solution(p, 0);
  CHECK(std::abs(sol.f_plus - sol.f_minus) < 1e-15 * sol.f_plus);
  CHECK(std::abs(sol.eps_m) < 1e-15);

  const double lambda = to_angular(0.1);
  const double w_r = detuned_omega_r(p, lambda);
  CHECK(std::abs(to_linear(chi_mb_analytic(p, lambda, w_r, 0))) < 1e-12);
  CHECK(std::abs(to_linear(chi_mb_numeric(p, lambda, w_r, 0).chi)) <
        1e-8);
}

TEST_CASE("pull scales exactly with the square of the coupling") {
  const MBParams p = figure_params();
  const double lambda = to_angular(0.1);
  const double w_r = detuned_omega_r(p, lambda);
  const double chi_1a = chi_mb_analytic(p, lambda, w_r, 0);
  const double chi_2a = chi_mb_analytic(p, 2.0 * lambda, w_r, 0);
  CHECK(chi_2a == 4.0 * chi_1a);

  const double chi_1n = chi_mb_numeric(p, lambda, w_r, 0).chi;
  const double chi_2n = chi_mb_numeric(p, 2.0 * lambda, w_r, 0).chi;
  CHECK(chi_2n == 4.0 * chi_1n);
}

TEST_CASE("pull is even in the sign of the coupling") {
  const MBParams p = figure_params();
  const double lambda = to_angular(0.1);
  const double w_r = detuned_omega_r(p, lambda);
  CHECK(chi_mb_numeric(p, lambda, w_r, 0).chi ==
        chi_mb_numeric(p, -lambda, w_r, 0).chi);
  CHECK(chi_mb_analytic(p, lambda, w_r, 0) ==
        chi_mb_analytic(p, -lambda, w_r, 0));
}

TEST_CASE("resonant transitions are reported with their level pair") {
  const MBParams p = figure_params();
  const BlockSolution sol = block_solution(p, 0);
  const double lambda = to_angular(0.1);

  try {
    chi_mb_analytic(p, lambda, to_angular(sol.f_plus), 0);
    CHECK(false);
  } catch (const ResonantPairError& e) {
    CHECK(e.level_a == 3);
    CHECK(e.level_b == 0);
    CHECK(std::abs(e.delta) < 1e-9);
  }

  try {
    chi_mb_analytic(p, lambda, to_angular(sol.f_minus), 0);
    CHECK(false);
  } catch (const ResonantPairError& e) {
    CHECK(e.level_a == 2);
    CHECK(e.level_b == 1);
  }

  CHECK_THROWS_AS(chi_mb_numeric(p, lambda, to_angular(sol.f_plus), 0),
                  ResonantPairError);
}

TEST_CASE("eigenvectors sort into parity sectors at the operating point") {
  const Eigensystem eig = hermitian_eig(block_hamiltonian(figure_params(), 0));
  const auto weight = [&](int level) {
    return std::norm(eig.vectors(0, level)) +
           std::norm(eig.vectors(3, level));
  };
  CHECK(weight(0) < 0.5);
  CHECK(weight(1) > 0.5);
}

TEST_CASE("operating block follows the gate charge") {
  MBParams p = figure_params();
  CHECK(operating_block(p) == 0);
  p.n_g = 0.7;
  CHECK(operating_block(p) == 1);
  CHECK_THROWS_AS(operating_block(p, -1), std::invalid_argument);
}

TEST_CASE("window spectrum is grounded per gate point") {
  const MBParams p = figure_params();
  const std::vector<double> grid = {0.0, 0.3};
  const auto rows = mb_spectrum_vs_ng(p, grid, 2);
  REQUIRE(rows.size() == 2u * 5u * 4u);

  for (std::size_t start = 0; start < rows.size(); start += 20) {
    double min_freq = rows[start].freq_GHz;
    for (std::size_t i = start; i < start + 20; ++i) {
      CHECK(rows[i].sector >= -2);
      CHECK(rows[i].sector <= 2);
      CHECK(rows[i].level >= 0);
      CHECK(rows[i].level < 4);
      CHECK(rows[i].freq_GHz >= 0.0);
      min_freq = std::min(min_freq, rows[i].freq_GHz);
    }
    CHECK(min_freq == 0.0);
  }

  const BlockSolution sol = block_solution(p, 0);
  const auto lv = sol.levels();
  bool found = false;
  for (std::size_t i = 0; i < 20; ++i) {
    if (rows[i].sector == 0 && rows[i].level == 1) {
      CHECK(rel_err(rows[i].freq_GHz - rows[i - 1].freq_GHz,
                    lv[1] - lv[0]) < 1e-12);
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("static longitudinal coupling is half the parity-resolved one") {
  const MBParams p = figure_params();
  const double lambda = to_angular(0.1);
  const BoxCouplings cpl = box_couplings(p, 0, lambda);
  CHECK(gz_static(p, lambda, 0) == cpl.g_m / 2.0);
}
