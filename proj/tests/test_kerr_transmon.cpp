#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "qdr/kerr.hpp"
#include "qdr/transmon.hpp"
#include "qdr/units.hpp"
#include "test_util.hpp"

using namespace qdr;
using qdr_test::rel_err;

namespace {

MTParams mt_baseline() {
  MTParams p;
  p.E_C = 0.25;
  p.E_J = 12.5;
  p.n_g = 0.0;
  p.E_M = 0.475;
  p.phi_x = 0.0;
  return p;
}

TransmonParams t_baseline() {
  TransmonParams p;
  p.E_C = 0.25;
  p.E_J = 12.5;
  p.n_g = 0.0;
  return p;
}

}  // namespace

TEST_CASE("weak-anharmonicity closed forms") {
  const KerrApprox k = kerr_approximation(mt_baseline());
  CHECK(rel_err(k.omega_t, 4.75) <= 1e-15);
  CHECK(rel_err(k.xi0, 0.0246875) <= 1e-15);
  CHECK(rel_err(k.xi1, 0.04875) <= 1e-15);
  CHECK(rel_err(k.xi2, 6.25e-4) <= 1e-15);
  CHECK(rel_err(k.g_t_per_lambda, std::sqrt(5.0)) <= 1e-15);
  CHECK(rel_err(k.omega_mt, 0.9265468750) <= 1e-12);
  CHECK(rel_err(k.omega_plus, 4.77315625) <= 1e-12);
  CHECK(rel_err(k.omega_minus, 4.72684375) <= 1e-12);

  MTParams closed = mt_baseline();
  closed.E_M = 0.0;
  const KerrApprox k0 = kerr_approximation(closed);
  CHECK(k0.omega_mt == 0.0);
  CHECK(k0.omega_plus == k0.omega_t);
  CHECK(k0.omega_minus == k0.omega_t);

  MTParams bad = mt_baseline();
  bad.E_C = 0.0;
  CHECK_THROWS_AS(kerr_approximation(bad), std::domain_error);
  bad = mt_baseline();
  bad.E_J = -1.0;
  CHECK_THROWS_AS(kerr_approximation(bad), std::domain_error);
}

TEST_CASE("numeric transmon levels and matrix elements") {
  const TransmonLevels tl = transmon_levels(t_baseline(), 20, 10);
  REQUIRE(tl.spectrum.frequencies.size() == 10);
  const double omega_ge = to_linear(tl.spectrum.frequencies(1));
  const double alpha = to_linear(tl.spectrum.frequencies(2)) - 2.0 * omega_ge;
  CHECK(rel_err(omega_ge, 4.735479731079) <= 1e-9);
  CHECK(rel_err(alpha, -0.2873057573063) <= 1e-9);
  CHECK(rel_err(std::abs(tl.n_elements(0, 1)), 2.175601609862) <= 1e-9);
  // Closed-form frequency sits above the numeric one by the known offset.
  const KerrApprox k = kerr_approximation(mt_baseline());
  CHECK(rel_err(k.omega_t - omega_ge, 0.01452026892077) <= 1e-8);

  CHECK_THROWS_AS(transmon_levels(t_baseline(), 0, 10), std::invalid_argument);
  CHECK_THROWS_AS(transmon_levels(t_baseline(), 20, 1), std::invalid_argument);
}

TEST_CASE("transmon hamiltonian uses the pair-charge lattice") {
  const Matrix h = build_transmon_hamiltonian(t_baseline(), 3);
  REQUIRE(h.rows() == 7);
  // Diagonal: E_C (2k - n_g)^2 in angular units.
  CHECK(rel_err(h(0, 0).real(), to_angular(0.25 * 36.0)) <= 1e-15);
  CHECK(h(3, 3).real() == 0.0);
  // Nearest-neighbor hopping at -E_J/2.
  CHECK(rel_err(h(0, 1).real(), to_angular(-6.25)) <= 1e-15);
  CHECK(std::abs(h(0, 2)) == 0.0);

  const Matrix n = pair_charge_operator(3);
  CHECK(n(0, 0).real() == -6.0);
  CHECK(n(6, 6).real() == 6.0);
  CHECK(n(3, 3).real() == 0.0);
}

TEST_CASE("numeric transmon pull and truncation stability") {
  const double lambda = to_angular(0.1);
  const double omega_r = to_angular(6.98606797749979);
  const double chi10 =
      to_linear(chi_transmon_numeric(t_baseline(), lambda, omega_r, 20, 10).chi);
  const double chi12 =
      to_linear(chi_transmon_numeric(t_baseline(), lambda, omega_r, 20, 12).chi);
  const double chi20 =
      to_linear(chi_transmon_numeric(t_baseline(), lambda, omega_r, 20, 20).chi);
  CHECK(rel_err(chi10, -3.405743016319e-3) <= 1e-8);
  CHECK(rel_err(chi12, -3.405743163735e-3) <= 1e-8);
  CHECK(rel_err(chi20, -3.405743164114e-3) <= 1e-8);
  CHECK(rel_err(chi10, chi20) <= 1e-6);

  // The 5->8 transition of the ten-level truncation sits 55 MHz from the
  // resonator while carrying a sizable charge element. It only shifts
  // levels 5 and 8, so the logical pull above is untouched, but it sets
  // the reported worst-case margin.
  const ChiResult res =
      chi_transmon_numeric(t_baseline(), lambda, omega_r, 20, 10);
  CHECK(res.resonance_margin ==
        doctest::Approx(0.3526361725433).epsilon(1e-6));
  CHECK(std::isfinite(res.resonance_margin));
}

TEST_CASE("closed-form transmon pull changes sign inside the straddling window") {
  const double lambda = to_angular(0.1);
  const KerrApprox k = kerr_approximation(mt_baseline());
  const double inside =
      chi_transmon_analytic(t_baseline(), lambda, to_angular(k.omega_t - 0.1));
  const double below =
      chi_transmon_analytic(t_baseline(), lambda, to_angular(k.omega_t - 1.0));
  const double above =
      chi_transmon_analytic(t_baseline(), lambda, to_angular(k.omega_t + 1.0));
  CHECK((inside < 0.0) != (below < 0.0));
  CHECK((below < 0.0) == (above < 0.0));

  // Numeric pull agrees in sign far below the transition.
  const double numeric =
      to_linear(chi_transmon_numeric(t_baseline(), lambda,
                                     to_angular(k.omega_t + 1.0), 20, 10)
                    .chi);
  CHECK((numeric < 0.0) == (above < 0.0));

  CHECK_THROWS_AS(
      chi_transmon_analytic(t_baseline(), lambda, to_angular(k.omega_t)),
      ResonantPairError);
  CHECK_THROWS_AS(chi_transmon_analytic(t_baseline(), lambda,
                                        to_angular(k.omega_t - 0.25)),
                  ResonantPairError);
}

TEST_CASE("closed-form split-junction pull") {
  const double lambda = to_angular(0.1);
  const KerrApprox k = kerr_approximation(mt_baseline());
  const double g_t = 0.1 * k.g_t_per_lambda;
  const double omega_r = to_angular(k.omega_plus + 10.0 * g_t);
  const double chi = to_linear(chi_mt_analytic(mt_baseline(), lambda, omega_r));
  CHECK(rel_err(chi, -2.268637924940e-4) <= 1e-12);

  CHECK_THROWS_AS(
      chi_mt_analytic(mt_baseline(), lambda, to_angular(k.omega_plus)),
      ResonantPairError);
  CHECK_THROWS_AS(
      chi_mt_analytic(mt_baseline(), lambda, to_angular(k.omega_minus)),
      ResonantPairError);
}
