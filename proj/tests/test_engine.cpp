#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "qdr/basis.hpp"
#include "qdr/eigensystem.hpp"
#include "qdr/engine.hpp"
#include "test_util.hpp"

using namespace qdr;
using qdr_test::rel_err;
using qdr_test::uniform01;

namespace {

LevelSpectrum two_level(double omega_q) {
  LevelSpectrum s;
  s.frequencies = RealVector(2);
  s.frequencies << 0.0, omega_q;
  return s;
}

LevelCouplings offdiag_coupling(double g01) {
  LevelCouplings c;
  c.g = Matrix::Zero(2, 2);
  c.g(0, 1) = g01;
  c.g(1, 0) = -g01;
  return c;
}

Matrix random_antihermitian(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Matrix r(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      r(i, j) = std::complex<double>(2.0 * uniform01(rng) - 1.0,
                                     2.0 * uniform01(rng) - 1.0);
    }
  }
  return 0.5 * (r - r.adjoint()).eval();
}

}  // namespace

TEST_CASE("two-level shift matches the hand-computed value") {
  const DispersiveResult res =
      dispersive_shifts(two_level(5.0), offdiag_coupling(0.12), 7.0);
  // chi_pair(1,0) = 0.0144 / (5 - 7) = -0.0072
  // chi_pair(0,1) = 0.0144 / (-5 - 7) = -0.0012
  CHECK(rel_err(res.chi(1), -0.006) <= 1e-12);
  CHECK(rel_err(res.chi(0), 0.006) <= 1e-12);
  CHECK(rel_err(res.eta(1), -0.0072) <= 1e-12);
  CHECK(rel_err(res.eta(0), -0.0012) <= 1e-12);
  CHECK(rel_err(qubit_chi(res, 1, 0), -0.006) <= 1e-12);
  // Worst pair is (1,0): |delta| / |g| = 2 / 0.12.
  CHECK(rel_err(res.resonance_margin, 2.0 / 0.12) <= 1e-12);
}

TEST_CASE("doubling the coupling scales every shift by exactly four") {
  LevelSpectrum s;
  s.frequencies = RealVector(4);
  s.frequencies << 0.0, 3.1, 7.4, 13.0;
  LevelCouplings c1;
  c1.g = random_antihermitian(4, 99);
  LevelCouplings c2;
  c2.g = (2.0 * c1.g).eval();
  const DispersiveResult r1 = dispersive_shifts(s, c1, 5.5);
  const DispersiveResult r2 = dispersive_shifts(s, c2, 5.5);
  for (int l = 0; l < 4; ++l) {
    CHECK(r2.chi(l) == 4.0 * r1.chi(l));
    CHECK(r2.eta(l) == 4.0 * r1.eta(l));
  }
}

TEST_CASE("coupling matrix is anti-hermitian") {
  std::mt19937_64 rng(2024);
  Matrix h(6, 6), n(6, 6);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      h(i, j) = std::complex<double>(uniform01(rng), uniform01(rng));
      n(i, j) = std::complex<double>(uniform01(rng), uniform01(rng));
    }
  }
  h = 0.5 * (h + h.adjoint()).eval();
  n = 0.5 * (n + n.adjoint()).eval();
  const Eigensystem eig = hermitian_eig(h);
  const LevelCouplings c = coupling_matrix(eig, n, 0.7);
  const double norm = c.g.cwiseAbs().maxCoeff();
  CHECK((c.g + c.g.adjoint()).cwiseAbs().maxCoeff() <= 1e-10 * norm);
}

TEST_CASE("spectrum from eigensystem is referenced to the ground level") {
  Matrix h(3, 3);
  h.setZero();
  h(0, 0) = -4.0;
  h(1, 1) = -1.5;
  h(2, 2) = 2.0;
  const Eigensystem eig = hermitian_eig(h);
  const LevelSpectrum full = spectrum_from_eigensystem(eig);
  CHECK(full.frequencies(0) == 0.0);
  CHECK(full.frequencies(1) == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(full.frequencies(2) == doctest::Approx(6.0).epsilon(1e-14));
  const LevelSpectrum cut = spectrum_from_eigensystem(eig, 2);
  CHECK(cut.frequencies.size() == 2);
}

TEST_CASE("purely diagonal couplings yield exactly zero shift") {
  LevelSpectrum s;
  s.frequencies = RealVector(3);
  s.frequencies << 0.0, 2.0, 5.0;
  LevelCouplings c;
  c.g = Matrix::Zero(3, 3);
  c.g(0, 0) = std::complex<double>(0.0, 0.4);
  c.g(1, 1) = std::complex<double>(0.0, -1.3);
  c.g(2, 2) = std::complex<double>(0.0, 0.9);
  const DispersiveResult res = dispersive_shifts(s, c, 1.7);
  for (int l = 0; l < 3; ++l) {
    CHECK(res.chi(l) == 0.0);
  }
}

TEST_CASE("resonant pair raises with measured fields") {
  const double omega_r = 5.0 - 1e-9;
  bool thrown = false;
  try {
    dispersive_shifts(two_level(5.0), offdiag_coupling(0.12), omega_r);
  } catch (const ResonantPairError& e) {
    thrown = true;
    CHECK(e.level_a == 1);
    CHECK(e.level_b == 0);
    CHECK(rel_err(e.delta, 1e-9) <= 1e-6);
    CHECK(e.g_mag == 0.12);
    CHECK(std::string(e.what()).find("resonant pair") != std::string::npos);
  }
  CHECK(thrown);
}

TEST_CASE("negligible couplings are excluded from the resonance guard") {
  LevelSpectrum s;
  s.frequencies = RealVector(3);
  s.frequencies << 0.0, 3.0, 5.0;
  LevelCouplings c;
  c.g = Matrix::Zero(3, 3);
  c.g(0, 1) = 0.5;
  c.g(1, 0) = -0.5;
  // This pair sits exactly on resonance but carries dust-level weight.
  c.g(0, 2) = 1e-15;
  c.g(2, 0) = -1e-15;
  const DispersiveResult res = dispersive_shifts(s, c, 5.0);
  CHECK(std::isfinite(res.chi(0)));
  CHECK(std::isfinite(res.chi(2)));
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(
      dispersive_shifts(two_level(-1.0), offdiag_coupling(0.1), 3.0),
      std::invalid_argument);

  LevelSpectrum one;
  one.frequencies = RealVector(1);
  one.frequencies << 0.0;
  LevelCouplings c1;
  c1.g = Matrix::Zero(1, 1);
  CHECK_THROWS_AS(dispersive_shifts(one, c1, 3.0), std::invalid_argument);

  LevelSpectrum shifted;
  shifted.frequencies = RealVector(2);
  shifted.frequencies << 0.1, 5.0;
  CHECK_THROWS_AS(dispersive_shifts(shifted, offdiag_coupling(0.1), 3.0),
                  std::invalid_argument);

  CHECK_THROWS_AS(
      dispersive_shifts(two_level(5.0), offdiag_coupling(0.1), 3.0, -1.0),
      std::invalid_argument);

  LevelCouplings wrong;
  wrong.g = Matrix::Zero(3, 3);
  CHECK_THROWS_AS(dispersive_shifts(two_level(5.0), wrong, 3.0),
                  std::invalid_argument);
}

TEST_CASE("exactly degenerate levels can be relabeled consistently") {
  LevelSpectrum s;
  s.frequencies = RealVector(3);
  s.frequencies << 0.0, 5.0, 5.0;
  LevelCouplings a;
  a.g = random_antihermitian(3, 31);

  // Swap the two degenerate levels in the coupling matrix.
  Eigen::PermutationMatrix<3> p;
  p.setIdentity();
  p.applyTranspositionOnTheRight(1, 2);
  LevelCouplings b;
  b.g = (p * a.g * p.transpose()).eval();

  const DispersiveResult ra = dispersive_shifts(s, a, 2.0);
  const DispersiveResult rb = dispersive_shifts(s, b, 2.0);
  CHECK(std::abs(ra.chi(0) - rb.chi(0)) <= 1e-14);
  CHECK(std::abs(ra.chi(1) - rb.chi(2)) <= 1e-14);
  CHECK(std::abs(ra.chi(2) - rb.chi(1)) <= 1e-14);
  CHECK(rel_err(qubit_chi(ra, 1, 0), qubit_chi(rb, 2, 0)) <= 1e-12);
}

TEST_CASE("shift evaluation is deterministic") {
  LevelSpectrum s;
  s.frequencies = RealVector(5);
  s.frequencies << 0.0, 1.3, 2.9, 6.1, 8.4;
  LevelCouplings c;
  c.g = random_antihermitian(5, 555);
  const DispersiveResult r1 = dispersive_shifts(s, c, 4.2);
  const DispersiveResult r2 = dispersive_shifts(s, c, 4.2);
  CHECK((r1.chi.array() == r2.chi.array()).all());
  CHECK((r1.eta.array() == r2.eta.array()).all());
  CHECK(r1.resonance_margin == r2.resonance_margin);
}

TEST_CASE("qubit shift index validation") {
  const DispersiveResult res =
      dispersive_shifts(two_level(5.0), offdiag_coupling(0.12), 7.0);
  CHECK_THROWS_AS(qubit_chi(res, 1, 1), std::domain_error);
  CHECK_THROWS_AS(qubit_chi(res, 5, 0), std::out_of_range);
  CHECK_THROWS_AS(qubit_chi(res, 1, -1), std::out_of_range);
}
