#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "cohstate/errors.hpp"
#include "cohstate/unity.hpp"

using namespace cohstate;

TEST_CASE("diagonal moment identity") {
  const Spectrum h = Spectrum::harmonic();
  const DiagonalReport d = verify_diagonal(h, canonical_measure(h), 50);
  CHECK(d.errors.size() == 51);
  CHECK(d.max_error <= 1e-10);
  CHECK(d.errors[0] <= 1e-14);

  const Spectrum y = Spectrum::hydrogen1d();
  const DiagonalReport dy = verify_diagonal(y, canonical_measure(y), 200);
  CHECK(dy.max_error <= 1e-12);
  CHECK(dy.errors[0] == 0.0);
}

TEST_CASE("diagonal identity fails for a wrong measure") {
  // The uniform half-density without its atom misses half of every moment.
  const Spectrum y = Spectrum::hydrogen1d();
  const Measure no_atom = Measure::tabulated({0.0, 1.0}, {0.5, 0.5});
  const DiagonalReport d = verify_diagonal(y, no_atom, 10);
  CHECK(d.max_error > 0.4);
}

TEST_CASE("Bohr average: prefactor and sinc form") {
  const Spectrum y = Spectrum::hydrogen1d();
  const double J = 0.5;
  const CoherentState st = coefficients(y, J, 0.0);
  for (double G : {10.0, 100.0, 1000.0}) {
    const BohrTerm t = bohr_offdiagonal(y, 0, 1, J, G);
    CHECK(t.prefactor == doctest::Approx(std::abs(st.coefficients()[0] * st.coefficients()[1])).epsilon(1e-12));
    CHECK(std::abs(t.average - Amplitude{t.sinc_form, 0.0}) <= 1e-8);
    CHECK(std::abs(t.average) <= t.prefactor / (0.75 * G) * (1 + 1e-12));
    CHECK(t.level_gap == -0.75);
  }
}

TEST_CASE("Bohr average vanishes at a sinc zero") {
  const Spectrum y = Spectrum::hydrogen1d();
  const double gap = y.level(2) - y.level(0);
  const BohrTerm t = bohr_offdiagonal(y, 2, 0, 0.3, std::numbers::pi / gap);
  CHECK(std::abs(t.sinc_form) <= 1e-16 * t.prefactor * 10);
  CHECK(std::abs(t.average) <= 1e-13 * t.prefactor);
}

TEST_CASE("harmonic off-diagonals cancel over one period") {
  const Spectrum h = Spectrum::harmonic();
  for (std::size_t n = 0; n < 6; ++n) {
    for (std::size_t m = n + 1; m < 8; ++m) {
      const BohrTerm t = bohr_offdiagonal(h, n, m, 1.5, std::numbers::pi);
      CHECK(std::abs(t.average) <= 1e-14);
    }
  }
}

TEST_CASE("off-diagonal decay is 1/Gamma") {
  const std::array<double, 3> windows{1e2, 1e3, 1e4};
  const DecayFit a = offdiagonal_decay(Spectrum::hydrogen1d(), 0, 1, 0.5, windows);
  CHECK(std::abs(a.slope + 1.0) <= 0.05);
  CHECK(a.magnitudes[1] < a.magnitudes[0]);
  const DecayFit b = offdiagonal_decay(Spectrum::harmonic(), 1, 3, 1.0, windows);
  CHECK(std::abs(b.slope + 1.0) <= 0.05);
}

TEST_CASE("degenerate and invalid pairs") {
  const Spectrum tie = Spectrum::table({0.0, 1.0, 1.0});
  try {
    bohr_offdiagonal(tie, 1, 2, 0.5, 10.0);
    FAIL("expected DegeneratePair");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DegeneratePair);
  }
  CHECK_THROWS_AS(bohr_offdiagonal(Spectrum::harmonic(), 1, 1, 0.5, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(bohr_offdiagonal(Spectrum::harmonic(), 0, 1, 0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(bohr_offdiagonal(Spectrum::hydrogen1d(), 0, 1, 1.0, 10.0), Error);
}

TEST_CASE("resolution check") {
  const Spectrum h = Spectrum::harmonic();
  const Measure mu = canonical_measure(h);
  const UnityReport r = resolution_check(h, mu, 20, 1e4);
  CHECK(r.pass());
  CHECK(r.envelope_constant > 0.0);
  CHECK(r.envelope_constant <= 1.0 + 1e-12);  // K_nm <= 1 and |dE| >= 1
  CHECK(r.offdiag_max.magnitude <= 1e-3 * r.envelope_constant);

  const UnityReport r2 = resolution_check(h, mu, 20, 37.0);
  CHECK(r2.diag_errors == r.diag_errors);
  CHECK(r2.fitted_constant <= r2.envelope_constant * (1 + 1e-12));

  const Spectrum y = Spectrum::hydrogen1d();
  const UnityReport ry = resolution_check(y, canonical_measure(y), 60, 1e4);
  CHECK(ry.diagonal_pass);
  CHECK(ry.offdiagonal_pass);
}
