#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cohstate/dynamics.hpp"

using namespace cohstate;

TEST_CASE("identity evolution") {
  const CoherentState s = coefficients(Spectrum::hydrogen1d(), 0.6, 0.9);
  CHECK(l2_distance(evolve_label(s, 0.0).coefficients(), s.coefficients()) == 0.0);
  CHECK(l2_distance(evolve_direct(s, 0.0).coefficients(), s.coefficients()) == 0.0);
}

TEST_CASE("harmonic revival after one period") {
  const Spectrum h = Spectrum::harmonic(1.7);
  const CoherentState s = coefficients(h, 2.0, 0.3);
  const double period = 2.0 * std::numbers::pi / h.omega();
  CHECK(l2_distance(evolve_label(s, period).coefficients(), s.coefficients()) <= 1e-12);
  CHECK(l2_distance(evolve_direct(s, period).coefficients(), s.coefficients()) <= 1e-12);
}

TEST_CASE("hydrogen does not revive after 2 pi / omega") {
  const Spectrum y = Spectrum::hydrogen1d();
  const CoherentState s = coefficients(y, 0.5, 0.0);
  const double t = 2.0 * std::numbers::pi;
  // Oracle: c_1 alone picks up e^{-i 0.75 * 2 pi} = -i, so the l2 distance is
  // at least |c_1| * |1 + i|.
  const double floor = std::abs(s.coefficients()[1]) * std::sqrt(2.0);
  CHECK(l2_distance(evolve_label(s, t).coefficients(), s.coefficients()) >= floor);
}

TEST_CASE("temporal stability: direct phases equal the shifted label") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const bool harmonic = trial % 2 == 0;
    const Spectrum s = harmonic ? Spectrum::harmonic(0.5 + unit(rng)) : Spectrum::hydrogen1d(0.5 + unit(rng));
    const double J = unit(rng) * (harmonic ? 9.0 : 0.95);
    const double gamma = 10.0 * (unit(rng) - 0.5);
    const double t = 100.0 * unit(rng);
    const CoherentState st = coefficients(s, J, gamma);
    const CoherentState direct = evolve_direct(st, t);
    const CoherentState label = evolve_label(st, t);
    CHECK(l2_distance(direct.coefficients(), label.coefficients()) <= 1e-12);
    CHECK(direct.coefficients()[0] == st.coefficients()[0]);
    CHECK(direct.action() == J);
    CHECK(direct.last_index() == st.last_index());
    double n0 = 0.0, n1 = 0.0;
    for (auto c : st.coefficients()) n0 += std::norm(c);
    for (auto c : direct.coefficients()) n1 += std::norm(c);
    CHECK(n1 == doctest::Approx(n0).epsilon(1e-15));
  }
}

TEST_CASE("group property") {
  for (const Spectrum& s : {Spectrum::harmonic(), Spectrum::hydrogen1d(2.0)}) {
    const CoherentState st = coefficients(s, 0.45, 0.1);
    for (auto [t1, t2] : {std::pair{0.3, 1.9}, {4.0, 11.5}, {25.0, 0.125}}) {
      const double d = l2_distance(evolve_label(evolve_label(st, t1), t2).coefficients(),
                                   evolve_label(st, t1 + t2).coefficients());
      CHECK(d <= 1e-12);
    }
  }
}

TEST_CASE("time grids") {
  CHECK_THROWS_AS(TimeGrid({0.0, 1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(TimeGrid::uniform(0.0, 10), std::invalid_argument);
  const TimeGrid g = TimeGrid::uniform(2.0, 4);
  REQUIRE(g.values().size() == 5);
  CHECK(g.values().back() == 2.0);
}

TEST_CASE("autocorrelation") {
  const Spectrum h = Spectrum::harmonic();
  const double J = 1.8;
  const auto p = autocorrelation(h, J, TimeGrid::uniform(12.0, 240));
  CHECK(p.front().probability == doctest::Approx(1.0).epsilon(1e-14));
  for (const auto& s : p) {
    // Poisson characteristic function: |exp(J (e^{-it} - 1))|^2.
    const double expected = std::exp(-2.0 * J * (1.0 - std::cos(s.t)));
    CHECK(std::abs(s.probability - expected) <= 1e-10);
    CHECK(s.probability <= 1.0 + 1e-14);
  }
}

TEST_CASE("hydrogen autocorrelation stays high near J = 1") {
  const auto p = autocorrelation(Spectrum::hydrogen1d(), 0.99, TimeGrid::uniform(10.0, 1000));
  double lowest = 1.0;
  for (const auto& s : p) lowest = std::min(lowest, s.probability);
  CHECK(lowest > 0.9);
}

TEST_CASE("autocorrelation is gamma independent") {
  const Spectrum y = Spectrum::hydrogen1d(1.3);
  const double J = 0.7;
  const TimeGrid grid({0.0, 0.4, 3.3, 17.0});
  const auto p = autocorrelation(y, J, grid);
  for (double gamma : {0.0, 2.1, -40.0}) {
    const CoherentState s = coefficients(y, J, gamma);
    for (std::size_t i = 0; i < grid.values().size(); ++i) {
      const double direct = std::norm(overlap(s, evolve_label(s, grid.values()[i])));
      CHECK(std::abs(direct - p[i].probability) <= 1e-12);
    }
  }
}
