#include <doctest.h>

#include <cmath>

#include "cohstate/errors.hpp"
#include "cohstate/observables.hpp"
#include "cohstate/state.hpp"

using namespace cohstate;

namespace {

// v(J) for the hydrogen analog straight from the weights 2(n+1)/(n+2) J^n,
// in long double, independent of the library's series machinery.
long double hydrogen_v_oracle(long double J) {
  long double s0 = 0, s1 = 0, s2 = 0, power = 1;
  for (int n = 0; n < 200000 && power > 1e-30L; ++n) {
    const long double w = 2.0L * (n + 1) / (n + 2) * power;
    const long double e = 1.0L - 1.0L / ((n + 1.0L) * (n + 1.0L));
    s0 += w;
    s1 += w * e;
    s2 += w * e * e;
    power *= J;
  }
  return s2 / s0 - J * J;
}

}  // namespace

TEST_CASE("mean energy") {
  CHECK(mean_energy(Spectrum::harmonic(), 0.0) == 0.0);
  CHECK(mean_energy(Spectrum::hydrogen1d(), 0.0) == 0.0);
  CHECK(std::abs(mean_energy(Spectrum::harmonic(), 2.5) - 2.5) <= 1e-10);
  CHECK(std::abs(mean_energy(Spectrum::hydrogen1d(3.0), 0.7) - 2.1) <= 1e-10);
  try {
    mean_energy(Spectrum::hydrogen1d(), 1.2);
    FAIL("expected OutOfDomain");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::OutOfDomain);
  }
}

TEST_CASE("action identity on grids") {
  for (const Spectrum& s : {Spectrum::harmonic(2.0), Spectrum::hydrogen1d(0.5),
                            Spectrum::formula({LevelFormula::Family::Saturating, 2.0, 3.0})}) {
    const double hi = 0.99 * std::min(s.level_supremum(), 10.0);
    for (int k = 1; k <= 50; ++k) {
      const double J = hi * k / 50.0;
      CHECK(std::abs(mean_energy(s, J) / (s.omega() * J) - 1.0) <= 1e-9);
    }
  }
}

TEST_CASE("variance") {
  CHECK(variance_v(Spectrum::harmonic(), 0.0) == 0.0);
  CHECK(variance_v(Spectrum::hydrogen1d(), 0.0) == 0.0);

  // Poisson: <n^2> - J^2 = J.
  for (double J : {0.2, 1.3, 4.0, 9.5}) {
    CHECK(variance_v(Spectrum::harmonic(), J) == doctest::Approx(J).epsilon(1e-9));
  }

  const double v = variance_v(Spectrum::hydrogen1d(), 0.9);
  CHECK(v > 0.0);
  CHECK(v < 0.6);
  CHECK(v == doctest::Approx(static_cast<double>(hydrogen_v_oracle(0.9L))).epsilon(1e-10));
}

TEST_CASE("variance near J = 0 follows the two-term expansion") {
  // v = e1 J + (e2/e1 - 2) J^2 + O(J^3); hydrogen e1 = 3/4, e2 = 8/9.
  const double J = 1e-3;
  const double expansion = 0.75 * J - 22.0 / 27.0 * J * J;
  const double v = variance_v(Spectrum::hydrogen1d(), J);
  CHECK(v > 0.0);
  CHECK(std::abs(v - expansion) <= 1e-8);
  CHECK(variance_v(Spectrum::hydrogen1d(), 1e-8) > 0.0);
}

TEST_CASE("hydrogen variance bound") {
  const auto r = hydrogen_variance_bound_check({0.1, 0.5, 0.9, 0.99});
  CHECK(r.v.size() == 4);
  CHECK(r.max_ratio < 1.0);
  CHECK(r.v.back() < 0.06);
  CHECK_THROWS_AS(hydrogen_variance_bound_check({0.5, 1.0}), Error);
}

TEST_CASE("canonical one-form") {
  CHECK(canonical_one_form(Spectrum::harmonic(), 0.0) == 0.0);
  CHECK(canonical_one_form(Spectrum::harmonic(), 2.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(canonical_one_form(Spectrum::hydrogen1d(), 0.7) - 0.7) <= 1e-10);
  for (const Spectrum& s : {Spectrum::harmonic(), Spectrum::hydrogen1d()}) {
    for (double J : {0.05, 0.4, 0.85}) {
      const double fd = one_form_finite_difference(s, J, 0.3, 1e-5);
      CHECK(std::abs(fd - canonical_one_form(s, J)) <= 1e-6);
    }
  }
}

TEST_CASE("energy moments are gamma independent") {
  const Spectrum s = Spectrum::hydrogen1d();
  const double J = 0.8;
  auto moments = [&](double gamma) {
    const CoherentState st = coefficients(s, J, gamma);
    double m1 = 0, m2 = 0;
    for (std::size_t n = 0; n < st.coefficients().size(); ++n) {
      const double p = std::norm(st.coefficients()[n]);
      m1 += p * s.level(n);
      m2 += p * s.level(n) * s.level(n);
    }
    return std::pair{m1, m2};
  };
  const auto [a1, a2] = moments(0.0);
  const auto [b1, b2] = moments(17.3);
  CHECK(std::abs(a1 - b1) <= 1e-12);
  CHECK(std::abs(a2 - b2) <= 1e-12);
  CHECK(std::abs(a1 - mean_energy(s, J)) <= 1e-12);
}

TEST_CASE("observable report") {
  const ObservableReport r = observe(Spectrum::hydrogen1d(2.0), 0.6);
  CHECK(r.mean_H == doctest::Approx(1.2).epsilon(1e-12));
  CHECK(r.mean_H2 >= r.mean_H * r.mean_H);
  CHECK(r.v > 0.0);
  CHECK(r.action_residual <= 1e-12);
  CHECK(r.one_form_residual <= 1e-10);
  CHECK(r.trajectory_residual <= 1e-10);
}
