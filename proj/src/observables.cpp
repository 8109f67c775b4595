#include "cohstate/observables.hpp"

#include <cmath>
#include <sstream>

#include "cohstate/errors.hpp"
#include "cohstate/state.hpp"

namespace cohstate {

namespace {

// Energy moments in units of omega: {<e>, <e^2>}.
std::pair<double, double> level_moments(const Spectrum& spec, double J,
                                        const TruncationPolicy& policy) {
  const LevelSeries s = sum_level_series(spec, J, policy, 2);
  return {s.mean(1), s.mean(2)};
}

double variance_from(double J, double m1, double m2) {
  // m2 - J^2 rearranged around the centered second moment to avoid
  // cancellation when v << J^2:
  //   m2 - J^2 = (m2 - 2 J m1 + J^2) + 2 J (m1 - J).
  const double centered = m2 - 2.0 * J * m1 + J * J;
  return centered + 2.0 * J * (m1 - J);
}

}  // namespace

double mean_energy(const Spectrum& spec, double J, const TruncationPolicy& policy) {
  const LevelSeries s = sum_level_series(spec, J, policy, 1);
  return spec.omega() * s.mean(1);
}

double variance_v(const Spectrum& spec, double J, const TruncationPolicy& policy) {
  const auto [m1, m2] = level_moments(spec, J, policy);
  return variance_from(J, m1, m2);
}

double canonical_one_form(const Spectrum& spec, double J, const TruncationPolicy& policy) {
  // d/dgamma c_n = -i e_n c_n, so the one-form is the level-weighted
  // probability sum; certify its tail directly.
  return sum_level_series(spec, J, policy, 1).mean(1);
}

double one_form_finite_difference(const Spectrum& spec, double J, double gamma, double step,
                                  const TruncationPolicy& policy) {
  const CoherentState here = coefficients(spec, J, gamma, policy);
  const CoherentState ahead = coefficients(spec, J, gamma + step, policy);
  const CoherentState behind = coefficients(spec, J, gamma - step, policy);
  const double phase_ahead = std::arg(overlap(here, ahead));
  const double phase_behind = std::arg(overlap(here, behind));
  return -(phase_ahead - phase_behind) / (2.0 * step);
}

ObservableReport observe(const Spectrum& spec, double J, const TruncationPolicy& policy) {
  const auto [m1, m2] = level_moments(spec, J, policy);
  const double w = spec.omega();
  ObservableReport r;
  r.J = J;
  r.mean_H = w * m1;
  r.mean_H2 = w * w * m2;
  r.v = variance_from(J, m1, m2);
  r.action_residual = std::abs(m1 - J);
  r.one_form = canonical_one_form(spec, J, policy);
  r.one_form_residual = std::abs(r.one_form - J);
  r.trajectory_residual = std::abs(w * r.one_form - r.mean_H);
  return r;
}

VarianceBoundReport hydrogen_variance_bound_check(const std::vector<double>& J_grid,
                                                  const TruncationPolicy& policy) {
  const Spectrum spec = Spectrum::hydrogen1d();
  VarianceBoundReport report;
  report.v.reserve(J_grid.size());
  for (double J : J_grid) {
    if (!(J > 0.0 && J < 1.0)) {
      throw Error(Errc::OutOfDomain, "variance bound grid point outside (0, 1)");
    }
    const double v = variance_v(spec, J, policy);
    const double bound = 6.0 * (1.0 - J);
    if (!(v > 0.0 && v < bound)) {
      std::ostringstream os;
      os.precision(17);
      os << "0 < v(J) < 6(1-J) fails at J=" << J << ": v=" << v << ", bound=" << bound;
      throw Error(Errc::BoundViolated, os.str());
    }
    report.v.push_back(v);
    const double ratio = v / bound;
    if (ratio > report.max_ratio) {
      report.max_ratio = ratio;
      report.argmax_J = J;
    }
  }
  return report;
}

}  // namespace cohstate
