#pragma once

#include <vector>

#include "cohstate/series.hpp"
#include "cohstate/spectrum.hpp"

namespace cohstate {

/// <J,gamma|H|J,gamma> = omega sum e_n J^n/rho_n / M(J)^2, summed directly so
/// that the action identity <H> = omega J is an output, not an input.
double mean_energy(const Spectrum& spec, double J, const TruncationPolicy& policy = {});

/// v(J) = <H^2>/omega^2 - J^2.
double variance_v(const Spectrum& spec, double J, const TruncationPolicy& policy = {});

/// i <J,gamma| d/dgamma |J,gamma> = sum e_n |c_n|^2, independent of gamma.
double canonical_one_form(const Spectrum& spec, double J, const TruncationPolicy& policy = {});

/// -d/dgamma arg <J,gamma|J,gamma'> at gamma' = gamma by central differences.
double one_form_finite_difference(const Spectrum& spec, double J, double gamma, double step,
                                  const TruncationPolicy& policy = {});

struct ObservableReport {
  double J = 0.0;
  double mean_H = 0.0;
  double mean_H2 = 0.0;
  double v = 0.0;
  double action_residual = 0.0;    // |<H>/omega - J|
  double one_form = 0.0;
  double one_form_residual = 0.0;  // |i<d_gamma> - J|
  /// Quantum action integrand along |J, gamma + omega t> minus the classical
  /// one, (omega * one_form - <H>) - (omega J - omega J).
  double trajectory_residual = 0.0;
};

ObservableReport observe(const Spectrum& spec, double J, const TruncationPolicy& policy = {});

struct VarianceBoundReport {
  double max_ratio = 0.0;   // max v / (6 (1 - J))
  double argmax_J = 0.0;
  std::vector<double> v;    // per grid point
};

/// Checks 0 < v(J) < 6 (1 - J) for the hydrogen-analog spectrum at every grid
/// point. Throws OutOfDomain for J outside (0, 1) and BoundViolated with the
/// offending J otherwise.
VarianceBoundReport hydrogen_variance_bound_check(const std::vector<double>& J_grid,
                                                  const TruncationPolicy& policy = {});

}  // namespace cohstate
