#pragma once

#include <utility>
#include <vector>

#include "cohstate/state.hpp"

namespace cohstate {

/// Strictly increasing sample times (units of 1/omega-compatible time).
class TimeGrid {
 public:
  /// Throws std::invalid_argument unless strictly increasing.
  explicit TimeGrid(std::vector<double> t_values);
  /// steps + 1 equally spaced points on [0, t_max].
  static TimeGrid uniform(double t_max, std::size_t steps);

  const std::vector<double>& values() const noexcept { return t_; }

 private:
  std::vector<double> t_;
};

/// |J, gamma + omega t>, rebuilt from the labels with the state's policy.
CoherentState evolve_label(const CoherentState& s, double t);

/// c_n -> c_n e^{-i e_n omega t}, applied to the stored coefficients.
CoherentState evolve_direct(const CoherentState& s, double t);

struct AutocorrelationSample {
  double t = 0.0;
  double probability = 1.0;
};

/// P(t) = |sum_n |c_n|^2 e^{-i e_n omega t}|^2, the return probability of
/// |J, gamma>. Independent of gamma, so gamma is not a parameter.
std::vector<AutocorrelationSample> autocorrelation(const Spectrum& spec, double J,
                                                   const TimeGrid& grid,
                                                   const TruncationPolicy& policy = {});

}  // namespace cohstate
