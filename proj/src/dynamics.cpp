#include "cohstate/dynamics.hpp"

#include <stdexcept>

namespace cohstate {

TimeGrid::TimeGrid(std::vector<double> t_values) : t_(std::move(t_values)) {
  for (std::size_t i = 1; i < t_.size(); ++i) {
    if (!(t_[i] > t_[i - 1])) throw std::invalid_argument("time grid must be strictly increasing");
  }
}

TimeGrid TimeGrid::uniform(double t_max, std::size_t steps) {
  if (steps == 0 || !(t_max > 0.0)) {
    throw std::invalid_argument("uniform time grid needs t_max > 0 and steps >= 1");
  }
  std::vector<double> t(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    t[k] = t_max * static_cast<double>(k) / static_cast<double>(steps);
  }
  return TimeGrid(std::move(t));
}

CoherentState evolve_label(const CoherentState& s, double t) {
  return coefficients(s.spectrum(), s.action(), s.angle() + s.spectrum().omega() * t, s.policy());
}

CoherentState evolve_direct(const CoherentState& s, double t) {
  const Spectrum& spec = s.spectrum();
  const double wt = spec.omega() * t;
  const auto c = s.coefficients();
  std::vector<Amplitude> out(c.size());
  for (std::size_t n = 0; n < c.size(); ++n) out[n] = c[n] * unit_phase(spec.level(n), wt);
  return s.with_coefficients(s.angle() + wt, std::move(out));
}

std::vector<AutocorrelationSample> autocorrelation(const Spectrum& spec, double J,
                                                   const TimeGrid& grid,
                                                   const TruncationPolicy& policy) {
  const CoherentState s = coefficients(spec, J, 0.0, policy);
  const auto c = s.coefficients();
  std::vector<double> weight(c.size());
  std::vector<double> level(c.size());
  for (std::size_t n = 0; n < c.size(); ++n) {
    weight[n] = std::norm(c[n]);
    level[n] = spec.level(n);
  }

  std::vector<AutocorrelationSample> out;
  out.reserve(grid.values().size());
  for (double t : grid.values()) {
    const double wt = spec.omega() * t;
    Amplitude sum{0.0, 0.0};
    for (std::size_t n = 0; n < c.size(); ++n) sum += weight[n] * unit_phase(level[n], wt);
    out.push_back({t, std::norm(sum)});
  }
  return out;
}

}  // namespace cohstate
