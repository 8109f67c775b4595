#include "cohstate/state.hpp"

#include <algorithm>
#include <cmath>

#include "cohstate/errors.hpp"

namespace cohstate {

NormalizationSq normalization_sq(const Spectrum& spec, double J, const TruncationPolicy& policy) {
  const LevelSeries s = sum_level_series(spec, J, policy);
  NormalizationSq out;
  out.log_value = s.log_sum(0);
  out.value = std::exp(out.log_value);
  out.tail_bound = s.rel_tail[0] * out.value;
  out.last_index = s.last_index;
  return out;
}

double hydrogen_normalization_closed(double J) {
  if (!(J > 0.0 && J < 1.0)) {
    throw Error(Errc::OutOfDomain, "closed-form hydrogen normalization needs 0 < J < 1, got " +
                                       std::to_string(J));
  }
  if (J < 1e-3) {
    // sum 2(n+1)/(n+2) J^n; converges in a handful of terms this close to 0.
    double sum = 0.0;
    double power = 1.0;
    for (int n = 0; n < 40; ++n) {
      const double term = 2.0 * (n + 1.0) / (n + 2.0) * power;
      sum += term;
      if (term < 1e-18 * sum) break;
      power *= J;
    }
    return sum;
  }
  return 2.0 * (1.0 / (J * (1.0 - J)) + std::log1p(-J) / (J * J));
}

Amplitude unit_phase(double level, double angle) {
  constexpr long double kTwoPi = 6.283185307179586476925286766559005768L;
  const long double reduced =
      std::fmod(static_cast<long double>(level) * static_cast<long double>(angle), kTwoPi);
  return std::polar(1.0, -static_cast<double>(reduced));
}

CoherentState CoherentState::with_coefficients(double gamma, std::vector<Amplitude> coeffs) const {
  return CoherentState(spec_, J_, gamma, policy_, std::move(coeffs), tail_bound_);
}

CoherentState coefficients(const Spectrum& spec, double J, double gamma,
                           const TruncationPolicy& policy) {
  const bool hydrogen = spec.kind() == SpectrumKind::Hydrogen1D;
  const LevelSeries s = sum_level_series(spec, J, policy, 0, true,
                                         hydrogen ? CapPolicy::Partial : CapPolicy::Throw);

  double log_norm = s.log_sum(0);
  double tail = s.rel_tail[0] / (1.0 + s.rel_tail[0]);
  if (!s.certified) {
    // Slow convergence near J* = 1: normalize against the exact M(J)^2 and
    // report what the cap left out.
    log_norm = std::log(hydrogen_normalization_closed(J));
    tail = std::max(0.0, -std::expm1(s.log_sum(0) - log_norm));
  }

  std::vector<Amplitude> c(s.log_terms.size());
  for (std::size_t n = 0; n < c.size(); ++n) {
    const double modulus = std::exp(0.5 * (s.log_terms[n] - log_norm));
    c[n] = modulus * unit_phase(spec.level(n), gamma);
  }
  return CoherentState(spec, J, gamma, policy, std::move(c), tail);
}

Amplitude overlap(const CoherentState& a, const CoherentState& b) {
  if (!(a.spectrum() == b.spectrum())) {
    throw Error(Errc::SpectrumMismatch,
                "overlap of states on " + a.spectrum().name() + " and " + b.spectrum().name());
  }
  const auto ca = a.coefficients();
  const auto cb = b.coefficients();
  const std::size_t n = std::min(ca.size(), cb.size());
  Amplitude sum{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) sum += std::conj(ca[i]) * cb[i];
  return sum;
}

double l2_distance(std::span<const Amplitude> a, std::span<const Amplitude> b) {
  const std::size_t n = std::max(a.size(), b.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Amplitude x = i < a.size() ? a[i] : Amplitude{};
    const Amplitude y = i < b.size() ? b[i] : Amplitude{};
    sum += std::norm(x - y);
  }
  return std::sqrt(sum);
}

ContinuityFit label_continuity(const Spectrum& spec, double J, double gamma,
                               std::span<const double> action_steps,
                               std::span<const double> angle_steps,
                               const TruncationPolicy& policy) {
  const CoherentState base = coefficients(spec, J, gamma, policy);
  ContinuityFit fit;
  for (double dJ : action_steps) {
    for (double dg : angle_steps) {
      const CoherentState moved = coefficients(spec, J + dJ, gamma + dg, policy);
      const double gap = std::abs(1.0 - overlap(base, moved));
      const double c = gap / (std::abs(dJ) + std::abs(dg));
      if (c > fit.constant || !std::isfinite(c)) {
        fit.constant = c;
        fit.worst_action_step = dJ;
        fit.worst_angle_step = dg;
      }
    }
  }
  return fit;
}

}  // namespace cohstate
