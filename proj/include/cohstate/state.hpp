#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "cohstate/series.hpp"
#include "cohstate/spectrum.hpp"

namespace cohstate {

using Amplitude = std::complex<double>;

struct NormalizationSq {
  double value = 1.0;       // partial sum S_N
  double log_value = 0.0;   // ln S_N, finite even when S_N overflows
  double tail_bound = 0.0;  // certified bound on M(J)^2 - S_N
  std::size_t last_index = 0;
};

/// M(J)^2 = sum_n J^n / rho_n with a certified remainder.
NormalizationSq normalization_sq(const Spectrum& spec, double J,
                                 const TruncationPolicy& policy = {});

/// Closed form of M(J)^2 for the hydrogen-analog spectrum,
///   2 ([J(1-J)]^-1 + J^-2 ln(1-J)),
/// switching to the power series below J = 1e-3 where the two terms cancel.
/// Throws OutOfDomain outside (0, 1).
double hydrogen_normalization_closed(double J);

/// e^{-i level * angle} with the product reduced mod 2 pi in extended
/// precision, so large angles do not lose the phase.
Amplitude unit_phase(double level, double angle);

/// Normalized coherent state |J, gamma> truncated at N.
class CoherentState {
 public:
  const Spectrum& spectrum() const noexcept { return spec_; }
  double action() const noexcept { return J_; }
  double angle() const noexcept { return gamma_; }
  const TruncationPolicy& policy() const noexcept { return policy_; }
  std::span<const Amplitude> coefficients() const noexcept { return coeffs_; }
  std::size_t last_index() const noexcept { return coeffs_.size() - 1; }
  /// Bound on the probability carried by levels beyond N.
  double tail_bound() const noexcept { return tail_bound_; }

  /// Same labels and truncation, new coefficient vector.
  CoherentState with_coefficients(double gamma, std::vector<Amplitude> coeffs) const;

 private:
  friend CoherentState coefficients(const Spectrum&, double, double, const TruncationPolicy&);

  CoherentState(Spectrum spec, double J, double gamma, TruncationPolicy policy,
                std::vector<Amplitude> coeffs, double tail)
      : spec_(std::move(spec)),
        J_(J),
        gamma_(gamma),
        policy_(policy),
        coeffs_(std::move(coeffs)),
        tail_bound_(tail) {}

  Spectrum spec_;
  double J_;
  double gamma_;
  TruncationPolicy policy_;
  std::vector<Amplitude> coeffs_;
  double tail_bound_;
};

/// c_n = M(J)^-1 J^{n/2} e^{-i e_n gamma} / sqrt(rho_n), n = 0..N.
///
/// Moduli are formed as exp((n/2) ln J - (1/2) ln rho_n - ln M). For the
/// hydrogen-analog spectrum, when n_cap is reached before certification the
/// closed-form M(J)^2 is used and the missing probability is reported as the
/// tail bound.
CoherentState coefficients(const Spectrum& spec, double J, double gamma,
                           const TruncationPolicy& policy = {});

/// sum conj(a_n) b_n, zero-padding the shorter vector; the padding error is at
/// most sqrt(a.tail_bound()) + sqrt(b.tail_bound()). Throws
/// SpectrumMismatch when the states belong to different spectra.
Amplitude overlap(const CoherentState& a, const CoherentState& b);

/// sqrt(sum |a_n - b_n|^2), zero-padded.
double l2_distance(std::span<const Amplitude> a, std::span<const Amplitude> b);

struct ContinuityFit {
  double constant = 0.0;   // max |1 - <a|b>| / (|dJ| + |dgamma|)
  double worst_action_step = 0.0;
  double worst_angle_step = 0.0;
};

/// Fits C in |1 - <J,gamma | J+dJ, gamma+dgamma>| <= C (|dJ| + |dgamma|) over
/// every combination of the given steps.
ContinuityFit label_continuity(const Spectrum& spec, double J, double gamma,
                               std::span<const double> action_steps,
                               std::span<const double> angle_steps,
                               const TruncationPolicy& policy = {});

}  // namespace cohstate
