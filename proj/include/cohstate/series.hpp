#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "cohstate/spectrum.hpp"

namespace cohstate {

struct TruncationPolicy {
  double rel_tol = 1e-12;
  std::size_t n_cap = 1'000'000;
};

/// Partial sums S_k = sum_{n<=N} e_n^k J^n / rho_n for k = 0..2, each stored
/// as exp(log_scale) * sums[k], with certified relative tail bounds.
struct LevelSeries {
  std::size_t last_index = 0;  // N
  double log_scale = 0.0;
  std::array<double, 3> sums{};
  std::array<double, 3> rel_tail{};
  bool certified = true;       // false only when n_cap was hit with CapPolicy::Partial
  bool table_exhausted = false;
  std::vector<double> log_terms;  // ln(J^n / rho_n), n = 0..N, when requested

  double log_sum(int k) const;
  /// S_k / S_0.
  double mean(int k) const { return sums[k] / sums[0]; }
};

enum class CapPolicy { Throw, Partial };

/// Sums the level-weighted series up to the first N at which every weighted
/// tail (k <= max_power) is certified below policy.rel_tol of its partial sum.
///
/// For m >= N the term ratio of the k-weighted series is bounded by
/// rho_k = (J / e_{N+1}) * R^k with R = sup_{m>=N} e_{m+1}/e_m, so the tail is
/// at most term_k(N) * rho_k / (1 - rho_k). Table spectra stop at their last
/// level with zero tail. Throws OutOfDomain for J < 0 or J >= J*, and
/// CapExceeded when certification needs more than policy.n_cap terms unless
/// `cap` is Partial.
LevelSeries sum_level_series(const Spectrum& spec, double J, const TruncationPolicy& policy,
                             int max_power = 0, bool keep_terms = false,
                             CapPolicy cap = CapPolicy::Throw);

/// Validates the action label against the spectrum's domain.
void require_action_in_domain(const Spectrum& spec, double J);

}  // namespace cohstate
