#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace cohstate {

enum class SpectrumKind { Harmonic, Hydrogen1D, CustomTable, CustomFormula };

/// Declarative level families accepted for CustomFormula spectra.
///   PowerLaw:   e_n = scale * (1 - (n+1)^-shape)      limit: scale
///   Saturating: e_n = scale * n / (n + shape)         limit: scale
///   Affine:     e_n = scale * n                       unbounded
struct LevelFormula {
  enum class Family { PowerLaw, Saturating, Affine };

  Family family = Family::PowerLaw;
  double scale = 1.0;
  double shape = 1.0;

  bool operator==(const LevelFormula&) const = default;
};

/// Estimate of lim e_n. `value` is +inf for unbounded spectra.
struct LimitEstimate {
  double value = 0.0;
  double uncertainty = 0.0;
};

/// Nondegenerate level sequence 0 = e_0 < e_1 < ... with frequency omega
/// (hbar = 1, so E_n = omega * e_n). Immutable once built.
class Spectrum {
 public:
  static Spectrum harmonic(double omega = 1.0);
  static Spectrum hydrogen1d(double omega = 1.0);
  /// Finite table of levels; not validated here, see validate().
  static Spectrum table(std::vector<double> levels, double omega = 1.0);
  static Spectrum formula(LevelFormula formula, double omega = 1.0);

  SpectrumKind kind() const noexcept { return kind_; }
  double omega() const noexcept { return omega_; }
  const std::vector<double>& levels() const noexcept { return levels_; }
  const std::optional<LevelFormula>& level_formula() const noexcept { return formula_; }

  /// Number of levels available; SIZE_MAX for infinite spectra.
  std::size_t size() const noexcept;
  bool is_finite() const noexcept { return kind_ == SpectrumKind::CustomTable; }

  /// e_n. Throws IndexBeyondTable past the end of a table.
  double level(std::size_t n) const;

  /// ln e_n for n >= 1, evaluated without forming e_n where the family allows
  /// (log1p of the deficit for bounded families).
  double log_level(std::size_t n) const;

  /// e* - e_n for bounded analytic families. Strictly decreasing in n even
  /// where e_n itself rounds to equal doubles near the limit.
  std::optional<double> deficit(std::size_t n) const;

  /// Exact supremum of the level sequence for analytic families (+inf when
  /// unbounded); for tables the largest entry.
  double level_supremum() const;

  /// Upper bound on e_{m+1}/e_m over all m >= n (n >= 1). Used for tail
  /// certificates of energy-weighted series.
  double level_ratio_bound(std::size_t n) const;

  /// Short identifier, e.g. "harmonic" or "custom_formula(power_law,2,1)".
  std::string name() const;

  bool operator==(const Spectrum&) const = default;

 private:
  Spectrum(SpectrumKind kind, double omega) : kind_(kind), omega_(omega) {}

  SpectrumKind kind_;
  double omega_;
  std::vector<double> levels_;
  std::optional<LevelFormula> formula_;
};

struct ValidationResult {
  bool valid = true;
  std::optional<std::size_t> first_violation;
  std::string message;
};

inline constexpr std::size_t kDefaultValidationDepth = 10'000;

/// Checks e_0 = 0, omega > 0 and strict increase up to n_max (clamped to the
/// table length). Violations are reported, never thrown.
ValidationResult validate(const Spectrum& spec, std::size_t n_max);

/// Throws InvalidSpectrum when validate() fails.
void require_valid(const Spectrum& spec, std::size_t n_max = kDefaultValidationDepth);

/// lim e_n. Exact for the built-ins; for formulas it is extrapolated from the
/// sampled tail, with the spread of the last extrapolants as uncertainty.
/// Throws LimitUnavailable for tables.
LimitEstimate limit_level(const Spectrum& spec);

}  // namespace cohstate
