#pragma once

#include <cstddef>
#include <vector>

#include "cohstate/spectrum.hpp"

namespace cohstate {

/// rho_n = e_1 e_2 ... e_n held as a compensated running sum of ln e_k.
/// Each entry is hi + lo with |lo| << ulp(hi); rho(n) folds both back in.
class MomentSequence {
 public:
  /// Throws IndexBeyondTable when n_max exceeds a table spectrum.
  static MomentSequence build(const Spectrum& spec, std::size_t n_max);

  const Spectrum& spectrum() const noexcept { return spec_; }
  std::size_t n_max() const noexcept { return log_hi_.size() - 1; }

  /// ln rho_n. Throws IndexBeyondComputed.
  double log_rho(std::size_t n) const;

  /// rho_n = exp(ln rho_n); rho_0 = 1 exactly. Throws IndexBeyondComputed.
  double rho(std::size_t n) const;

 private:
  MomentSequence(Spectrum spec) : spec_(std::move(spec)) {}

  Spectrum spec_;
  std::vector<double> log_hi_;
  std::vector<double> log_lo_;
};

/// Incremental generator of ln rho_n; shared by MomentSequence and the series
/// evaluators so both produce bit-identical values.
class LogMomentAccumulator {
 public:
  explicit LogMomentAccumulator(const Spectrum& spec) : spec_(&spec) {}

  std::size_t index() const noexcept { return n_; }
  double hi() const noexcept { return hi_; }
  double lo() const noexcept { return lo_; }
  double value() const noexcept { return hi_ + lo_; }

  /// Moves from n to n + 1.
  void advance();

 private:
  const Spectrum* spec_;
  std::size_t n_ = 0;
  double hi_ = 0.0;
  double lo_ = 0.0;
};

/// (n + 2) / (2 (n + 1)): the telescoped product for e_k = 1 - 1/(k+1)^2.
double hydrogen_rho_closed(std::size_t n);

/// J*: the radius of convergence of sum J^n / rho_n. The term ratio is
/// J / e_{n+1}, so this is the limit level of the spectrum.
LimitEstimate radius_of_convergence(const Spectrum& spec);

struct QuadraturePolicy {
  double abs_tol = 1e-14;
  double rel_tol = 1e-12;
  unsigned max_depth = 20;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

/// A point mass of the moment measure.
struct Atom {
  double location = 0.0;
  double weight = 0.0;
};

/// Nonnegative density on [0, J*] plus point atoms.
class Measure {
 public:
  enum class Density { ExpNegJ, ConstHalfOnUnit, Tabulated };

  /// e^{-J} on [0, inf).
  static Measure exp_neg_j();
  /// 1/2 on [0, 1] plus an atom of weight 1/2 at J = 1.
  static Measure hydrogen();
  /// Piecewise-linear density through (J_i, f_i) nodes, zero past the last
  /// node, plus optional atoms. Throws std::invalid_argument on negative
  /// values, non-positive atom weights or unsorted nodes.
  static Measure tabulated(std::vector<double> nodes, std::vector<double> values,
                           std::vector<Atom> atoms = {});

  Density density() const noexcept { return density_; }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double support_upper() const noexcept { return support_upper_; }

 private:
  Measure(Density d, double upper) : density_(d), support_upper_(upper) {}

  Density density_;
  std::vector<Atom> atoms_;
  std::vector<double> nodes_;
  std::vector<double> values_;
  double support_upper_;
};

/// The measure whose moments are rho_n for the built-in spectra. Throws
/// NoClosedFormMeasure for custom spectra.
Measure canonical_measure(const Spectrum& spec);

/// e^{-log_scale} * int J^power dmu, for real power >= 0. Scaling keeps
/// high moments representable (n! overflows past n = 170). Throws
/// QuadratureNotConverged when the error estimate exceeds the policy.
QuadratureResult scaled_moment(const Measure& mu, double power, double log_scale,
                               const QuadraturePolicy& quad = {});

/// int J^n dmu.
double moment_of_measure(const Measure& mu, std::size_t n, const QuadraturePolicy& quad = {});

}  // namespace cohstate
