#include "cohstate/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cohstate/errors.hpp"

namespace cohstate {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double formula_level(const LevelFormula& f, double n) {
  switch (f.family) {
    case LevelFormula::Family::PowerLaw:
      return f.scale * -std::expm1(-f.shape * std::log1p(n));
    case LevelFormula::Family::Saturating:
      return f.scale * n / (n + f.shape);
    case LevelFormula::Family::Affine:
      return f.scale * n;
  }
  return 0.0;
}

const char* family_name(LevelFormula::Family family) {
  switch (family) {
    case LevelFormula::Family::PowerLaw: return "power_law";
    case LevelFormula::Family::Saturating: return "saturating";
    case LevelFormula::Family::Affine: return "affine";
  }
  return "?";
}

}  // namespace

Spectrum Spectrum::harmonic(double omega) { return Spectrum(SpectrumKind::Harmonic, omega); }

Spectrum Spectrum::hydrogen1d(double omega) { return Spectrum(SpectrumKind::Hydrogen1D, omega); }

Spectrum Spectrum::table(std::vector<double> levels, double omega) {
  Spectrum s(SpectrumKind::CustomTable, omega);
  s.levels_ = std::move(levels);
  return s;
}

Spectrum Spectrum::formula(LevelFormula formula, double omega) {
  Spectrum s(SpectrumKind::CustomFormula, omega);
  s.formula_ = formula;
  return s;
}

std::size_t Spectrum::size() const noexcept {
  return kind_ == SpectrumKind::CustomTable ? levels_.size()
                                            : std::numeric_limits<std::size_t>::max();
}

double Spectrum::level(std::size_t n) const {
  switch (kind_) {
    case SpectrumKind::Harmonic:
      return static_cast<double>(n);
    case SpectrumKind::Hydrogen1D: {
      // n(n+2)/(n+1)^2: numerator and denominator are exact integers in
      // double up to n ~ 9e7, so the result is correctly rounded.
      const double m = static_cast<double>(n) + 1.0;
      return (m - 1.0) * (m + 1.0) / (m * m);
    }
    case SpectrumKind::CustomTable:
      if (n >= levels_.size()) {
        throw Error(Errc::IndexBeyondTable, "level index " + std::to_string(n) +
                                                " beyond table of " +
                                                std::to_string(levels_.size()));
      }
      return levels_[n];
    case SpectrumKind::CustomFormula:
      return formula_level(*formula_, static_cast<double>(n));
  }
  return 0.0;
}

double Spectrum::log_level(std::size_t n) const {
  const double x = static_cast<double>(n);
  switch (kind_) {
    case SpectrumKind::Harmonic:
      return std::log(x);
    case SpectrumKind::Hydrogen1D:
      return std::log1p(-1.0 / ((x + 1.0) * (x + 1.0)));
    case SpectrumKind::CustomTable:
      return std::log(level(n));
    case SpectrumKind::CustomFormula: {
      const auto& f = *formula_;
      switch (f.family) {
        case LevelFormula::Family::PowerLaw:
          return std::log(f.scale) + std::log(-std::expm1(-f.shape * std::log1p(x)));
        case LevelFormula::Family::Saturating:
          return std::log(f.scale) + std::log1p(-f.shape / (x + f.shape));
        case LevelFormula::Family::Affine:
          return std::log(f.scale) + std::log(x);
      }
    }
  }
  return 0.0;
}

std::optional<double> Spectrum::deficit(std::size_t n) const {
  const double x = static_cast<double>(n);
  if (kind_ == SpectrumKind::Hydrogen1D) return 1.0 / ((x + 1.0) * (x + 1.0));
  if (kind_ == SpectrumKind::CustomFormula) {
    const auto& f = *formula_;
    if (f.family == LevelFormula::Family::PowerLaw) {
      return f.scale * std::exp(-f.shape * std::log1p(x));
    }
    if (f.family == LevelFormula::Family::Saturating) return f.scale * f.shape / (x + f.shape);
  }
  return std::nullopt;
}

double Spectrum::level_supremum() const {
  switch (kind_) {
    case SpectrumKind::Harmonic: return kInf;
    case SpectrumKind::Hydrogen1D: return 1.0;
    case SpectrumKind::CustomTable: return levels_.empty() ? 0.0 : levels_.back();
    case SpectrumKind::CustomFormula:
      return formula_->family == LevelFormula::Family::Affine ? kInf : formula_->scale;
  }
  return kInf;
}

double Spectrum::level_ratio_bound(std::size_t n) const {
  if (n == 0) return kInf;
  const double sup = level_supremum();
  if (std::isfinite(sup)) return sup / level(n);
  // Unbounded families are linear in n.
  return (static_cast<double>(n) + 1.0) / static_cast<double>(n);
}

std::string Spectrum::name() const {
  switch (kind_) {
    case SpectrumKind::Harmonic: return "harmonic";
    case SpectrumKind::Hydrogen1D: return "hydrogen1d";
    case SpectrumKind::CustomTable:
      return "custom_table(" + std::to_string(levels_.size()) + " levels)";
    case SpectrumKind::CustomFormula: {
      std::ostringstream os;
      os.precision(15);
      os << "custom_formula(" << family_name(formula_->family) << "," << formula_->scale << ","
         << formula_->shape << ")";
      return os.str();
    }
  }
  return "?";
}

ValidationResult validate(const Spectrum& spec, std::size_t n_max) {
  ValidationResult out;
  auto fail = [&](std::optional<std::size_t> at, std::string msg) {
    out.valid = false;
    out.first_violation = at;
    out.message = std::move(msg);
    return out;
  };

  if (!(spec.omega() > 0.0) || !std::isfinite(spec.omega())) {
    return fail(std::nullopt, "omega must be positive and finite");
  }
  if (const auto& f = spec.level_formula()) {
    if (!(f->scale > 0.0) || !std::isfinite(f->scale)) return fail(std::nullopt, "formula scale must be positive");
    if (f->family != LevelFormula::Family::Affine && !(f->shape > 0.0)) {
      return fail(std::nullopt, "formula shape must be positive");
    }
  }
  if (spec.is_finite()) {
    if (spec.levels().size() < 2) return fail(std::nullopt, "table needs at least two levels");
    n_max = std::min(n_max, spec.levels().size() - 1);
  }
  if (spec.level(0) != 0.0) return fail(std::size_t{0}, "e_0 must be exactly 0");

  for (std::size_t n = 0; n < n_max; ++n) {
    bool increasing;
    const auto d0 = spec.deficit(n);
    if (d0) {
      increasing = *spec.deficit(n + 1) < *d0;
    } else {
      const double a = spec.level(n);
      const double b = spec.level(n + 1);
      increasing = std::isfinite(b) && b > a;
    }
    if (!increasing) {
      return fail(n + 1, "levels not strictly increasing at n=" + std::to_string(n + 1));
    }
  }
  return out;
}

void require_valid(const Spectrum& spec, std::size_t n_max) {
  const auto r = validate(spec, n_max);
  if (!r.valid) throw Error(Errc::InvalidSpectrum, spec.name() + ": " + r.message);
}

LimitEstimate limit_level(const Spectrum& spec) {
  switch (spec.kind()) {
    case SpectrumKind::Harmonic: return {kInf, 0.0};
    case SpectrumKind::Hydrogen1D: return {1.0, 0.0};
    case SpectrumKind::CustomTable:
      throw Error(Errc::LimitUnavailable, "a finite table has no limit level");
    case SpectrumKind::CustomFormula: break;
  }

  // Sample on n = 2^k and apply Aitken's delta-squared to consecutive
  // triples; algebraic tails become geometric on this grid.
  constexpr double eps = std::numeric_limits<double>::epsilon();
  std::vector<double> s;
  for (int k = 2; k <= 52; ++k) s.push_back(spec.level(std::size_t{1} << k));

  std::vector<double> aitken;
  double prev_ratio = 0.0;
  for (std::size_t i = 0; i + 2 < s.size(); ++i) {
    const double d0 = s[i + 1] - s[i];
    const double d1 = s[i + 2] - s[i + 1];
    if (d1 <= 64.0 * eps * std::abs(s[i + 2])) break;
    const double ratio = d1 / d0;
    prev_ratio = ratio;
    if (ratio >= 1.0) return {kInf, 0.0};
    aitken.push_back(s[i + 2] - d1 * d1 / (d1 - d0));
  }
  if (aitken.empty()) {
    // Converged before any usable triple: the sampled tail is flat.
    return {s.back(), 64.0 * eps * std::abs(s.back())};
  }
  if (prev_ratio >= 1.0 - 1e-9) return {kInf, 0.0};

  const double value = aitken.back();
  double spread = 64.0 * eps * std::abs(value);
  if (aitken.size() >= 2) spread = std::max(spread, std::abs(value - aitken[aitken.size() - 2]));
  return {value, spread};
}

}  // namespace cohstate
