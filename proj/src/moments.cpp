#include "cohstate/moments.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "cohstate/errors.hpp"

namespace cohstate {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;

void require_computed(const MomentSequence& seq, std::size_t n) {
  if (n > seq.n_max()) {
    throw Error(Errc::IndexBeyondComputed, "moment index " + std::to_string(n) +
                                               " beyond computed n_max " +
                                               std::to_string(seq.n_max()));
  }
}

// J^power * e^{-log_scale}, with 0^0 = 1.
double scaled_power(double J, double power, double log_scale) {
  if (J == 0.0) return power == 0.0 ? std::exp(-log_scale) : 0.0;
  return std::exp(power * std::log(J) - log_scale);
}

// Panels far below the total would otherwise be refined to full relative
// precision for no gain, so each panel may stop once its error falls under
// abs_target.
template <class F>
void integrate_panel(F&& f, double a, double b, const QuadraturePolicy& quad,
                     QuadratureResult& acc, double abs_target = 0.0) {
  double tol = quad.rel_tol;
  if (abs_target > 0.0) {
    double l1 = 0.0;
    Kronrod::integrate(f, a, b, 0, 0.0, nullptr, &l1);
    if (l1 > 0.0) tol = std::max(tol, std::min(1.0, abs_target / l1));
  }
  double err = 0.0;
  acc.value += Kronrod::integrate(f, a, b, quad.max_depth, tol, &err);
  acc.error += err;
}

// Panel [0, b] for a fractional power: J = x^2 turns J^p into x^{2p+1}, which
// removes the endpoint singularity for half-integer p.
template <class F>
void integrate_origin_panel(F&& f, double power, double b, const QuadraturePolicy& quad,
                            QuadratureResult& acc, double abs_target = 0.0) {
  if (power == std::floor(power)) {
    integrate_panel(f, 0.0, b, quad, acc, abs_target);
    return;
  }
  auto g = [&](double x) { return 2.0 * x * f(x * x); };
  integrate_panel(g, 0.0, std::sqrt(b), quad, acc, abs_target);
}

QuadratureResult exp_neg_j_moment(double power, double log_scale, const QuadraturePolicy& quad) {
  auto f = [&](double J) {
    if (J <= 0.0) return power == 0.0 ? std::exp(-log_scale) : 0.0;
    return std::exp(power * std::log(J) - J - log_scale);
  };

  // J^p e^{-J} peaks at J = p with width ~ sqrt(p + 1); resolve that window
  // with a few panels and map the remaining tail to (0, 1] via u = e^{-(J-b)}.
  const double width = std::sqrt(power + 1.0);
  const double lo = std::max(0.0, power - 14.0 * width);
  const double hi = power + 14.0 * width + 10.0;

  constexpr int kPanels = 8;
  const double step = (hi - lo) / kPanels;

  // Coarse estimate of the total from the peak window sets the absolute
  // target shared by all panels.
  double coarse = 0.0;
  for (int i = 0; i < kPanels; ++i) {
    coarse += std::abs(Kronrod::integrate(f, lo + i * step, lo + (i + 1) * step, 0, 0.0));
  }
  const double target = std::max(quad.abs_tol, quad.rel_tol * coarse) / (kPanels + 2);

  QuadratureResult acc;
  int first = 0;
  if (lo > 0.0) {
    integrate_origin_panel(f, power, lo, quad, acc, target);
  } else {
    integrate_origin_panel(f, power, step, quad, acc, target);
    first = 1;
  }
  for (int i = first; i < kPanels; ++i) {
    const double a = lo + i * step;
    const double b = (i + 1 == kPanels) ? hi : a + step;
    integrate_panel(f, a, b, quad, acc, target);
  }
  auto tail = [&](double u) {
    if (u <= 0.0) return 0.0;
    const double J = hi - std::log(u);
    return std::exp(power * std::log(J) - hi - log_scale);
  };
  integrate_panel(tail, 0.0, 1.0, quad, acc, target);
  return acc;
}

QuadratureResult tabulated_moment(const Measure& mu, double power, double log_scale,
                                  const QuadraturePolicy& quad) {
  const auto& x = mu.nodes();
  const auto& y = mu.values();
  QuadratureResult acc;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i], b = x[i + 1];
    const double ya = y[i], yb = y[i + 1];
    auto f = [&](double J) {
      const double dens = ya + (yb - ya) * (J - a) / (b - a);
      return dens * scaled_power(J, power, log_scale);
    };
    if (a == 0.0) {
      integrate_origin_panel(f, power, b, quad, acc);
    } else {
      integrate_panel(f, a, b, quad, acc);
    }
  }
  return acc;
}

}  // namespace

void LogMomentAccumulator::advance() {
  ++n_;
  const double term = spec_->log_level(n_);
  // Neumaier compensated summation.
  const double t = hi_ + term;
  if (std::abs(hi_) >= std::abs(term)) {
    lo_ += (hi_ - t) + term;
  } else {
    lo_ += (term - t) + hi_;
  }
  hi_ = t;
}

MomentSequence MomentSequence::build(const Spectrum& spec, std::size_t n_max) {
  if (spec.is_finite() && n_max >= spec.size()) {
    throw Error(Errc::IndexBeyondTable, "moment index " + std::to_string(n_max) +
                                            " needs level beyond table of " +
                                            std::to_string(spec.size()));
  }
  MomentSequence seq(spec);
  seq.log_hi_.reserve(n_max + 1);
  seq.log_lo_.reserve(n_max + 1);
  seq.log_hi_.push_back(0.0);
  seq.log_lo_.push_back(0.0);
  LogMomentAccumulator acc(seq.spec_);
  for (std::size_t n = 1; n <= n_max; ++n) {
    acc.advance();
    seq.log_hi_.push_back(acc.hi());
    seq.log_lo_.push_back(acc.lo());
  }
  return seq;
}

double MomentSequence::log_rho(std::size_t n) const {
  require_computed(*this, n);
  return log_hi_[n] + log_lo_[n];
}

double MomentSequence::rho(std::size_t n) const {
  require_computed(*this, n);
  if (n == 0) return 1.0;
  return std::exp(log_hi_[n]) * std::exp(log_lo_[n]);
}

double hydrogen_rho_closed(std::size_t n) {
  const double x = static_cast<double>(n);
  return (x + 2.0) / (2.0 * (x + 1.0));
}

LimitEstimate radius_of_convergence(const Spectrum& spec) { return limit_level(spec); }

Measure Measure::exp_neg_j() { return Measure(Density::ExpNegJ, kInf); }

Measure Measure::hydrogen() {
  Measure m(Density::ConstHalfOnUnit, 1.0);
  m.atoms_.push_back({1.0, 0.5});
  return m;
}

Measure Measure::tabulated(std::vector<double> nodes, std::vector<double> values,
                           std::vector<Atom> atoms) {
  if (nodes.size() < 2 || nodes.size() != values.size()) {
    throw std::invalid_argument("tabulated density needs >= 2 nodes with matching values");
  }
  if (nodes.front() < 0.0) throw std::invalid_argument("density support must start at J >= 0");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!(values[i] >= 0.0)) throw std::invalid_argument("density must be nonnegative");
    if (i > 0 && !(nodes[i] > nodes[i - 1])) {
      throw std::invalid_argument("density nodes must be strictly increasing");
    }
  }
  double upper = nodes.back();
  for (const auto& a : atoms) {
    if (!(a.weight > 0.0)) throw std::invalid_argument("atom weights must be positive");
    if (a.location < 0.0) throw std::invalid_argument("atoms must sit at J >= 0");
    upper = std::max(upper, a.location);
  }
  Measure m(Density::Tabulated, upper);
  m.nodes_ = std::move(nodes);
  m.values_ = std::move(values);
  m.atoms_ = std::move(atoms);
  return m;
}

Measure canonical_measure(const Spectrum& spec) {
  switch (spec.kind()) {
    case SpectrumKind::Harmonic: return Measure::exp_neg_j();
    case SpectrumKind::Hydrogen1D: return Measure::hydrogen();
    default:
      throw Error(Errc::NoClosedFormMeasure,
                  spec.name() + " has no closed-form moment measure; inverse moment "
                                "problems are not solved");
  }
}

QuadratureResult scaled_moment(const Measure& mu, double power, double log_scale,
                               const QuadraturePolicy& quad) {
  if (!(power >= 0.0)) throw std::invalid_argument("moment power must be >= 0");

  QuadratureResult r;
  switch (mu.density()) {
    case Measure::Density::ExpNegJ:
      r = exp_neg_j_moment(power, log_scale, quad);
      break;
    case Measure::Density::ConstHalfOnUnit:
      r.value = std::exp(std::log(0.5 / (power + 1.0)) - log_scale);
      break;
    case Measure::Density::Tabulated:
      r = tabulated_moment(mu, power, log_scale, quad);
      break;
  }
  if (!(r.error <= std::max(quad.abs_tol, quad.rel_tol * std::abs(r.value)))) {
    throw Error(Errc::QuadratureNotConverged,
                "moment of order " + std::to_string(power) + ": error estimate " +
                    std::to_string(r.error) + " above tolerance");
  }
  for (const auto& a : mu.atoms()) r.value += a.weight * scaled_power(a.location, power, log_scale);
  return r;
}

double moment_of_measure(const Measure& mu, std::size_t n, const QuadraturePolicy& quad) {
  return scaled_moment(mu, static_cast<double>(n), 0.0, quad).value;
}

}  // namespace cohstate
