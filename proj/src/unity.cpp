#include "cohstate/unity.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cohstate/errors.hpp"
#include "cohstate/series.hpp"

namespace cohstate {

namespace {

using Legendre = boost::math::quadrature::gauss<double, 10>;

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

// (1/2G) int_{-G}^{G} e^{-i gap g} dg by composite Gauss-Legendre, panels no
// wider than half an oscillation period.
Amplitude window_average(double gap, double Gamma) {
  const double span = 2.0 * Gamma;
  const auto panels = static_cast<std::size_t>(std::ceil(span * std::abs(gap) / std::numbers::pi)) + 1;
  const double width = span / static_cast<double>(panels);
  double re = 0.0, im = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double a = -Gamma + width * static_cast<double>(p);
    const double b = (p + 1 == panels) ? Gamma : a + width;
    re += Legendre::integrate([&](double g) { return std::cos(gap * g); }, a, b);
    im -= Legendre::integrate([&](double g) { return std::sin(gap * g); }, a, b);
  }
  return {re / span, im / span};
}

}  // namespace

DiagonalReport verify_diagonal(const Spectrum& spec, const Measure& mu, std::size_t n_max,
                               const QuadraturePolicy& quad) {
  const MomentSequence seq = MomentSequence::build(spec, n_max);
  DiagonalReport r;
  r.n_max = n_max;
  r.errors.resize(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    const double ratio = scaled_moment(mu, static_cast<double>(n), seq.log_rho(n), quad).value;
    r.errors[n] = std::abs(ratio - 1.0);
    if (r.errors[n] > r.max_error) {
      r.max_error = r.errors[n];
      r.worst_n = n;
    }
  }
  return r;
}

BohrTerm bohr_offdiagonal(const Spectrum& spec, std::size_t n, std::size_t m, double J,
                          double Gamma, const TruncationPolicy& policy) {
  if (n == m) throw std::invalid_argument("off-diagonal term needs n != m");
  if (!(Gamma > 0.0)) throw std::invalid_argument("averaging window must be positive");
  if (!(J > 0.0)) throw Error(Errc::OutOfDomain, "off-diagonal average needs J > 0");
  require_action_in_domain(spec, J);

  const double en = spec.level(n);
  const double em = spec.level(m);
  const double gap = en - em;
  if (std::abs(gap) <= 1e-14 * std::max({1.0, std::abs(en), std::abs(em)})) {
    throw Error(Errc::DegeneratePair, "levels " + std::to_string(n) + " and " +
                                          std::to_string(m) + " are degenerate");
  }

  const LevelSeries s = sum_level_series(spec, J, policy);
  const MomentSequence seq = MomentSequence::build(spec, std::max(n, m));
  const double half_order = 0.5 * static_cast<double>(n + m);
  const double log_prefactor =
      half_order * std::log(J) - 0.5 * (seq.log_rho(n) + seq.log_rho(m)) - s.log_sum(0);

  BohrTerm t;
  t.level_gap = gap;
  t.prefactor = std::exp(log_prefactor);
  t.sinc_form = t.prefactor * sinc(gap * Gamma);
  t.average = t.prefactor * window_average(gap, Gamma);
  return t;
}

DecayFit offdiagonal_decay(const Spectrum& spec, std::size_t n, std::size_t m, double J,
                           std::span<const double> gammas, const TruncationPolicy& policy) {
  if (gammas.size() < 2) throw std::invalid_argument("decay fit needs at least two windows");
  DecayFit fit;
  fit.n = n;
  fit.m = m;
  const double gap = std::abs(spec.level(n) - spec.level(m));
  constexpr int kScan = 33;
  for (double G : gammas) {
    double peak = 0.0;
    for (int i = 0; i < kScan; ++i) {
      const double window = G + std::numbers::pi / gap * i / (kScan - 1);
      peak = std::max(peak, std::abs(bohr_offdiagonal(spec, n, m, J, window, policy).average));
    }
    fit.gammas.push_back(G);
    fit.magnitudes.push_back(peak);
  }

  // Least squares on (log10 G, log10 magnitude).
  const double k = static_cast<double>(gammas.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    const double x = std::log10(fit.gammas[i]);
    const double y = std::log10(fit.magnitudes[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  fit.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / k;
  return fit;
}

UnityReport resolution_check(const Spectrum& spec, const Measure& mu, std::size_t n_max,
                             double Gamma, const QuadraturePolicy& quad,
                             double diagonal_tolerance) {
  if (!(Gamma > 0.0)) throw std::invalid_argument("averaging window must be positive");
  UnityReport r;
  r.n_max = n_max;
  r.gamma_window = Gamma;

  const DiagonalReport diag = verify_diagonal(spec, mu, n_max, quad);
  r.diag_errors = diag.errors;
  r.max_diag_error = diag.max_error;
  r.diagonal_pass = diag.max_error <= diagonal_tolerance;

  // K_nm depends on n + m only through the half-integer moment.
  const MomentSequence seq = MomentSequence::build(spec, n_max);
  // Stored as logs, pre-scaled by the neighbouring ln rho values so that
  // factorial-sized moments stay finite.
  std::vector<double> half_moment(2 * n_max + 1);
  for (std::size_t s = 0; s <= 2 * n_max; ++s) {
    const double scale = 0.5 * (seq.log_rho(s / 2) + seq.log_rho((s + 1) / 2));
    half_moment[s] =
        scale + std::log(scaled_moment(mu, 0.5 * static_cast<double>(s), scale, quad).value);
  }

  double max_mag = 0.0;
  for (std::size_t n = 0; n <= n_max; ++n) {
    for (std::size_t m = n + 1; m <= n_max; ++m) {
      const double gap = spec.level(m) - spec.level(n);
      if (!(gap > 0.0)) {
        throw Error(Errc::DegeneratePair, "levels " + std::to_string(n) + " and " +
                                              std::to_string(m) + " are degenerate");
      }
      const double K =
          std::exp(half_moment[n + m] - 0.5 * (seq.log_rho(n) + seq.log_rho(m)));
      const double mag = std::abs(K * sinc(gap * Gamma));
      r.envelope_constant = std::max(r.envelope_constant, K / gap);
      if (mag > max_mag) {
        max_mag = mag;
        r.offdiag_max = {n, m, Gamma, mag};
      }
    }
  }
  r.fitted_constant = max_mag * Gamma;
  r.offdiagonal_pass = r.fitted_constant <= r.envelope_constant * (1.0 + 1e-12);
  return r;
}

}  // namespace cohstate
