#include "cohstate/series.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "cohstate/errors.hpp"
#include "cohstate/moments.hpp"

namespace cohstate {

namespace {

// Neumaier summation of positive terms.
struct CompensatedSum {
  double sum = 0.0;
  double c = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      c += (sum - t) + x;
    } else {
      c += (x - t) + sum;
    }
    sum = t;
  }
  void scale(double f) {
    sum *= f;
    c *= f;
  }
  double value() const { return sum + c; }
};

}  // namespace

double LevelSeries::log_sum(int k) const { return log_scale + std::log(sums[k]); }

void require_action_in_domain(const Spectrum& spec, double J) {
  const double limit = spec.is_finite() ? std::numeric_limits<double>::infinity()
                                        : spec.level_supremum();
  if (!(J >= 0.0) || !(J < limit) || !std::isfinite(J)) {
    std::ostringstream os;
    os.precision(15);
    os << "action J=" << J << " outside [0, " << limit << ") for " << spec.name();
    throw Error(Errc::OutOfDomain, os.str());
  }
}

LevelSeries sum_level_series(const Spectrum& spec, double J, const TruncationPolicy& policy,
                             int max_power, bool keep_terms, CapPolicy cap) {
  require_action_in_domain(spec, J);
  if (max_power < 0 || max_power > 2) throw std::invalid_argument("max_power must be 0, 1 or 2");

  LevelSeries out;
  if (keep_terms) out.log_terms.push_back(0.0);
  out.sums = {1.0, 0.0, 0.0};
  if (J == 0.0) return out;

  const double log_j = std::log(J);
  std::array<CompensatedSum, 3> acc;
  acc[0].add(1.0);  // n = 0: J^0 / rho_0 = 1, e_0 = 0
  double scale = 0.0;

  LogMomentAccumulator moments(spec);
  const std::size_t last_table = spec.is_finite() ? spec.size() - 1 : 0;

  for (std::size_t n = 1;; ++n) {
    if (spec.is_finite() && n > last_table) {
      out.table_exhausted = true;
      break;
    }
    if (n > policy.n_cap) {
      if (cap == CapPolicy::Throw) {
        std::ostringstream os;
        os.precision(15);
        os << "tail of " << spec.name() << " at J=" << J << " not certified within n_cap="
           << policy.n_cap << " terms";
        throw Error(Errc::CapExceeded, os.str());
      }
      out.certified = false;
      break;
    }

    moments.advance();
    const double log_term = static_cast<double>(n) * log_j - moments.hi() - moments.lo();
    if (keep_terms) out.log_terms.push_back(log_term);
    if (log_term > scale) {
      // Rescale so the largest term seen so far is O(1).
      const double f = std::exp(scale - log_term);
      for (auto& a : acc) a.scale(f);
      scale = log_term;
    }
    const double term = std::exp(log_term - scale);
    const double e = spec.level(n);
    const std::array<double, 3> weighted{term, term * e, term * e * e};
    for (int k = 0; k <= max_power; ++k) acc[k].add(weighted[k]);

    out.last_index = n;
    if (spec.is_finite()) continue;

    const double q = J / spec.level(n + 1);
    if (!(q < 1.0)) continue;
    const double ratio = spec.level_ratio_bound(n);
    bool done = true;
    for (int k = 0; k <= max_power && done; ++k) {
      const double r = q * std::pow(ratio, k);
      if (!(r < 1.0)) {
        done = false;
        break;
      }
      const double bound = weighted[k] * r / (1.0 - r);
      const double s = acc[k].value();
      done = bound <= policy.rel_tol * s;
      out.rel_tail[k] = bound / s;
    }
    if (done) break;
  }

  out.log_scale = scale;
  for (int k = 0; k <= max_power; ++k) out.sums[k] = acc[k].value();
  if (spec.is_finite()) out.rel_tail = {0.0, 0.0, 0.0};
  return out;
}

}  // namespace cohstate
