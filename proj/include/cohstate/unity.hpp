#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cohstate/moments.hpp"
#include "cohstate/state.hpp"

namespace cohstate {

struct DiagonalReport {
  std::size_t n_max = 0;
  std::vector<double> errors;  // |int J^n dmu / rho_n - 1|
  double max_error = 0.0;
  std::size_t worst_n = 0;
};

/// Diagonal of the reconstructed unity operator: the weight of |n><n| is
/// int J^n dmu / rho_n, which must equal 1 for every n.
DiagonalReport verify_diagonal(const Spectrum& spec, const Measure& mu, std::size_t n_max,
                               const QuadraturePolicy& quad = {});

/// Finite-window gamma average of the (n, m) matrix element of |J,g><J,g|,
/// (1/2G) int_{-G}^{G} c_n(g) conj(c_m(g)) dg.
struct BohrTerm {
  Amplitude average;       // by Gauss-Legendre quadrature in gamma
  double sinc_form = 0.0;  // prefactor * sin(dE G) / (dE G)
  double prefactor = 0.0;  // |c_n c_m| = J^{(n+m)/2} / (M^2 sqrt(rho_n rho_m))
  double level_gap = 0.0;  // e_n - e_m
};

/// Throws DegeneratePair when e_n and e_m coincide, std::invalid_argument for
/// n == m or Gamma <= 0, OutOfDomain for J outside (0, J*).
BohrTerm bohr_offdiagonal(const Spectrum& spec, std::size_t n, std::size_t m, double J,
                          double Gamma, const TruncationPolicy& policy = {});

/// Off-diagonal decay of one level pair against the window half-width.
/// magnitude(G) is the largest |average| over windows G' in [G, G + pi/|dE|],
/// i.e. the envelope beyond G; its log-log slope is expected at -1.
struct DecayFit {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<double> gammas;
  std::vector<double> magnitudes;
  double slope = 0.0;
  double intercept = 0.0;  // log10 magnitude at G = 1
};

DecayFit offdiagonal_decay(const Spectrum& spec, std::size_t n, std::size_t m, double J,
                           std::span<const double> gammas, const TruncationPolicy& policy = {});

struct OffdiagonalSample {
  std::size_t n = 0;
  std::size_t m = 0;
  double Gamma = 0.0;
  double magnitude = 0.0;
};

struct UnityReport {
  std::size_t n_max = 0;
  double gamma_window = 0.0;
  std::vector<double> diag_errors;
  double max_diag_error = 0.0;
  /// Largest off-diagonal entry and where it sits.
  OffdiagonalSample offdiag_max;
  /// Gamma * max |O_nm|, the fitted constant in |O| <= C / Gamma.
  double fitted_constant = 0.0;
  /// max_{n != m} K_nm / |e_n - e_m|: the sinc-envelope constant.
  double envelope_constant = 0.0;
  bool diagonal_pass = false;
  bool offdiagonal_pass = false;
  bool pass() const { return diagonal_pass && offdiagonal_pass; }
};

/// Assembles the (n_max+1)^2 operator int dmu(J) M(J)^2 <Bohr mean over
/// gamma> |J,g><J,g| restricted to levels 0..n_max. Off-diagonal entries are
/// K_nm sinc((e_n - e_m) Gamma) with K_nm = int J^{(n+m)/2} dmu / sqrt(rho_n rho_m).
UnityReport resolution_check(const Spectrum& spec, const Measure& mu, std::size_t n_max,
                             double Gamma, const QuadraturePolicy& quad = {},
                             double diagonal_tolerance = 1e-10);

}  // namespace cohstate
