#pragma once

#include <string>
#include <vector>

#include "cohstate/moments.hpp"
#include "cohstate/series.hpp"
#include "cohstate/spectrum.hpp"

namespace cohstate::cli {

enum class CheckStatus { Pass, Fail, Skipped };

const char* status_name(CheckStatus s);

/// One sub-check feeding a postulate verdict.
struct ResidualRow {
  std::string check;
  std::string parameter;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

struct PostulateCheck {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  double residual = 0.0;   // worst residual / tolerance ratio among sub-checks
  double tolerance = 1.0;
  double runtime_seconds = 0.0;
  std::string detail;
};

struct VerificationReport {
  std::vector<PostulateCheck> postulates;  // continuity, unity, temporal, action
  std::vector<ResidualRow> residuals;
  double action_reference = 0.0;           // J scale used for grids

  bool pass() const;
};

struct VerifyOptions {
  std::size_t n_max = 200;
  double gamma_window = 1e4;
};

/// Largest action used for the verification grids: min(J*, 10) for analytic
/// spectra; for tables the largest J at which the top level still carries
/// less than 1e-13 of the probability.
double reference_action(const Spectrum& spec, const TruncationPolicy& policy);

VerificationReport run_verification(const Spectrum& spec, const TruncationPolicy& policy,
                                    const QuadraturePolicy& quad, const VerifyOptions& options);

}  // namespace cohstate::cli
