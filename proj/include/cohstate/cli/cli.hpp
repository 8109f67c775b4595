#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "cohstate/spectrum.hpp"

namespace cohstate::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Malformed or inconsistent configuration (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a spectrum block, e.g. {"kind": "hydrogen1d", "omega": 1.0} or
/// {"kind": "custom_table", "omega": 2.5, "levels": [0, 0.75, ...]}, and
/// validates it eagerly up to `n_validate` levels.
Spectrum spectrum_from_json(const nlohmann::json& block,
                            std::size_t n_validate = kDefaultValidationDepth);

nlohmann::json spectrum_to_json(const Spectrum& spec);

/// Fixed formatting used for every emitted number: 15 significant digits.
std::string format_number(double x);

/// Full command-line entry point. Writes CSV/report output to `out` unless
/// --out redirects it, diagnostics to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cohstate::cli
