#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cohstate {

enum class Errc {
  InvalidSpectrum,
  IndexBeyondTable,
  LimitUnavailable,
  IndexBeyondComputed,
  NoClosedFormMeasure,
  QuadratureNotConverged,
  OutOfDomain,
  CapExceeded,
  SpectrumMismatch,
  BoundViolated,
  DegeneratePair,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above; the
/// message is prefixed with the code name so it reads well on its own.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace cohstate
