#include "cohstate/errors.hpp"

namespace cohstate {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidSpectrum: return "InvalidSpectrum";
    case Errc::IndexBeyondTable: return "IndexBeyondTable";
    case Errc::LimitUnavailable: return "LimitUnavailable";
    case Errc::IndexBeyondComputed: return "IndexBeyondComputed";
    case Errc::NoClosedFormMeasure: return "NoClosedFormMeasure";
    case Errc::QuadratureNotConverged: return "QuadratureNotConverged";
    case Errc::OutOfDomain: return "OutOfDomain";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::SpectrumMismatch: return "SpectrumMismatch";
    case Errc::BoundViolated: return "BoundViolated";
    case Errc::DegeneratePair: return "DegeneratePair";
  }
  return "Unknown";
}

}  // namespace cohstate
