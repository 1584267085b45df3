#include "slowlight/error.hpp"

namespace slowlight {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ContractViolation: return "contract-violation";
    case ErrorKind::InvalidData: return "invalid-data";
    case ErrorKind::Truncation: return "truncation";
    case ErrorKind::Aliasing: return "aliasing";
    case ErrorKind::OutOfRange: return "out-of-range";
    case ErrorKind::Unavailable: return "unavailable";
    case ErrorKind::DegenerateInput: return "degenerate-input";
    case ErrorKind::Format: return "format";
    case ErrorKind::InvalidBands: return "invalid-bands";
    case ErrorKind::DivisionBlowup: return "division-blowup";
    case ErrorKind::AmbiguousWidth: return "ambiguous-width";
    case ErrorKind::Unidentifiable: return "unidentifiable";
    case ErrorKind::Config: return "config";
  }
  return "unknown";
}

}  // namespace slowlight
