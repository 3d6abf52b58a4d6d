#include "symdyn/error.hpp"

#include <sstream>

namespace symdyn {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::NonBinaryEntry: return "NonBinaryEntry";
    case ErrorCode::ZeroRow: return "ZeroRow";
    case ErrorCode::ZeroColumn: return "ZeroColumn";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SymbolOutOfRange: return "SymbolOutOfRange";
    case ErrorCode::InvalidSequence: return "InvalidSequence";
    case ErrorCode::InvalidDomain: return "InvalidDomain";
    case ErrorCode::InvalidMap: return "InvalidMap";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::UnknownBuiltin: return "UnknownBuiltin";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::AtBreakpoint: return "AtBreakpoint";
    case ErrorCode::NotInSupport: return "NotInSupport";
    case ErrorCode::NotInImage: return "NotInImage";
    case ErrorCode::NotATransitionMatrix: return "NotATransitionMatrix";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyCylinder: return "EmptyCylinder";
    case ErrorCode::AmbiguousBranch: return "AmbiguousBranch";
    case ErrorCode::EnumerationCapExceeded: return "EnumerationCapExceeded";
    case ErrorCode::SlowConvergence: return "SlowConvergence";
    case ErrorCode::AtSpecialPoint: return "AtSpecialPoint";
    case ErrorCode::ConfigParse: return "ConfigParse";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

namespace {
std::string breakpoint_message(double left, double right) {
  std::ostringstream os;
  os.precision(17);
  os << "one-sided derivatives differ (left " << left << ", right " << right << ")";
  return os.str();
}
}  // namespace

BreakpointError::BreakpointError(double left, double right)
    : Error(ErrorCode::AtBreakpoint, breakpoint_message(left, right)), left_(left), right_(right) {}

}  // namespace symdyn
