#pragma once

#include <stdexcept>
#include <string>

namespace symdyn {

enum class ErrorCode {
  NotSquare,
  DimensionTooSmall,
  NonBinaryEntry,
  ZeroRow,
  ZeroColumn,
  NoConvergence,
  SymbolOutOfRange,
  InvalidSequence,
  InvalidDomain,
  InvalidMap,
  InvalidPartition,
  UnknownBuiltin,
  BadParams,
  OutOfDomain,
  AtBreakpoint,
  NotInSupport,
  NotInImage,
  NotATransitionMatrix,
  DimensionMismatch,
  EmptyCylinder,
  AmbiguousBranch,
  EnumerationCapExceeded,
  SlowConvergence,
  AtSpecialPoint,
  ConfigParse,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so that
/// the report writer can serialize it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by derivative() at a branch endpoint whose one-sided derivatives
/// disagree. Both values are kept so callers can still use them.
class BreakpointError : public Error {
 public:
  BreakpointError(double left, double right);

  double left() const noexcept { return left_; }
  double right() const noexcept { return right_; }

 private:
  double left_;
  double right_;
};

}  // namespace symdyn
