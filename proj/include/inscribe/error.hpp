#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace inscribe {

enum class ErrorCode {
  InvalidArgument,
  CoincidentPoints,
  ParallelLines,
  OffLine,
  NotConvex,
  DegenerateCevians,
  TransversalMiss,
  DegenerateMap,
  TooManyCoincidences,
  CenterOnLine,
  InvalidInstance,
  DomainError,
  SingularDenominator,
  NoRealRoots,
  RootsOutOfRange,
  RankDeficient,
  LineOnConic,
  DegenerateChain,
  PointsNotOnConic,
  NotPerspective,
  OffPlane,
  InvalidGraph,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so callers
/// (and the CLI's machine-readable error object) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace inscribe
