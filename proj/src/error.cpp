#include "inscribe/error.hpp"

#include <cstdlib>
#include <string>

#include "inscribe/tolerance.hpp"

namespace inscribe {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::ParallelLines: return "ParallelLines";
    case ErrorCode::OffLine: return "OffLine";
    case ErrorCode::NotConvex: return "NotConvex";
    case ErrorCode::DegenerateCevians: return "DegenerateCevians";
    case ErrorCode::TransversalMiss: return "TransversalMiss";
    case ErrorCode::DegenerateMap: return "DegenerateMap";
    case ErrorCode::TooManyCoincidences: return "TooManyCoincidences";
    case ErrorCode::CenterOnLine: return "CenterOnLine";
    case ErrorCode::InvalidInstance: return "InvalidInstance";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::SingularDenominator: return "SingularDenominator";
    case ErrorCode::NoRealRoots: return "NoRealRoots";
    case ErrorCode::RootsOutOfRange: return "RootsOutOfRange";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::LineOnConic: return "LineOnConic";
    case ErrorCode::DegenerateChain: return "DegenerateChain";
    case ErrorCode::PointsNotOnConic: return "PointsNotOnConic";
    case ErrorCode::NotPerspective: return "NotPerspective";
    case ErrorCode::OffPlane: return "OffPlane";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Tolerances tolerances_from_env() {
  Tolerances tol;
  if (const char* env = std::getenv("INSCRIBE_EPS")) {
    char* end = nullptr;
    const double value = std::strtod(env, &end);
    if (end != env && *end == '\0' && value > 0.0) tol.eps = value;
  }
  return tol;
}

}  // namespace inscribe
