// SPDX-License-Identifier: Apache-2.0

#include "core/error.hpp"

namespace mccm {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
      return "InvalidArgument";
    case ErrorCode::DimensionMismatch:
      return "DimensionMismatch";
    case ErrorCode::NotSymmetric:
      return "NotSymmetric";
    case ErrorCode::DegenerateMatrix:
      return "DegenerateMatrix";
    case ErrorCode::EigFailed:
      return "EigFailed";
    case ErrorCode::MaxIterExceeded:
      return "MaxIterExceeded";
    case ErrorCode::NonFiniteObjective:
      return "NonFiniteObjective";
    case ErrorCode::InvalidGram:
      return "InvalidGram";
    case ErrorCode::SolverFailed:
      return "SolverFailed";
    case ErrorCode::RankDeficient:
      return "RankDeficient";
    case ErrorCode::ConstructionFailed:
      return "ConstructionFailed";
    case ErrorCode::ParseError:
      return "ParseError";
    case ErrorCode::InvalidRecord:
      return "InvalidRecord";
    case ErrorCode::IoError:
      return "IoError";
  }
  return "Unknown";
}

}  // namespace mccm
