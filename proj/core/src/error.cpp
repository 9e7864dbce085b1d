#include "magnitude/error.hpp"

namespace magnitude {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::TriangleViolation: return "TriangleViolation";
    case ErrorCode::ZeroDistanceDistinctPoints: return "ZeroDistanceDistinctPoints";
    case ErrorCode::NonpositiveScale: return "NonpositiveScale";
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::BadSpec: return "BadSpec";
    case ErrorCode::NotRowHomogeneous: return "NotRowHomogeneous";
    case ErrorCode::MonotonicityViolation: return "MonotonicityViolation";
    case ErrorCode::DuplicatePoints: return "DuplicatePoints";
    case ErrorCode::ReversedInterval: return "ReversedInterval";
    case ErrorCode::OverlappingGaps: return "OverlappingGaps";
    case ErrorCode::NegativeGap: return "NegativeGap";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::MixedDimensions: return "MixedDimensions";
    case ErrorCode::BadScale: return "BadScale";
    case ErrorCode::TooManyCells: return "TooManyCells";
    case ErrorCode::ProbeOutsideSet: return "ProbeOutsideSet";
    case ErrorCode::DegenerateBody: return "DegenerateBody";
    case ErrorCode::NonConvexVertices: return "NonConvexVertices";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::WindowTooNarrow: return "WindowTooNarrow";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::OddDimension: return "OddDimension";
  }
  return "Unknown";
}

}  // namespace magnitude
