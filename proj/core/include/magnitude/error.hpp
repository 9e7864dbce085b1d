#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace magnitude {

enum class ErrorCode {
  InvalidInput,
  NotSquare,
  NonFinite,
  NotSymmetric,
  NegativeEntry,
  NonzeroDiagonal,
  TriangleViolation,
  ZeroDistanceDistinctPoints,
  NonpositiveScale,
  DisconnectedGraph,
  BadSpec,
  NotRowHomogeneous,
  MonotonicityViolation,
  DuplicatePoints,
  ReversedInterval,
  OverlappingGaps,
  NegativeGap,
  EmptySet,
  MixedDimensions,
  BadScale,
  TooManyCells,
  ProbeOutsideSet,
  DegenerateBody,
  NonConvexVertices,
  NonConvergence,
  TooLarge,
  WindowTooNarrow,
  UnsupportedDimension,
  OddDimension,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every rejected input or failed computation in the
/// library. `code()` is stable and suitable for dispatch; `what()` is for
/// humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace magnitude
