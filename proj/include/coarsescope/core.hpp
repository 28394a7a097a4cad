#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace coarsescope {

using PointIndex = std::size_t;
using VertexIndex = std::size_t;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr double kDefaultTolerance = 1e-9;

/// Absolute slack used by every inequality check in the library.
double tolerance();
void set_tolerance(double tau);

enum class ErrorCode {
  MalformedDocument,
  InvalidArgument,
  AsymmetricMatrix,
  TriangleViolation,
  DisconnectedGraph,
  DuplicateId,
  CoincidentPoints,
  UnknownPoint,
  UnknownIndex,
  NotEuclidean,
  NotACover,
  NotNormalized,
  NotInTarget,
  EpsOutOfRange,
  BoundDegenerate,
  UncoveredPoint,
  ZeroLebesgue,
  DistortionViolated,
  PreconditionVariation,
  ANotInSkeleton,
  NoAssignableVertex,
  ScheduleNotFound,
  PreconditionFailed,
  RatioPreconditionFailed,
  ParameterConstraintFailed,
  BallTooBig,
  EmptyCx,
  ForeignPoint,
  NotPartition,
  SupportTooBig,
  VariationFailed,
  DeltaTooLarge,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A pair of points; used as a witness by every pairwise check.
struct PointPair {
  PointIndex first = 0;
  PointIndex second = 0;

  friend bool operator==(const PointPair&, const PointPair&) = default;
};

/// One named verification step: a measured quantity against a bound, with a
/// witness point or pair when it fails.
struct Check {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double bound = 0.0;
  std::optional<PointIndex> point;
  std::optional<PointPair> pair;
  /// Informational checks are reported but do not affect verdicts.
  bool required = true;
};

}  // namespace coarsescope
