#include "coarsescope/core.hpp"

#include <atomic>

namespace coarsescope {

namespace {
std::atomic<double> g_tolerance{kDefaultTolerance};
}

double tolerance() { return g_tolerance.load(std::memory_order_relaxed); }

void set_tolerance(double tau) {
  if (!(tau >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "tolerance must be nonnegative");
  }
  g_tolerance.store(tau, std::memory_order_relaxed);
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedDocument: return "MALFORMED_DOCUMENT";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::AsymmetricMatrix: return "ASYMMETRIC_MATRIX";
    case ErrorCode::TriangleViolation: return "TRIANGLE_VIOLATION";
    case ErrorCode::DisconnectedGraph: return "DISCONNECTED_GRAPH";
    case ErrorCode::DuplicateId: return "DUPLICATE_ID";
    case ErrorCode::CoincidentPoints: return "COINCIDENT_POINTS";
    case ErrorCode::UnknownPoint: return "UNKNOWN_POINT";
    case ErrorCode::UnknownIndex: return "UNKNOWN_INDEX";
    case ErrorCode::NotEuclidean: return "NOT_EUCLIDEAN";
    case ErrorCode::NotACover: return "NOT_A_COVER";
    case ErrorCode::NotNormalized: return "NOT_NORMALIZED";
    case ErrorCode::NotInTarget: return "NOT_IN_TARGET";
    case ErrorCode::EpsOutOfRange: return "EPS_OUT_OF_RANGE";
    case ErrorCode::BoundDegenerate: return "BOUND_DEGENERATE";
    case ErrorCode::UncoveredPoint: return "UNCOVERED_POINT";
    case ErrorCode::ZeroLebesgue: return "ZERO_LEBESGUE";
    case ErrorCode::DistortionViolated: return "DISTORTION_VIOLATED";
    case ErrorCode::PreconditionVariation: return "PRECONDITION_VARIATION";
    case ErrorCode::ANotInSkeleton: return "A_NOT_IN_SKELETON";
    case ErrorCode::NoAssignableVertex: return "NO_ASSIGNABLE_VERTEX";
    case ErrorCode::ScheduleNotFound: return "SCHEDULE_NOT_FOUND";
    case ErrorCode::PreconditionFailed: return "PRECONDITION_FAILED";
    case ErrorCode::RatioPreconditionFailed: return "RATIO_PRECONDITION_FAILED";
    case ErrorCode::ParameterConstraintFailed: return "PARAMETER_CONSTRAINT_FAILED";
    case ErrorCode::BallTooBig: return "BALL_TOO_BIG";
    case ErrorCode::EmptyCx: return "EMPTY_CX";
    case ErrorCode::ForeignPoint: return "FOREIGN_POINT";
    case ErrorCode::NotPartition: return "NOT_PARTITION";
    case ErrorCode::SupportTooBig: return "SUPPORT_TOO_BIG";
    case ErrorCode::VariationFailed: return "VARIATION_FAILED";
    case ErrorCode::DeltaTooLarge: return "DELTA_TOO_LARGE";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace coarsescope
