#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "coarsescope/pu_maps.hpp"

namespace coarsescope {

/// An element (y, i) of X x N, i >= 1.
struct TaggedPoint {
  PointIndex point = 0;
  std::uint32_t copy = 1;

  friend auto operator<=>(const TaggedPoint&, const TaggedPoint&) = default;
};

/// Sorted, duplicate-free finite subset of X x N.
using TaggedSet = std::vector<TaggedPoint>;

TaggedSet make_tagged_set(std::vector<TaggedPoint> elements);

struct SetCounts {
  std::size_t intersection = 0;
  std::size_t symmetric_difference = 0;
};

SetCounts count_overlap(const TaggedSet& a, const TaggedSet& b);

/// |A Δ B| / |A ∩ B|; +inf when the intersection is empty.
double symdiff_ratio(const TaggedSet& a, const TaggedSet& b);

/// The family {A_x} with A_x a nonempty subset of B(x, S) x N.
class SetFamily {
 public:
  /// Throws InvalidArgument for empty sets and ForeignPoint when some (y, i)
  /// in A_x has d(x, y) >= S or an unknown point.
  SetFamily(SpacePtr space, double S, std::vector<TaggedSet> sets);

  const FiniteMetricSpace& space() const noexcept { return *space_; }
  const SpacePtr& space_ptr() const noexcept { return space_; }
  double S() const noexcept { return S_; }
  const TaggedSet& set(PointIndex x) const { return sets_.at(x); }
  const std::vector<TaggedSet>& sets() const noexcept { return sets_; }

 private:
  SpacePtr space_;
  double S_;
  std::vector<TaggedSet> sets_;
};

double symdiff_ratio(const SetFamily& family, PointIndex x, PointIndex y);

struct WorstRatio {
  double ratio = 0.0;
  std::optional<PointPair> pair;
};

/// Largest symdiff_ratio over pairs with d(x,y) <= R.
WorstRatio worst_symdiff_ratio(const SetFamily& family, double R);

/// A_x = B(x, S) x {1..depth}.
SetFamily ball_family(const SpacePtr& space, double S, std::uint32_t depth);

struct PropertyAInput {
  double R = 0.0;
  double eps = 0.0;
  std::size_t M = 2;  // every ball B(x, 1/delta) has at most M points
  double delta = 0.5;
};

struct CxResult {
  std::vector<TaggedSet> C;
  std::vector<char> large;  // |A_x| >= 8M/delta
  WorstRatio precondition;  // worst ratio, must be < delta/(8M)
  std::vector<Check> checks;

  bool verified() const;
};

/// C_x = A_x ∪ B(x,1/delta) x {1} when |A_x| >= 8M/delta, otherwise the
/// R-component of x times {1}. Throws ParameterConstraintFailed, BallTooBig and
/// RatioPreconditionFailed when the construction's hypotheses fail.
CxResult build_cx(const SetFamily& family, const PropertyAInput& input);

struct CxPartitionResult {
  PUMap f;
  std::vector<Check> checks;

  bool verified() const;
};

/// x -> f_x with f_x(z) = |({z} x N) ∩ C_x| / |C_x|, a map into Delta(X) with
/// vertex set X. Checks every link of the variation estimate on pairs with
/// d(x,y) <= R and localizes star preimages: B(y,1/delta) ⊆ st(y) ⊆ B(y,2S).
/// Throws EmptyCx and ForeignPoint.
CxPartitionResult cx_partition(const std::vector<TaggedSet>& C, const SpacePtr& space, const PropertyAInput& input,
                               double S);

struct PropertyACertificate {
  DeltaPUCertificate pu;
  VariationReport variation;
  double support_diameter = 0.0;
  bool lipschitz_from_variation_ok = false;  // ((2-eps)/R, eps)-Lipschitz
};

/// Reads a partition of unity with (R, eps) variation and supports of diameter
/// <= M_support as a delta-partition of unity, delta defaulting to 2/R.
/// Throws NotPartition, SupportTooBig and VariationFailed.
PropertyACertificate property_a_to_pu(const PUMap& phi, double R, double eps, double M_support,
                                      std::optional<double> delta = std::nullopt);

struct PropertyAData {
  double delta = 0.0;  // eps / (R + 1)
  LipschitzReport lipschitz;
  double max_variation = 0.0;  // over d(x,y) <= R
  bool variation_ok = false;   // <= eps
  double support_diameter = 0.0;
  bool verdict = false;
};

/// Reverse direction: a (delta, delta)-Lipschitz map with delta = eps/(R+1)
/// gives Property A data at (R, eps).
PropertyAData pu_to_property_a(const PUMap& f, double R, double eps);

}  // namespace coarsescope
