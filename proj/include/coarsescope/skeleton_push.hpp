#pragma once

#include <optional>

#include "coarsescope/pu_maps.hpp"

namespace coarsescope {

/// Mass outside the n+1 heaviest vertices (ties broken by vertex index).
double tail_mass(const SimplexPoint& p, int n);

/// Folds p into the n-skeleton: the n+1 heaviest vertices keep their weights
/// and the heaviest one also absorbs the tail mass. Identity when p already
/// has at most n+1 vertices.
SimplexPoint fold_to_skeleton(const SimplexPoint& p, int n);

/// The global fold applied at every point of f's domain.
PUMap fold_map(const PUMap& f, int n);

struct PushResult {
  /// r on B(A,R).
  PUMap r;
  /// The same fold applied on the whole domain of f.
  PUMap extension;
  PointSet neighborhood;
  double eps = 0.0;
  double mu_claimed = 0.0;  // (8n+5) eps
  VariationReport variation;
  bool variation_verified = false;
  bool agreement_on_A = false;
  std::optional<PointIndex> agreement_witness;
  bool carrier_inclusion = false;
  std::optional<PointIndex> carrier_witness;
  double max_pointwise = 0.0;  // max ||f(x) - r(x)|| on B(A,R)
  double pointwise_bound = 0.0;  // 2(2n+1) eps
  bool pointwise_ok = false;
  std::optional<PointIndex> pointwise_witness;

  bool verified() const noexcept {
    return variation_verified && agreement_on_A && carrier_inclusion && pointwise_ok;
  }
};

/// Retraction of f over B(A,R) into the n-skeleton with (R, (8n+5) eps) variation.
/// Throws PreconditionVariation when f lacks (R, eps) variation and
/// ANotInSkeleton when some f(a), a in A, has more than n+1 vertices.
PushResult push_to_skeleton(const PUMap& f, const PointSet& A, double R, int n, double eps);

}  // namespace coarsescope
