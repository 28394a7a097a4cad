#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coarsescope/pu_maps.hpp"

namespace coarsescope {

enum class WitnessKind { Cover, Map };

/// Asymptotic dimension at most n, certified at one scale.
struct AsdimCertificate {
  double scale_R = 0.0;
  int n_claimed = 0;
  WitnessKind kind = WitnessKind::Cover;

  // Cover statistics: of the witness cover, or of the induced star-preimage cover.
  double lebesgue = 0.0;
  std::size_t multiplicity = 0;
  double mesh = 0.0;

  // Map witnesses only.
  double delta = 0.0;
  double lambda_hat = 0.0;  // smallest lambda with f (lambda, delta)-Lipschitz
  double measured_delta = 0.0;
  double bound_M = 0.0;

  // Cover witnesses only: delta for which the barycentric map is a delta-PU.
  double delta_recipe = 0.0;      // max(1, (n+1)^2/4) / R
  double delta_lipofbary = 0.0;   // max(1, 4(n+1)^2) / R

  bool verdict = false;
  std::string failure;  // empty on pass
  std::optional<PointIndex> witness_point;
  std::optional<PointPair> witness_pair;
  std::vector<std::string> provenance;
};

/// verdict = multiplicity <= n+1, Lebesgue >= R and finite mesh.
AsdimCertificate certify_from_cover(const Cover& cover, double R, int n);

/// f (delta, delta)-Lipschitz into the n-skeleton with star mesh <= bound_M gives
/// the star-preimage cover, checked to have multiplicity <= n+1 and Lebesgue >=
/// R = (1 - (n+1)delta) / ((n+1)delta). Throws DeltaTooLarge when (n+1)delta >= 1.
AsdimCertificate certify_from_map(const PUMap& f, double delta, int n, double bound_M);

/// Asdim certificate from an eps-partition of unity h in the n-skeleton that is a
/// push of f (carrier(h(x)) within carrier(f(x))). Uses the sharpest delta h
/// satisfies, max ||h(x)-h(y)|| / (d(x,y)+1) <= eps.
/// Throws PreconditionFailed when h is not a push of f or not an eps-PU.
AsdimCertificate theorem_b_pipeline(const PUMap& f, const PUMap& h, double eps, int n);

struct UpperBoundEstimate {
  std::optional<int> n_best;
  std::optional<Cover> witness;
  std::string generator;  // "brick" or "greedy"
  AsdimCertificate certificate;  // for n_best, or the last attempt
};

/// Smallest n <= n_max for which a generated cover passes certify_from_cover(., R, n).
/// Only an upper bound: failure says nothing about the true dimension.
UpperBoundEstimate estimate_upper_bound(const SpacePtr& space, double R, int n_max);

struct ExhaustiveResult {
  std::size_t min_multiplicity = 0;  // 0 when no cover meets the mesh cap
  std::optional<Cover> witness;
  std::uint64_t nodes_examined = 0;
};

/// Minimum multiplicity over all covers with Lebesgue >= R and mesh <= mesh_cap.
/// Every such cover contains one of the form {B(G, R)} for a set partition {G}
/// of X, so enumerating set partitions is exact. Requires |X| <= 12.
ExhaustiveResult exhaustive_min_multiplicity(const SpacePtr& space, double R, double mesh_cap);

std::string_view to_string(WitnessKind kind);

}  // namespace coarsescope
