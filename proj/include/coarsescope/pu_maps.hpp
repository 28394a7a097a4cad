#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "coarsescope/covers.hpp"
#include "coarsescope/metric_space.hpp"
#include "coarsescope/simplicial.hpp"

namespace coarsescope {

/// A map f: X -> K into a simplicial complex, i.e. a point-finite partition
/// of unity {f_v}. May be partial: only points of `domain` carry values.
class PUMap {
 public:
  /// Total map. Throws NotInTarget when some carrier is not a simplex of `target`.
  PUMap(SpacePtr space, Complex target, std::vector<SimplexPoint> values);
  /// Partial map; `values` is indexed by point and only read on `domain`.
  PUMap(SpacePtr space, Complex target, std::vector<SimplexPoint> values, PointSet domain);

  const FiniteMetricSpace& space() const noexcept { return *space_; }
  const SpacePtr& space_ptr() const noexcept { return space_; }
  const Complex& target() const noexcept { return target_; }
  const PointSet& domain() const noexcept { return domain_; }
  bool is_total() const noexcept { return domain_.size() == space_->size(); }

  const SimplexPoint& operator()(PointIndex x) const { return values_.at(x); }
  const std::vector<SimplexPoint>& values() const noexcept { return values_; }

  PUMap restricted(const PointSet& domain) const;

 private:
  SpacePtr space_;
  Complex target_;
  std::vector<SimplexPoint> values_;
  PointSet domain_;
};

struct LipschitzReport {
  double lambda = 0.0;
  double C = 0.0;
  bool passed = true;
  /// Smallest lambda for which the map is (lambda, C)-Lipschitz.
  double lambda_hat = 0.0;
  /// Largest ||f(x)-f(y)|| - lambda d(x,y) - C over pairs, and where it occurs.
  double max_excess = -kInfinity;
  std::optional<PointPair> worst_pair;
};

struct VariationReport {
  double R = 0.0;
  double eps = 0.0;
  bool passed = true;
  /// Largest ||f(x)-f(y)|| over pairs with d(x,y) <= R (0 when there are none).
  double max_l1 = 0.0;
  std::optional<PointPair> worst_pair;
};

struct DeltaPUCertificate {
  double delta = 0.0;
  double bound_M = 0.0;
  LipschitzReport lipschitz;
  bool lipschitz_ok = false;
  double lebesgue = 0.0;
  bool lebesgue_ok = false;
  std::optional<PointIndex> lebesgue_witness;
  double star_mesh = 0.0;
  bool uniformly_bounded_ok = false;
  bool verdict = false;
};

/// Checks ||f(x)-f(y)||_1 <= lambda d(x,y) + C + tau over all domain pairs.
LipschitzReport check_lipschitz(const PUMap& f, double lambda, double C);

/// Checks d(x,y) <= R  =>  ||f(x)-f(y)||_1 < eps + tau over all domain pairs.
VariationReport check_variation(const PUMap& f, double R, double eps);

/// Smallest delta with f (delta, delta)-Lipschitz: max ||f(x)-f(y)|| / (d(x,y) + 1).
double measured_delta(const PUMap& f);

/// (R, eps) variation implies ((2 - eps)/R, eps)-Lipschitz. Throws EpsOutOfRange.
std::pair<double, double> variation_to_lipschitz(double R, double eps);

/// {f^{-1}(st(v))}: one element per target vertex with nonempty preimage.
Cover star_preimage_cover(const PUMap& f);

/// Statistics of the star-preimage cover computed inside the map's domain
/// (for total maps this equals compute_stats(star_preimage_cover(f))).
/// Per-point vectors are indexed by point and left at 0 outside the domain.
CoverStats star_preimage_stats(const PUMap& f);

/// Lebesgue number of the star-preimage cover.
double map_lebesgue(const PUMap& f);

/// (1 - (n+1)C) / ((n+1) lambda). Throws BoundDegenerate when (n+1)C >= 1.
double lebesgue_lower_bound(double lambda, double C, int n);

/// phi_s(x) = f_s(x) / sum_t f_t(x), a map into nerve(cover). When some f_s(x)
/// is +inf the weight is spread uniformly over those indices.
PUMap barycentric_map(const Cover& cover);

struct BarycentricBoundReport {
  double bound = 0.0;  // 4 m(U)^2 / L(U)
  std::size_t multiplicity = 0;
  double lebesgue = 0.0;
  LipschitzReport lipschitz;
  bool passed = false;
};

/// Verifies the barycentric map of `cover` is 4m^2/L-Lipschitz. Throws ZeroLebesgue.
BarycentricBoundReport check_barycentric_bound(const Cover& cover);

/// (delta, delta)-Lipschitz, star-preimage Lebesgue >= 1/delta and star mesh <= bound_M.
DeltaPUCertificate check_delta_pu(const PUMap& f, double delta, double bound_M);

struct PullbackResult {
  PUMap h;
  double eps_f = 0.0;  // f is (eps_f, eps_f)-Lipschitz (measured)
  VariationReport variation;  // h against (R, S eps_f + eps_f)
};

/// h = f o g for a point map g: X -> Y with verified distortion (R, S):
/// d_X(x,y) <= R implies d_Y(g x, g y) <= S. Throws DistortionViolated.
PullbackResult pullback_partition(const SpacePtr& domain_space, const std::vector<PointIndex>& g,
                                  double R, double S, const PUMap& f);

}  // namespace coarsescope
