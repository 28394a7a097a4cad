#pragma once

#include <functional>
#include <vector>

#include "coarsescope/skeleton_push.hpp"

namespace coarsescope {

/// Parameters R = k, delta = 1/(k S(k)), mu = (8n+5)(R+1)delta together with
/// the three inequalities that make the filler an eps-partition of unity:
///   (1) (1 - (n+1)mu) / ((n+1) 4(n+5)^2/R) >= 1/eps
///   (2) mu < eps
///   (3) 4(n+5)^2/R < eps
struct FillerSchedule {
  int n = 0;
  double eps = 0.0;
  long long k = 0;
  double R = 0.0;
  double S_of_k = 0.0;
  double delta = 0.0;
  double mu = 0.0;
  double h_lipschitz = 0.0;  // 4(n+5)^2/R
  double lebesgue_bound = 0.0;  // left side of (1)
  bool inequality1 = false;
  bool inequality2 = false;
  bool inequality3 = false;

  bool satisfied() const noexcept { return inequality1 && inequality2 && inequality3; }
};

FillerSchedule schedule_at(int n, double eps, long long k, double S_of_k);

/// Smallest integer k >= 1 whose schedule satisfies (1)-(3). mesh_fn returns S(R).
/// Throws ScheduleNotFound naming the inequalities still failing at k_limit.
FillerSchedule find_schedule(int n, double eps, const std::function<double(double)>& mesh_fn,
                             long long k_limit = 1'000'000);

struct AlphaResult {
  std::vector<double> alpha;
  PointSet P;  // B(A,R)
  PointSet C;  // X \ B(A,R)
  PointSet Q;  // B(C,R)
  double lipschitz_hat = 0.0;  // max |alpha(x)-alpha(y)| / d(x,y)
  bool lipschitz_ok = false;   // <= 32/R
  double pq_lebesgue = 0.0;
  bool pq_lebesgue_ok = false;  // Lebesgue of {P, Q} >= R/2
};

/// alpha = dist(., X\P) / (dist(., X\P) + dist(., X\Q)); alpha = 1 when C is empty, 0 when A is.
AlphaResult build_alpha(const SpacePtr& space, const PointSet& A, double R);

struct MergeResult {
  Cover merged;
  /// v(U) for every element of the input cover (index into f's target).
  std::vector<VertexIndex> assignment;
  /// Target vertex of every merged element.
  std::vector<VertexIndex> merged_vertex;
  CoverStats input_stats;
  CoverStats merged_stats;
  bool multiplicity_ok = false;
  bool lebesgue_ok = false;
  bool inclusion_ok = false;
};

/// Assigns each element U the vertex maximizing min_{x in U} f(x)(v) (ties by
/// vertex index) and takes U_v as the union of the elements assigned to v.
/// Throws PreconditionFailed when mesh(U) >= 1/delta and NoAssignableVertex when
/// some element lies in no star preimage.
MergeResult merge_cover_by_assignment(const Cover& U, const PUMap& f, double delta);

struct BetaResult {
  PUMap beta;
  bool support_ok = false;
  std::optional<PointIndex> support_witness;
  double lebesgue = 0.0;
  bool lebesgue_ok = false;
};

/// Barycentric map of the merged cover, indexed by f's target vertices.
BetaResult build_beta(const MergeResult& merge, const PUMap& f, double R);

/// h(x) = alpha(x) r(x) + (1 - alpha(x)) beta(x) in l1 coordinates.
/// r_extended must be total; it is only read where alpha > 0.
PUMap combine_filler(const std::vector<double>& alpha, const PUMap& r_extended, const PUMap& beta);

struct FillerResult {
  PUMap h;
  AlphaResult alpha;
  PUMap beta;
  PushResult push;
  MergeResult merge;
  FillerSchedule schedule;
  double eps_f = 0.0;
  DeltaPUCertificate h_certificate;
  std::vector<Check> checks;

  bool verified() const;
};

/// Builds the filler h of f over A into the n-skeleton and verifies it is an
/// eps-partition of unity. `f_mesh_bound` is the declared mesh bound of f's
/// star preimages; h's star preimages sit inside them.
/// Preconditions (throw PreconditionFailed / ANotInSkeleton): f is a
/// delta-partition of unity, f(A) lies in the n-skeleton, U_R has multiplicity
/// <= n+1, Lebesgue >= R and mesh <= S(R) < 1/delta.
FillerResult build_filler(const PUMap& f, const PointSet& A, const FillerSchedule& schedule, const Cover& U_R,
                          double f_mesh_bound);

}  // namespace coarsescope
