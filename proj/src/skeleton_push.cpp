#include "coarsescope/skeleton_push.hpp"

#include <algorithm>

namespace coarsescope {

namespace {

std::vector<SimplexPoint::Entry> by_descending_weight(const SimplexPoint& p) {
  auto order = p.entries();
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  return order;
}

}  // namespace

double tail_mass(const SimplexPoint& p, int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "n must be nonnegative");
  const auto order = by_descending_weight(p);
  double tail = 0.0;
  for (std::size_t k = static_cast<std::size_t>(n) + 1; k < order.size(); ++k) tail += order[k].second;
  return tail;
}

SimplexPoint fold_to_skeleton(const SimplexPoint& p, int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "n must be nonnegative");
  const std::size_t keep = static_cast<std::size_t>(n) + 1;
  if (p.support_size() <= keep) return p;
  const auto order = by_descending_weight(p);
  double tail = 0.0;
  for (std::size_t k = keep; k < order.size(); ++k) tail += order[k].second;
  std::vector<SimplexPoint::Entry> kept(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep));
  kept.front().second = kept.front().second + tail;
  return SimplexPoint::from_weights(std::move(kept));
}

PUMap fold_map(const PUMap& f, int n) {
  std::vector<SimplexPoint> values(f.values().size());
  for (PointIndex x : f.domain()) values[x] = fold_to_skeleton(f(x), n);
  return PUMap(f.space_ptr(), f.target(), std::move(values), f.domain());
}

PushResult push_to_skeleton(const PUMap& f, const PointSet& A, double R, int n, double eps) {
  if (n < 0 || !(R >= 0.0) || !(eps > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "push needs n >= 0, R >= 0 and eps > 0");
  }
  if (!A.is_subset_of(f.domain())) {
    throw Error(ErrorCode::InvalidArgument, "A must lie in the domain of f");
  }
  const auto& space = f.space();
  for (PointIndex a : A) {
    if (!in_skeleton(f(a), n)) {
      throw Error(ErrorCode::ANotInSkeleton, "f(" + space.id(a) + ") has " + std::to_string(f(a).support_size()) +
                                                  " vertices, more than n+1");
    }
  }
  const PointSet nbhd = PointSet::from_mask([&] {
    auto mask = neighborhood(space, A, R).mask();
    const auto dom = f.domain().mask();
    for (std::size_t x = 0; x < mask.size(); ++x) mask[x] = mask[x] && dom[x];
    return mask;
  }());
  const auto pre = check_variation(f, R, eps);
  if (!pre.passed) {
    std::string witness;
    if (pre.worst_pair) witness = " at (" + space.id(pre.worst_pair->first) + ", " + space.id(pre.worst_pair->second) + ")";
    throw Error(ErrorCode::PreconditionVariation,
                "f has l1 variation " + std::to_string(pre.max_l1) + " >= eps on pairs within R" + witness);
  }

  PUMap extension = fold_map(f, n);
  PUMap r = extension.restricted(nbhd);
  PushResult result{std::move(r), std::move(extension), nbhd, eps, (8.0 * n + 5.0) * eps, {}, false, true,
                    std::nullopt, true, std::nullopt, 0.0, 2.0 * (2.0 * n + 1.0) * eps, true, std::nullopt};

  for (PointIndex a : A) {
    if (!(result.r(a) == f(a))) {
      result.agreement_on_A = false;
      result.agreement_witness = a;
      break;
    }
  }
  const double tau = tolerance();
  for (PointIndex x : nbhd) {
    if (result.carrier_inclusion && !carrier_within(result.r(x), f(x))) {
      result.carrier_inclusion = false;
      result.carrier_witness = x;
    }
    const double gap = l1_distance(f(x), result.r(x));
    if (gap > result.max_pointwise || !result.pointwise_witness) {
      result.max_pointwise = std::max(result.max_pointwise, gap);
      result.pointwise_witness = x;
    }
  }
  result.pointwise_ok = result.max_pointwise < result.pointwise_bound + tau;
  if (result.pointwise_ok) result.pointwise_witness.reset();
  result.variation = check_variation(result.r, R, result.mu_claimed);
  result.variation_verified = result.variation.passed;
  return result;
}

}  // namespace coarsescope
