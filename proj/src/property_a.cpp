#include "coarsescope/property_a.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace coarsescope {

namespace {

std::string pair_text(const FiniteMetricSpace& space, PointIndex x, PointIndex y) {
  return "(" + space.id(x) + ", " + space.id(y) + ")";
}

std::string number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

bool all_required_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed || !c.required; });
}

}  // namespace

TaggedSet make_tagged_set(std::vector<TaggedPoint> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return elements;
}

SetCounts count_overlap(const TaggedSet& a, const TaggedSet& b) {
  SetCounts counts;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++counts.intersection;
      ++i;
      ++j;
    }
  }
  counts.symmetric_difference = a.size() + b.size() - 2 * counts.intersection;
  return counts;
}

double symdiff_ratio(const TaggedSet& a, const TaggedSet& b) {
  const auto c = count_overlap(a, b);
  if (c.intersection == 0) return kInfinity;
  return static_cast<double>(c.symmetric_difference) / static_cast<double>(c.intersection);
}

SetFamily::SetFamily(SpacePtr space, double S, std::vector<TaggedSet> sets)
    : space_(std::move(space)), S_(S), sets_(std::move(sets)) {
  if (!space_ || sets_.size() != space_->size()) {
    throw Error(ErrorCode::InvalidArgument, "a set family needs one set per point");
  }
  for (PointIndex x = 0; x < sets_.size(); ++x) {
    sets_[x] = make_tagged_set(std::move(sets_[x]));
    if (sets_[x].empty()) {
      throw Error(ErrorCode::InvalidArgument, "A_" + space_->id(x) + " is empty");
    }
    for (const auto& t : sets_[x]) {
      if (t.point >= space_->size() || t.copy < 1) {
        throw Error(ErrorCode::ForeignPoint, "A_" + space_->id(x) + " has an element outside X x N");
      }
      if (!(space_->distance(x, t.point) < S_)) {
        throw Error(ErrorCode::ForeignPoint,
                    "A_" + space_->id(x) + " contains " + space_->id(t.point) + ", not inside B(x, S)");
      }
    }
  }
}

double symdiff_ratio(const SetFamily& family, PointIndex x, PointIndex y) {
  return symdiff_ratio(family.set(x), family.set(y));
}

WorstRatio worst_symdiff_ratio(const SetFamily& family, double R) {
  WorstRatio worst;
  const auto& space = family.space();
  for (PointIndex x = 0; x < space.size(); ++x) {
    for (PointIndex y = x + 1; y < space.size(); ++y) {
      if (space.distance(x, y) > R) continue;
      const double ratio = symdiff_ratio(family, x, y);
      if (!worst.pair || ratio > worst.ratio) {
        worst.ratio = ratio;
        worst.pair = PointPair{x, y};
      }
    }
  }
  return worst;
}

SetFamily ball_family(const SpacePtr& space, double S, std::uint32_t depth) {
  if (!(S > 0.0) || depth < 1) {
    throw Error(ErrorCode::InvalidArgument, "ball_family needs S > 0 and depth >= 1");
  }
  std::vector<TaggedSet> sets;
  sets.reserve(space->size());
  for (PointIndex x = 0; x < space->size(); ++x) {
    TaggedSet a;
    for (PointIndex y : ball(*space, x, S)) {
      for (std::uint32_t i = 1; i <= depth; ++i) a.push_back({y, i});
    }
    sets.push_back(std::move(a));
  }
  return SetFamily(space, S, std::move(sets));
}

bool CxResult::verified() const { return all_required_pass(checks); }
bool CxPartitionResult::verified() const { return all_required_pass(checks); }

CxResult build_cx(const SetFamily& family, const PropertyAInput& input) {
  const auto& space = family.space();
  const double delta = input.delta;
  const double M = static_cast<double>(input.M);
  const double S = family.S();
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::ParameterConstraintFailed, "delta must lie in (0, 1)");
  }
  if (input.M < 2) {
    throw Error(ErrorCode::ParameterConstraintFailed, "M must be at least 2");
  }
  if (!(input.R > (2.0 - delta) / delta + M)) {
    throw Error(ErrorCode::ParameterConstraintFailed,
                "need R > (2-delta)/delta + M = " + number((2.0 - delta) / delta + M));
  }
  if (!(S > M + 1.0 / delta)) {
    throw Error(ErrorCode::ParameterConstraintFailed, "need S > M + 1/delta = " + number(M + 1.0 / delta));
  }
  const std::size_t n = space.size();
  std::vector<PointSet> small_balls;
  small_balls.reserve(n);
  for (PointIndex x = 0; x < n; ++x) {
    small_balls.push_back(ball(space, x, 1.0 / delta));
    if (small_balls.back().size() > input.M) {
      throw Error(ErrorCode::BallTooBig, "B(" + space.id(x) + ", 1/delta) has " +
                                             std::to_string(small_balls.back().size()) + " points, more than M");
    }
  }
  CxResult result;
  result.precondition = worst_symdiff_ratio(family, input.R);
  const double ratio_bound = delta / (8.0 * M);
  if (result.precondition.pair && !(result.precondition.ratio < ratio_bound)) {
    const auto [x, y] = *result.precondition.pair;
    throw Error(ErrorCode::RatioPreconditionFailed,
                "ratio " + number(result.precondition.ratio) + " >= delta/(8M) = " + number(ratio_bound) + " at " +
                    pair_text(space, x, y));
  }

  const double threshold = 8.0 * M / delta;
  const auto components = r_components(space, input.R);
  std::vector<std::size_t> component_of(n);
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (PointIndex x : components[c]) component_of[x] = c;
  }
  result.large.assign(n, 0);
  result.C.resize(n);
  for (PointIndex x = 0; x < n; ++x) {
    const TaggedSet& a = family.set(x);
    if (static_cast<double>(a.size()) >= threshold) {
      result.large[x] = 1;
      TaggedSet c = a;
      for (PointIndex y : small_balls[x]) c.push_back({y, 1});
      result.C[x] = make_tagged_set(std::move(c));
    } else {
      TaggedSet c;
      for (PointIndex y : components[component_of[x]]) c.push_back({y, 1});
      result.C[x] = std::move(c);
    }
  }

  Check constant{"small_sets_constant_within_R", true, 0.0, 0.0, std::nullopt, std::nullopt, true};
  Check regime{"regime_agrees_within_R", true, 0.0, 0.0, std::nullopt, std::nullopt, true};
  Check large_ratio{"large_symdiff_below_delta_over_3", true, 0.0, delta / 3.0, std::nullopt, std::nullopt, true};
  for (PointIndex x = 0; x < n; ++x) {
    for (PointIndex y = x + 1; y < n; ++y) {
      if (space.distance(x, y) > input.R) continue;
      if (result.large[x] != result.large[y] && regime.passed) {
        regime.passed = false;
        regime.pair = PointPair{x, y};
      }
      if ((!result.large[x] || !result.large[y]) && family.set(x) != family.set(y) && constant.passed) {
        constant.passed = false;
        constant.pair = PointPair{x, y};
      }
      if (result.large[x] && result.large[y]) {
        const auto counts = count_overlap(result.C[x], result.C[y]);
        const double denom = static_cast<double>(std::min(result.C[x].size(), result.C[y].size()));
        const double ratio = static_cast<double>(counts.symmetric_difference) / denom;
        if (ratio > large_ratio.measured || !large_ratio.pair) {
          large_ratio.measured = std::max(large_ratio.measured, ratio);
          large_ratio.pair = PointPair{x, y};
        }
      }
    }
  }
  large_ratio.passed = large_ratio.measured < delta / 3.0;
  if (large_ratio.passed) large_ratio.pair.reset();

  Check within{"small_components_inside_B_x_2S", true, 0.0, 2.0 * S, std::nullopt, std::nullopt, true};
  for (PointIndex x = 0; x < n && within.passed; ++x) {
    if (result.large[x]) continue;
    for (PointIndex y : components[component_of[x]]) {
      const double d = space.distance(x, y);
      within.measured = std::max(within.measured, d);
      if (!(d < 2.0 * S)) {
        within.passed = false;
        within.pair = PointPair{x, y};
        break;
      }
    }
  }
  result.checks = {constant, regime, within, large_ratio};
  return result;
}

CxPartitionResult cx_partition(const std::vector<TaggedSet>& C, const SpacePtr& space, const PropertyAInput& input,
                               double S) {
  const std::size_t n = space->size();
  if (C.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "need one C_x per point");
  }
  // Vertex set is X itself; vertex indices follow the sorted point ids.
  std::vector<PointIndex> by_id(n);
  std::iota(by_id.begin(), by_id.end(), PointIndex{0});
  std::sort(by_id.begin(), by_id.end(), [&](PointIndex a, PointIndex b) { return space->id(a) < space->id(b); });
  std::vector<VertexIndex> vertex_of(n);
  std::vector<std::string> labels(n);
  for (std::size_t k = 0; k < n; ++k) {
    vertex_of[by_id[k]] = k;
    labels[k] = space->id(by_id[k]);
  }

  std::vector<SimplexPoint> values;
  values.reserve(n);
  for (PointIndex x = 0; x < n; ++x) {
    if (C[x].empty()) {
      throw Error(ErrorCode::EmptyCx, "C_" + space->id(x) + " is empty");
    }
    std::vector<SimplexPoint::Entry> entries;
    const double size = static_cast<double>(C[x].size());
    for (std::size_t k = 0; k < C[x].size();) {
      const PointIndex z = C[x][k].point;
      if (z >= n) {
        throw Error(ErrorCode::ForeignPoint, "C_" + space->id(x) + " names a point outside the space");
      }
      std::size_t count = 0;
      while (k < C[x].size() && C[x][k].point == z) {
        ++count;
        ++k;
      }
      entries.emplace_back(vertex_of[z], static_cast<double>(count) / size);
    }
    values.push_back(SimplexPoint::from_weights(std::move(entries)));
  }
  CxPartitionResult result{PUMap(space, Complex::full(std::move(labels)), std::move(values)), {}};
  const PUMap& f = result.f;
  const double tau = tolerance();
  const double delta = input.delta;

  Check weighted{"weighted_l1_at_most_symdiff", true, -kInfinity, 0.0, std::nullopt, std::nullopt, true};
  Check ratio{"size_ratio_minus_one_at_most_delta_over_3", true, 0.0, delta / 3.0, std::nullopt, std::nullopt, true};
  Check final_link{"l1_below_delta", true, 0.0, delta, std::nullopt, std::nullopt, true};
  for (PointIndex x = 0; x < n; ++x) {
    for (PointIndex y = x + 1; y < n; ++y) {
      if (space->distance(x, y) > input.R) continue;
      const double cx = static_cast<double>(C[x].size());
      const double cy = static_cast<double>(C[y].size());
      const auto counts = count_overlap(C[x], C[y]);
      const double excess =
          scaled_l1_distance(cx, f(x), cy, f(y)) - static_cast<double>(counts.symmetric_difference);
      if (excess > weighted.measured) {
        weighted.measured = excess;
        weighted.pair = PointPair{x, y};
      }
      const double r = std::max(cx, cy) / std::min(cx, cy) - 1.0;
      if (r > ratio.measured || !ratio.pair) {
        ratio.measured = std::max(ratio.measured, r);
        ratio.pair = PointPair{x, y};
      }
      const double l1 = l1_distance(f(x), f(y));
      if (l1 > final_link.measured || !final_link.pair) {
        final_link.measured = std::max(final_link.measured, l1);
        final_link.pair = PointPair{x, y};
      }
    }
  }
  if (weighted.measured == -kInfinity) weighted.measured = 0.0;
  weighted.passed = weighted.measured <= tau;
  ratio.passed = ratio.measured <= delta / 3.0 + tau;
  final_link.passed = final_link.measured < delta + tau;
  for (Check* c : {&weighted, &ratio, &final_link}) {
    if (c->passed) c->pair.reset();
  }

  // Star preimage of vertex y: points x whose C_x meets {y} x N.
  Check inner{"ball_1_over_delta_inside_star", true, 0.0, 1.0 / delta, std::nullopt, std::nullopt, true};
  Check outer{"star_inside_ball_2S", true, 0.0, 2.0 * S, std::nullopt, std::nullopt, true};
  for (PointIndex y = 0; y < n; ++y) {
    const VertexIndex v = vertex_of[y];
    for (PointIndex x = 0; x < n; ++x) {
      const bool in_st = in_star(f(x), v);
      const double d = space->distance(x, y);
      if (in_st) outer.measured = std::max(outer.measured, d);
      if (d < 1.0 / delta && !in_st && inner.passed) {
        inner.passed = false;
        inner.pair = PointPair{y, x};
      }
      if (in_st && !(d < 2.0 * S) && outer.passed) {
        outer.passed = false;
        outer.pair = PointPair{y, x};
      }
    }
  }
  result.checks = {weighted, ratio, final_link, inner, outer};
  return result;
}

PropertyACertificate property_a_to_pu(const PUMap& phi, double R, double eps, double M_support,
                                      std::optional<double> delta) {
  if (!(R > 0.0)) throw Error(ErrorCode::InvalidArgument, "R must be positive");
  if (!phi.is_total()) {
    throw Error(ErrorCode::NotPartition, "the family must be defined at every point");
  }
  const auto& space = phi.space();
  const double tau = tolerance();
  for (PointIndex x = 0; x < space.size(); ++x) {
    double sum = 0.0;
    for (const auto& [v, w] : phi(x).entries()) sum += w;
    if (std::abs(sum - 1.0) > tau) {
      throw Error(ErrorCode::NotPartition, "weights at " + space.id(x) + " sum to " + number(sum));
    }
  }
  PropertyACertificate cert;
  const auto stats = star_preimage_stats(phi);
  cert.support_diameter = stats.mesh;
  if (stats.mesh > M_support + tau) {
    throw Error(ErrorCode::SupportTooBig,
                "a support has diameter " + number(stats.mesh) + " > M = " + number(M_support));
  }
  cert.variation = check_variation(phi, R, eps);
  if (!cert.variation.passed) {
    const auto [x, y] = *cert.variation.worst_pair;
    throw Error(ErrorCode::VariationFailed,
                "l1 variation " + number(cert.variation.max_l1) + " >= eps at " + pair_text(space, x, y));
  }
  if (eps <= 2.0) {
    const auto [lambda, C] = variation_to_lipschitz(R, eps);
    cert.lipschitz_from_variation_ok = check_lipschitz(phi, lambda, C).passed;
  }
  cert.pu = check_delta_pu(phi, delta.value_or(2.0 / R), M_support);
  return cert;
}

PropertyAData pu_to_property_a(const PUMap& f, double R, double eps) {
  if (!(R >= 0.0) || !(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "need R >= 0 and eps > 0");
  PropertyAData data;
  data.delta = eps / (R + 1.0);
  data.lipschitz = check_lipschitz(f, data.delta, data.delta);
  data.max_variation = check_variation(f, R, eps).max_l1;
  data.variation_ok = data.max_variation <= eps + tolerance();
  data.support_diameter = star_preimage_stats(f).mesh;
  data.verdict = data.lipschitz.passed && data.variation_ok;
  return data;
}

}  // namespace coarsescope
