#include "coarsescope/filler.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace coarsescope {

namespace {

std::string describe(double value) {
  std::ostringstream os;
  os << value;
  return os.str();
}

/// Pairwise check of ||a(x) p(x) - a(y) p(y)||_1 <= lambda d + C.
Check scaled_lipschitz_check(std::string name, const FiniteMetricSpace& space, const std::vector<double>& scale,
                             const PUMap& map, double lambda, double C) {
  Check check{std::move(name), true, -kInfinity, 0.0, std::nullopt, std::nullopt, true};
  const std::size_t n = space.size();
  for (PointIndex x = 0; x < n; ++x) {
    for (PointIndex y = x + 1; y < n; ++y) {
      const double l1 = scaled_l1_distance(scale[x], map(x), scale[y], map(y));
      const double excess = l1 - lambda * space.distance(x, y) - C;
      if (excess > check.measured) {
        check.measured = excess;
        check.pair = PointPair{x, y};
      }
    }
  }
  if (n < 2) check.measured = 0.0;
  check.passed = check.measured <= tolerance();
  if (check.passed) check.pair.reset();
  return check;
}

}  // namespace

FillerSchedule schedule_at(int n, double eps, long long k, double S_of_k) {
  FillerSchedule s;
  s.n = n;
  s.eps = eps;
  s.k = k;
  s.R = static_cast<double>(k);
  s.S_of_k = S_of_k;
  s.delta = 1.0 / (s.R * S_of_k);
  s.mu = (8.0 * n + 5.0) * (s.R + 1.0) * s.delta;
  s.h_lipschitz = 4.0 * (n + 5.0) * (n + 5.0) / s.R;
  s.lebesgue_bound = (1.0 - (n + 1.0) * s.mu) / ((n + 1.0) * s.h_lipschitz);
  s.inequality1 = s.lebesgue_bound >= 1.0 / eps;
  s.inequality2 = s.mu < eps;
  s.inequality3 = s.h_lipschitz < eps;
  return s;
}

FillerSchedule find_schedule(int n, double eps, const std::function<double(double)>& mesh_fn, long long k_limit) {
  if (n < 0 || !(eps > 0.0) || k_limit < 1) {
    throw Error(ErrorCode::InvalidArgument, "find_schedule needs n >= 0, eps > 0 and k_limit >= 1");
  }
  FillerSchedule last;
  for (long long k = 1; k <= k_limit; ++k) {
    last = schedule_at(n, eps, k, mesh_fn(static_cast<double>(k)));
    if (last.satisfied()) return last;
  }
  std::string blocking;
  if (!last.inequality1) blocking += " (1) Lebesgue";
  if (!last.inequality2) blocking += " (2) mu < eps";
  if (!last.inequality3) blocking += " (3) Lipschitz";
  throw Error(ErrorCode::ScheduleNotFound, "no k <= " + std::to_string(k_limit) + " satisfies all inequalities;" +
                                               " still failing at k_limit:" + blocking);
}

AlphaResult build_alpha(const SpacePtr& space, const PointSet& A, double R) {
  if (!(R > 0.0)) throw Error(ErrorCode::InvalidArgument, "build_alpha needs R > 0");
  const std::size_t n = space->size();
  AlphaResult result;
  result.P = neighborhood(*space, A, R);
  result.C = result.P.complement();
  result.Q = neighborhood(*space, result.C, R);
  const PointSet outside_P = result.C;
  const PointSet outside_Q = result.Q.complement();
  result.alpha.assign(n, 0.0);
  for (PointIndex x = 0; x < n; ++x) {
    if (result.C.empty()) {
      result.alpha[x] = 1.0;
    } else if (A.empty()) {
      result.alpha[x] = 0.0;
    } else {
      const double to_p = distance_to_set(*space, x, outside_P);
      const double to_q = distance_to_set(*space, x, outside_Q);
      result.alpha[x] = std::isinf(to_q) ? 0.0 : to_p / (to_p + to_q);
    }
  }
  for (PointIndex x = 0; x < n; ++x) {
    for (PointIndex y = x + 1; y < n; ++y) {
      result.lipschitz_hat =
          std::max(result.lipschitz_hat, std::abs(result.alpha[x] - result.alpha[y]) / space->distance(x, y));
    }
  }
  result.lipschitz_ok = result.lipschitz_hat <= 32.0 / R + tolerance();
  std::vector<std::string> labels;
  std::vector<PointSet> elements;
  if (!result.P.empty()) {
    labels.emplace_back("P");
    elements.push_back(result.P);
  }
  if (!result.Q.empty()) {
    labels.emplace_back("Q");
    elements.push_back(result.Q);
  }
  if (n > 0) {
    result.pq_lebesgue = compute_stats(Cover(space, std::move(labels), std::move(elements), "alpha")).lebesgue;
  } else {
    result.pq_lebesgue = kInfinity;
  }
  result.pq_lebesgue_ok = result.pq_lebesgue >= R / 2.0 - tolerance();
  return result;
}

MergeResult merge_cover_by_assignment(const Cover& U, const PUMap& f, double delta) {
  if (!f.is_total()) throw Error(ErrorCode::InvalidArgument, "merge needs a total map");
  const auto input_stats = compute_stats(U);
  if (!(input_stats.mesh < 1.0 / delta)) {
    throw Error(ErrorCode::PreconditionFailed,
                "cover mesh " + describe(input_stats.mesh) + " is not below 1/delta = " + describe(1.0 / delta));
  }
  std::vector<VertexIndex> assignment;
  assignment.reserve(U.size());
  for (std::size_t s = 0; s < U.size(); ++s) {
    const auto& members = U.element(s).members();
    // Candidates: vertices in every support over U, scored by their minimum weight.
    std::vector<SimplexPoint::Entry> candidates = f(members.front()).entries();
    for (std::size_t k = 1; k < members.size() && !candidates.empty(); ++k) {
      std::vector<SimplexPoint::Entry> next;
      for (const auto& [v, w] : candidates) {
        const double wx = f(members[k]).weight(v);
        if (wx > 0.0) next.emplace_back(v, std::min(w, wx));
      }
      candidates = std::move(next);
    }
    if (candidates.empty()) {
      throw Error(ErrorCode::NoAssignableVertex,
                  "element '" + U.label(s) + "' lies in no star preimage of f");
    }
    auto best = candidates.front();
    for (const auto& c : candidates) {
      if (c.second > best.second) best = c;
    }
    assignment.push_back(best.first);
  }
  const std::size_t nv = f.target().vertex_count();
  std::vector<std::vector<PointIndex>> unions(nv);
  for (std::size_t s = 0; s < U.size(); ++s) {
    auto& u = unions[assignment[s]];
    u.insert(u.end(), U.element(s).begin(), U.element(s).end());
  }
  std::vector<std::string> labels;
  std::vector<PointSet> elements;
  std::vector<VertexIndex> merged_vertex;
  for (VertexIndex v = 0; v < nv; ++v) {
    if (unions[v].empty()) continue;
    labels.push_back(f.target().label(v));
    elements.emplace_back(f.space().size(), std::move(unions[v]));
    merged_vertex.push_back(v);
  }
  MergeResult result{Cover(U.space_ptr(), std::move(labels), std::move(elements), "merged"),
                     std::move(assignment), std::move(merged_vertex), input_stats, {}, false, false, false};
  result.merged_stats = compute_stats(result.merged);
  result.multiplicity_ok = result.merged_stats.multiplicity <= input_stats.multiplicity;
  result.lebesgue_ok = result.merged_stats.lebesgue >= input_stats.lebesgue - tolerance();
  result.inclusion_ok = true;
  for (std::size_t s = 0; s < result.merged.size() && result.inclusion_ok; ++s) {
    for (PointIndex x : result.merged.element(s)) {
      if (!in_star(f(x), result.merged_vertex[s])) {
        result.inclusion_ok = false;
        break;
      }
    }
  }
  return result;
}

BetaResult build_beta(const MergeResult& merge, const PUMap& f, double R) {
  const PUMap raw = barycentric_map(merge.merged);
  const std::size_t n = f.space().size();
  std::vector<SimplexPoint> values;
  values.reserve(n);
  for (PointIndex x = 0; x < n; ++x) {
    std::vector<SimplexPoint::Entry> entries;
    for (const auto& [s, w] : raw(x).entries()) entries.emplace_back(merge.merged_vertex[s], w);
    values.push_back(SimplexPoint::from_weights(std::move(entries)));
  }
  BetaResult result{PUMap(f.space_ptr(), f.target(), std::move(values)), true, std::nullopt, 0.0, false};
  for (PointIndex x = 0; x < n; ++x) {
    if (!carrier_within(result.beta(x), f(x))) {
      result.support_ok = false;
      result.support_witness = x;
      break;
    }
  }
  result.lebesgue = map_lebesgue(result.beta);
  result.lebesgue_ok = result.lebesgue >= R - tolerance();
  return result;
}

PUMap combine_filler(const std::vector<double>& alpha, const PUMap& r_extended, const PUMap& beta) {
  const std::size_t n = beta.space().size();
  if (!r_extended.is_total() || !beta.is_total() || alpha.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "combine_filler needs total maps and alpha on every point");
  }
  std::vector<SimplexPoint> values;
  values.reserve(n);
  for (PointIndex x = 0; x < n; ++x) {
    const double a = alpha[x];
    if (a == 1.0) {
      values.push_back(r_extended(x));
    } else if (a == 0.0) {
      values.push_back(beta(x));
    } else {
      std::vector<SimplexPoint::Entry> entries;
      const auto& re = r_extended(x).entries();
      const auto& be = beta(x).entries();
      std::size_t i = 0;
      std::size_t j = 0;
      while (i < re.size() || j < be.size()) {
        if (j == be.size() || (i < re.size() && re[i].first < be[j].first)) {
          entries.emplace_back(re[i].first, a * re[i].second);
          ++i;
        } else if (i == re.size() || be[j].first < re[i].first) {
          entries.emplace_back(be[j].first, (1.0 - a) * be[j].second);
          ++j;
        } else {
          entries.emplace_back(re[i].first, a * re[i].second + (1.0 - a) * be[j].second);
          ++i;
          ++j;
        }
      }
      values.push_back(SimplexPoint::from_weights(std::move(entries)));
    }
  }
  return PUMap(beta.space_ptr(), beta.target(), std::move(values));
}

bool FillerResult::verified() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed || !c.required; });
}

FillerResult build_filler(const PUMap& f, const PointSet& A, const FillerSchedule& schedule, const Cover& U_R,
                          double f_mesh_bound) {
  const double tau = tolerance();
  const int n = schedule.n;
  const double R = schedule.R;
  const double eps = schedule.eps;
  const double delta = schedule.delta;
  if (!f.is_total()) throw Error(ErrorCode::PreconditionFailed, "f must be total");
  if (U_R.space_ptr() != f.space_ptr() && U_R.space().size() != f.space().size()) {
    throw Error(ErrorCode::PreconditionFailed, "U_R and f live on different spaces");
  }
  const auto f_cert = check_delta_pu(f, delta, f_mesh_bound);
  if (!f_cert.verdict) {
    throw Error(ErrorCode::PreconditionFailed,
                "f is not a delta-partition of unity for delta = " + describe(delta) + " (lipschitz " +
                    (f_cert.lipschitz_ok ? "ok" : "fails") + ", lebesgue " + describe(f_cert.lebesgue) + ", mesh " +
                    describe(f_cert.star_mesh) + ")");
  }
  for (PointIndex a : A) {
    if (!in_skeleton(f(a), n)) {
      throw Error(ErrorCode::ANotInSkeleton, "f(" + f.space().id(a) + ") is not in the n-skeleton");
    }
  }
  const auto u_stats = compute_stats(U_R);
  if (u_stats.multiplicity > static_cast<std::size_t>(n) + 1) {
    throw Error(ErrorCode::PreconditionFailed, "U_R has multiplicity " + std::to_string(u_stats.multiplicity));
  }
  if (u_stats.lebesgue < R - tau) {
    throw Error(ErrorCode::PreconditionFailed, "U_R has Lebesgue number " + describe(u_stats.lebesgue) + " < R");
  }
  if (u_stats.mesh > schedule.S_of_k + tau || !(schedule.S_of_k < 1.0 / delta)) {
    throw Error(ErrorCode::PreconditionFailed, "U_R mesh " + describe(u_stats.mesh) + " against S(R) = " +
                                                   describe(schedule.S_of_k) + " and 1/delta = " + describe(1.0 / delta));
  }

  // Variation is strict, so take the next double above the observed maximum.
  const double eps_f =
      std::max(std::nextafter(check_variation(f, R, 2.0 + tau).max_l1, kInfinity), tau);
  PushResult push = push_to_skeleton(f, A, R, n, eps_f);
  AlphaResult alpha = build_alpha(f.space_ptr(), A, R);
  MergeResult merge = merge_cover_by_assignment(U_R, f, delta);
  BetaResult beta = build_beta(merge, f, R);
  PUMap h = combine_filler(alpha.alpha, push.extension, beta.beta);
  const auto h_cert = check_delta_pu(h, eps, f_mesh_bound);

  std::vector<Check> checks;
  auto add = [&](std::string name, bool passed, double measured, double bound, std::optional<PointIndex> point = {},
                 std::optional<PointPair> pair = {}, bool required = true) {
    checks.push_back({std::move(name), passed, measured, bound, passed ? std::nullopt : point,
                      passed ? std::nullopt : pair, required});
  };

  {
    std::optional<PointIndex> witness;
    for (PointIndex a : A) {
      if (!(h(a) == f(a))) {
        witness = a;
        break;
      }
    }
    add("h_agrees_with_f_on_A", !witness, 0.0, 0.0, witness);
  }
  {
    std::optional<PointIndex> witness;
    std::optional<PointIndex> skeleton_witness;
    for (PointIndex x = 0; x < f.space().size(); ++x) {
      if (!witness && !carrier_within(h(x), f(x))) witness = x;
      if (!skeleton_witness && !in_skeleton(h(x), n)) skeleton_witness = x;
    }
    add("h_carrier_within_f", !witness, 0.0, 0.0, witness);
    // h is meant to land in K^(n), but the convex combination only
    // guarantees it where alpha is 0 or 1, so this is reported, not required.
    add("h_in_n_skeleton", !skeleton_witness, 0.0, static_cast<double>(n), skeleton_witness, std::nullopt, false);
  }
  add("h_eps_lipschitz", h_cert.lipschitz_ok, h_cert.lipschitz.max_excess, 0.0, std::nullopt,
      h_cert.lipschitz.worst_pair);
  add("h_lebesgue_at_least_1_over_eps", h_cert.lebesgue_ok, h_cert.lebesgue, 1.0 / eps, h_cert.lebesgue_witness);
  add("h_star_mesh_bounded", h_cert.uniformly_bounded_ok, h_cert.star_mesh, f_mesh_bound);
  add("h_eps_partition_of_unity", h_cert.verdict, h_cert.verdict ? 1.0 : 0.0, 1.0);

  add("push_agreement_on_A", push.agreement_on_A, 0.0, 0.0, push.agreement_witness);
  add("push_carrier_inclusion", push.carrier_inclusion, 0.0, 0.0, push.carrier_witness);
  add("push_pointwise_estimate", push.pointwise_ok, push.max_pointwise, push.pointwise_bound, push.pointwise_witness);
  add("push_variation", push.variation_verified, push.variation.max_l1, push.mu_claimed, std::nullopt,
      push.variation.worst_pair);
  add("push_variation_within_mu", push.mu_claimed <= schedule.mu + tau, push.mu_claimed, schedule.mu);

  add("alpha_lipschitz_32_over_R", alpha.lipschitz_ok, alpha.lipschitz_hat, 32.0 / R);
  add("alpha_cover_lebesgue_R_over_2", alpha.pq_lebesgue_ok, alpha.pq_lebesgue, R / 2.0);

  add("merge_multiplicity", merge.multiplicity_ok, static_cast<double>(merge.merged_stats.multiplicity),
      static_cast<double>(merge.input_stats.multiplicity));
  add("merge_lebesgue", merge.lebesgue_ok, merge.merged_stats.lebesgue, merge.input_stats.lebesgue);
  add("merge_inside_star_preimages", merge.inclusion_ok, 0.0, 0.0);
  add("beta_support_within_f", beta.support_ok, 0.0, 0.0, beta.support_witness);
  add("beta_lebesgue_at_least_R", beta.lebesgue_ok, beta.lebesgue, R);

  const auto& space = f.space();
  std::vector<double> one_minus(alpha.alpha.size());
  for (std::size_t x = 0; x < one_minus.size(); ++x) one_minus[x] = 1.0 - alpha.alpha[x];
  checks.push_back(scaled_lipschitz_check("alpha_r_lipschitz_34_over_R_mu", space, alpha.alpha, push.extension,
                                          34.0 / R, schedule.mu));
  checks.back().bound = 34.0 / R;
  checks.push_back(scaled_lipschitz_check("one_minus_alpha_beta_lipschitz", space, one_minus, beta.beta,
                                          4.0 * (n + 3.0) * (n + 3.0) / R, 0.0));
  checks.back().bound = 4.0 * (n + 3.0) * (n + 3.0) / R;
  const std::vector<double> ones(alpha.alpha.size(), 1.0);
  checks.push_back(
      scaled_lipschitz_check("h_lipschitz_schedule", space, ones, h, schedule.h_lipschitz, schedule.mu));
  checks.back().bound = schedule.h_lipschitz;

  return {std::move(h),     std::move(alpha), std::move(beta.beta), std::move(push), std::move(merge),
          schedule,         eps_f,            h_cert,                std::move(checks)};
}

}  // namespace coarsescope
