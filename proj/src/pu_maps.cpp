#include "coarsescope/pu_maps.hpp"

#include <algorithm>
#include <cmath>

namespace coarsescope {

namespace {

void check_carriers(const PUMap& f) {
  for (PointIndex x : f.domain()) {
    const auto& p = f(x);
    if (p.empty()) {
      throw Error(ErrorCode::NotNormalized, "no value at point '" + f.space().id(x) + "'");
    }
    if (!f.target().contains(carrier(p))) {
      throw Error(ErrorCode::NotInTarget, "carrier of f(" + f.space().id(x) + ") is not a simplex of the target");
    }
  }
}

}  // namespace

PUMap::PUMap(SpacePtr space, Complex target, std::vector<SimplexPoint> values)
    : PUMap(space, std::move(target), std::move(values), PointSet::all(space ? space->size() : 0)) {}

PUMap::PUMap(SpacePtr space, Complex target, std::vector<SimplexPoint> values, PointSet domain)
    : space_(std::move(space)), target_(std::move(target)), values_(std::move(values)), domain_(std::move(domain)) {
  if (!space_) throw Error(ErrorCode::InvalidArgument, "map needs a space");
  if (values_.size() != space_->size() || domain_.universe() != space_->size()) {
    throw Error(ErrorCode::InvalidArgument, "map values must be indexed by the points of its space");
  }
  check_carriers(*this);
}

PUMap PUMap::restricted(const PointSet& domain) const {
  if (!domain.is_subset_of(domain_)) {
    throw Error(ErrorCode::InvalidArgument, "restriction domain is not inside the map's domain");
  }
  return PUMap(space_, target_, values_, domain);
}

LipschitzReport check_lipschitz(const PUMap& f, double lambda, double C) {
  LipschitzReport report;
  report.lambda = lambda;
  report.C = C;
  const auto& space = f.space();
  const auto& m = f.domain().members();
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto& fx = f(m[i]);
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      const double d = space.distance(m[i], m[j]);
      const double l1 = l1_distance(fx, f(m[j]));
      const double excess = l1 - lambda * d - C;
      if (excess > report.max_excess) {
        report.max_excess = excess;
        report.worst_pair = PointPair{m[i], m[j]};
      }
      if (d > 0.0) report.lambda_hat = std::max(report.lambda_hat, (l1 - C) / d);
    }
  }
  report.passed = !(report.max_excess > tolerance());
  return report;
}

VariationReport check_variation(const PUMap& f, double R, double eps) {
  if (!(R >= 0.0) || !(eps > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "variation check needs R >= 0 and eps > 0");
  }
  VariationReport report;
  report.R = R;
  report.eps = eps;
  const auto& space = f.space();
  const auto& m = f.domain().members();
  // tau absorbs rounding above eps, but an exact hit on eps violates the strict bound.
  std::optional<PointPair> exact_hit;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      if (space.distance(m[i], m[j]) > R) continue;
      const double l1 = l1_distance(f(m[i]), f(m[j]));
      if (l1 == eps && !exact_hit) exact_hit = PointPair{m[i], m[j]};
      if (!report.worst_pair || l1 > report.max_l1) {
        report.max_l1 = l1;
        report.worst_pair = PointPair{m[i], m[j]};
      }
    }
  }
  report.passed = report.max_l1 < eps + tolerance() && !exact_hit;
  if (!report.passed && report.max_l1 < eps + tolerance()) report.worst_pair = exact_hit;
  return report;
}

double measured_delta(const PUMap& f) {
  const auto& space = f.space();
  const auto& m = f.domain().members();
  double delta = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      delta = std::max(delta, l1_distance(f(m[i]), f(m[j])) / (space.distance(m[i], m[j]) + 1.0));
    }
  }
  return delta;
}

std::pair<double, double> variation_to_lipschitz(double R, double eps) {
  if (!(eps > 0.0) || eps > 2.0) {
    throw Error(ErrorCode::EpsOutOfRange, "need 0 < eps <= 2, got " + std::to_string(eps));
  }
  if (!(R > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "need R > 0");
  }
  return {(2.0 - eps) / R, eps};
}

Cover star_preimage_cover(const PUMap& f) {
  if (!f.is_total()) {
    throw Error(ErrorCode::NotACover, "star-preimage cover needs a total map");
  }
  const std::size_t nv = f.target().vertex_count();
  std::vector<std::vector<PointIndex>> preimage(nv);
  for (PointIndex x = 0; x < f.space().size(); ++x) {
    for (const auto& [v, w] : f(x).entries()) preimage[v].push_back(x);
  }
  std::vector<std::string> labels;
  std::vector<PointSet> elements;
  for (VertexIndex v = 0; v < nv; ++v) {
    if (preimage[v].empty()) continue;
    labels.push_back(f.target().label(v));
    elements.emplace_back(f.space().size(), std::move(preimage[v]));
  }
  return Cover(f.space_ptr(), std::move(labels), std::move(elements), "star-preimage");
}

CoverStats star_preimage_stats(const PUMap& f) {
  const auto& space = f.space();
  const std::size_t n = space.size();
  const auto& domain = f.domain().members();
  std::vector<std::vector<PointIndex>> preimage(f.target().vertex_count());
  for (PointIndex x : domain) {
    for (const auto& [v, w] : f(x).entries()) preimage[v].push_back(x);
  }
  CoverStats stats;
  stats.local_lebesgue.assign(n, 0.0);
  stats.local_multiplicity.assign(n, 0);
  std::vector<char> inside(n, 0);
  for (const auto& members : preimage) {
    if (members.empty()) continue;
    for (PointIndex x : members) inside[x] = 1;
    for (PointIndex x : members) {
      double best = kInfinity;
      for (PointIndex y : domain) {
        if (!inside[y]) best = std::min(best, space.distance(x, y));
      }
      stats.local_lebesgue[x] = std::max(stats.local_lebesgue[x], best);
      ++stats.local_multiplicity[x];
    }
    stats.mesh = std::max(stats.mesh, set_diameter(space, PointSet(n, members)));
    for (PointIndex x : members) inside[x] = 0;
  }
  for (PointIndex x : domain) {
    stats.lebesgue = std::min(stats.lebesgue, stats.local_lebesgue[x]);
    stats.multiplicity = std::max(stats.multiplicity, stats.local_multiplicity[x]);
  }
  return stats;
}

double map_lebesgue(const PUMap& f) { return star_preimage_stats(f).lebesgue; }

double lebesgue_lower_bound(double lambda, double C, int n) {
  if (!(lambda > 0.0) || n < 0) {
    throw Error(ErrorCode::InvalidArgument, "need lambda > 0 and n >= 0");
  }
  const double k = n + 1.0;
  if (k * C >= 1.0) {
    throw Error(ErrorCode::BoundDegenerate, "(n+1)C >= 1, the bound is not positive");
  }
  return (1.0 - k * C) / (k * lambda);
}

PUMap barycentric_map(const Cover& cover) {
  const std::size_t n = cover.space().size();
  std::vector<std::vector<SimplexPoint::Entry>> raw(n);
  for (std::size_t s = 0; s < cover.size(); ++s) {
    const auto f = member_distances(cover, s);
    const auto& members = cover.element(s).members();
    for (std::size_t k = 0; k < members.size(); ++k) raw[members[k]].emplace_back(s, f[k]);
  }
  std::vector<SimplexPoint> values;
  values.reserve(n);
  for (PointIndex x = 0; x < n; ++x) {
    auto& entries = raw[x];
    if (entries.empty()) {
      throw Error(ErrorCode::UncoveredPoint, "point '" + cover.space().id(x) + "' lies in no element");
    }
    const auto infinite = std::count_if(entries.begin(), entries.end(), [](const auto& e) { return std::isinf(e.second); });
    if (infinite > 0) {
      for (auto& e : entries) e.second = std::isinf(e.second) ? 1.0 / static_cast<double>(infinite) : 0.0;
    } else {
      double sum = 0.0;
      for (const auto& e : entries) sum += e.second;
      for (auto& e : entries) e.second /= sum;
    }
    values.push_back(SimplexPoint::from_weights(std::move(entries)));
  }
  return PUMap(cover.space_ptr(), nerve(cover), std::move(values));
}

BarycentricBoundReport check_barycentric_bound(const Cover& cover) {
  const auto stats = compute_stats(cover);
  if (!(stats.lebesgue > 0.0)) {
    throw Error(ErrorCode::ZeroLebesgue, "cover has Lebesgue number 0");
  }
  BarycentricBoundReport report;
  report.multiplicity = stats.multiplicity;
  report.lebesgue = stats.lebesgue;
  const double m = static_cast<double>(stats.multiplicity);
  report.bound = std::isinf(stats.lebesgue) ? 0.0 : 4.0 * m * m / stats.lebesgue;
  report.lipschitz = check_lipschitz(barycentric_map(cover), report.bound, 0.0);
  report.passed = report.lipschitz.passed;
  return report;
}

DeltaPUCertificate check_delta_pu(const PUMap& f, double delta, double bound_M) {
  if (!(delta > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "delta must be positive");
  }
  const double tau = tolerance();
  DeltaPUCertificate cert;
  cert.delta = delta;
  cert.bound_M = bound_M;
  cert.lipschitz = check_lipschitz(f, delta, delta);
  cert.lipschitz_ok = cert.lipschitz.passed;
  const auto stats = star_preimage_stats(f);
  cert.lebesgue = stats.lebesgue;
  cert.lebesgue_ok = stats.lebesgue >= 1.0 / delta - tau;
  if (!cert.lebesgue_ok) {
    for (PointIndex x : f.domain()) {
      if (stats.local_lebesgue[x] == stats.lebesgue) {
        cert.lebesgue_witness = x;
        break;
      }
    }
  }
  cert.star_mesh = stats.mesh;
  cert.uniformly_bounded_ok = stats.mesh <= bound_M + tau;
  cert.verdict = cert.lipschitz_ok && cert.lebesgue_ok && cert.uniformly_bounded_ok;
  return cert;
}

PullbackResult pullback_partition(const SpacePtr& domain_space, const std::vector<PointIndex>& g, double R,
                                  double S, const PUMap& f) {
  const std::size_t n = domain_space->size();
  if (g.size() != n) {
    throw Error(ErrorCode::InvalidArgument, "point map must be defined on every point");
  }
  for (PointIndex gx : g) {
    if (!f.domain().contains(gx)) {
      throw Error(ErrorCode::UnknownPoint, "point map leaves the domain of f");
    }
  }
  const double tau = tolerance();
  for (PointIndex x = 0; x < n; ++x) {
    for (PointIndex y = x + 1; y < n; ++y) {
      if (domain_space->distance(x, y) <= R && f.space().distance(g[x], g[y]) > S + tau) {
        throw Error(ErrorCode::DistortionViolated,
                    "d(" + domain_space->id(x) + ", " + domain_space->id(y) + ") <= R but images are farther than S");
      }
    }
  }
  std::vector<SimplexPoint> values;
  values.reserve(n);
  for (PointIndex x = 0; x < n; ++x) values.push_back(f(g[x]));
  PUMap h(domain_space, f.target(), std::move(values));
  const double eps_f = measured_delta(f);
  auto variation = check_variation(h, R, std::max(S * eps_f + eps_f, tau));
  return {std::move(h), eps_f, variation};
}

}  // namespace coarsescope
