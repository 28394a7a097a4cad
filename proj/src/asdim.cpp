#include "coarsescope/asdim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace coarsescope {

namespace {

std::string number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// First point whose local statistics miss the thresholds.
std::optional<PointIndex> stats_witness(const CoverStats& stats, const PointSet& domain, std::size_t max_mult,
                                        double min_lebesgue) {
  for (PointIndex x : domain) {
    if (stats.local_multiplicity[x] > max_mult) return x;
  }
  for (PointIndex x : domain) {
    if (stats.local_lebesgue[x] < min_lebesgue) return x;
  }
  return std::nullopt;
}

std::optional<PointPair> far_pair_in_star(const PUMap& f, double bound) {
  const auto& space = f.space();
  std::vector<std::vector<PointIndex>> preimage(f.target().vertex_count());
  for (PointIndex x : f.domain()) {
    for (const auto& [v, w] : f(x).entries()) preimage[v].push_back(x);
  }
  for (const auto& members : preimage) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        if (space.distance(members[i], members[j]) > bound) return PointPair{members[i], members[j]};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(WitnessKind kind) { return kind == WitnessKind::Cover ? "cover" : "map"; }

AsdimCertificate certify_from_cover(const Cover& cover, double R, int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "n must be nonnegative");
  const double tau = tolerance();
  const auto stats = compute_stats(cover);
  AsdimCertificate cert;
  cert.scale_R = R;
  cert.n_claimed = n;
  cert.kind = WitnessKind::Cover;
  cert.lebesgue = stats.lebesgue;
  cert.multiplicity = stats.multiplicity;
  cert.mesh = stats.mesh;
  const double k = n + 1.0;
  if (R > 0.0) {
    cert.delta_recipe = std::max(1.0, k * k / 4.0) / R;
    cert.delta_lipofbary = std::max(1.0, 4.0 * k * k) / R;
  }
  const bool mult_ok = stats.multiplicity <= static_cast<std::size_t>(n) + 1;
  const bool leb_ok = stats.lebesgue >= R - tau;
  const bool mesh_ok = std::isfinite(stats.mesh);
  cert.verdict = mult_ok && leb_ok && mesh_ok;
  if (!mult_ok) {
    cert.failure = "MULTIPLICITY_EXCEEDED";
  } else if (!leb_ok) {
    cert.failure = "LEBESGUE_TOO_SMALL";
  } else if (!mesh_ok) {
    cert.failure = "MESH_UNBOUNDED";
  }
  if (!cert.verdict) {
    cert.witness_point = stats_witness(stats, PointSet::all(cover.space().size()), n + 1, R - tau);
  }
  cert.provenance.push_back("cover '" + cover.name() + "' with " + std::to_string(cover.size()) + " elements");
  return cert;
}

AsdimCertificate certify_from_map(const PUMap& f, double delta, int n, double bound_M) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "n must be nonnegative");
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidArgument, "delta must be positive");
  const double k = n + 1.0;
  if (k * delta >= 1.0) {
    throw Error(ErrorCode::DeltaTooLarge, "(n+1) delta = " + number(k * delta) + " >= 1");
  }
  const double tau = tolerance();
  AsdimCertificate cert;
  cert.kind = WitnessKind::Map;
  cert.n_claimed = n;
  cert.delta = delta;
  cert.bound_M = bound_M;
  cert.scale_R = (1.0 - k * delta) / (k * delta);

  for (PointIndex x : f.domain()) {
    if (!in_skeleton(f(x), n)) {
      cert.failure = "NOT_IN_SKELETON";
      cert.witness_point = x;
      return cert;
    }
  }
  const auto lip = check_lipschitz(f, delta, delta);
  cert.lambda_hat = lip.lambda_hat;
  cert.measured_delta = measured_delta(f);
  if (!lip.passed) {
    cert.failure = "LIPSCHITZ_FAILED";
    cert.witness_pair = lip.worst_pair;
    return cert;
  }
  const auto stats = star_preimage_stats(f);
  cert.lebesgue = stats.lebesgue;
  cert.multiplicity = stats.multiplicity;
  cert.mesh = stats.mesh;
  if (stats.mesh > bound_M + tau) {
    cert.failure = "MESH_EXCEEDED";
    cert.witness_pair = far_pair_in_star(f, bound_M + tau);
    return cert;
  }
  // The induced scale is a claim; check it against the star-preimage cover itself.
  const bool mult_ok = stats.multiplicity <= static_cast<std::size_t>(n) + 1;
  const bool leb_ok = stats.lebesgue >= cert.scale_R - tau;
  if (!mult_ok || !leb_ok) {
    cert.failure = mult_ok ? "INDUCED_LEBESGUE_TOO_SMALL" : "INDUCED_MULTIPLICITY_EXCEEDED";
    cert.witness_point = stats_witness(stats, f.domain(), n + 1, cert.scale_R - tau);
    return cert;
  }
  cert.verdict = true;
  cert.provenance.push_back("map is (" + number(delta) + ", " + number(delta) + ")-Lipschitz into the " +
                            std::to_string(n) + "-skeleton");
  cert.provenance.push_back("induced scale R = (1-(n+1)delta)/((n+1)delta) verified on the star-preimage cover");
  return cert;
}

AsdimCertificate theorem_b_pipeline(const PUMap& f, const PUMap& h, double eps, int n) {
  if (&f.space() != &h.space() && f.space().size() != h.space().size()) {
    throw Error(ErrorCode::InvalidArgument, "f and h live on different spaces");
  }
  for (PointIndex x : h.domain()) {
    if (!in_skeleton(h(x), n)) {
      AsdimCertificate cert;
      cert.kind = WitnessKind::Map;
      cert.n_claimed = n;
      cert.failure = "NOT_IN_SKELETON";
      cert.witness_point = x;
      return cert;
    }
  }
  const auto& hl = h.target().labels();
  for (PointIndex x : h.domain()) {
    for (const auto& [v, w] : h(x).entries()) {
      const auto u = f.target().find(hl[v]);
      if (!u || !in_star(f(x), *u)) {
        throw Error(ErrorCode::PreconditionFailed,
                    "h is not a push of f: carrier(h) leaves carrier(f) at " + h.space().id(x));
      }
    }
  }
  const double mesh = star_preimage_stats(h).mesh;
  const auto eps_pu = check_delta_pu(h, eps, mesh);
  if (!eps_pu.verdict) {
    throw Error(ErrorCode::PreconditionFailed, "h is not an eps-partition of unity at eps = " + number(eps));
  }
  const double delta_h = std::max(measured_delta(h), tolerance());
  auto cert = certify_from_map(h, delta_h, n, mesh);
  cert.provenance.insert(cert.provenance.begin(),
                         {"h is an eps-partition of unity, eps = " + number(eps),
                          "h is a push of f: carrier(h(x)) within carrier(f(x)) for every x",
                          "applied with the sharpest delta of h, delta_h = " + number(delta_h) + " <= eps"});
  return cert;
}

UpperBoundEstimate estimate_upper_bound(const SpacePtr& space, double R, int n_max) {
  if (!(R > 0.0)) throw Error(ErrorCode::InvalidArgument, "R must be positive");
  UpperBoundEstimate est;
  const bool euclidean = space->euclidean_dimension().has_value();
  for (int n = 0; n <= n_max; ++n) {
    std::vector<std::pair<std::string, Cover>> candidates;
    if (euclidean) candidates.emplace_back("brick", brick_cover(space, R, n).cover);
    candidates.emplace_back("greedy", greedy_cover(space, R, n + 1, 4.0 * (n + 1) * R).cover);
    for (auto& [name, cover] : candidates) {
      est.certificate = certify_from_cover(cover, R, n);
      est.generator = name;
      if (est.certificate.verdict) {
        est.n_best = n;
        est.witness = std::move(cover);
        return est;
      }
    }
  }
  return est;
}

namespace {

struct PartitionSearch {
  std::size_t n = 0;
  std::vector<std::uint32_t> ball_mask;    // B(x, R) as a bit mask
  std::vector<double> mask_diameter;       // indexed by mask
  double mesh_cap = kInfinity;
  std::vector<std::uint32_t> groups;       // union of balls per group
  std::size_t best = 0;
  std::vector<std::uint32_t> best_groups;
  std::uint64_t examined = 0;

  std::size_t multiplicity() const {
    std::size_t m = 0;
    for (std::size_t x = 0; x < n; ++x) {
      std::size_t c = 0;
      for (auto g : groups) c += (g >> x) & 1u;
      m = std::max(m, c);
    }
    return m;
  }

  void search(std::size_t x) {
    ++examined;
    if (multiplicity() >= best) return;
    if (x == n) {
      best = multiplicity();
      best_groups = groups;
      return;
    }
    for (std::size_t g = 0; g <= groups.size(); ++g) {
      const bool fresh = g == groups.size();
      const std::uint32_t merged = (fresh ? 0u : groups[g]) | ball_mask[x];
      if (mask_diameter[merged] > mesh_cap) continue;
      if (fresh) {
        groups.push_back(merged);
        search(x + 1);
        groups.pop_back();
      } else {
        const std::uint32_t old = groups[g];
        groups[g] = merged;
        search(x + 1);
        groups[g] = old;
      }
    }
  }
};

}  // namespace

ExhaustiveResult exhaustive_min_multiplicity(const SpacePtr& space, double R, double mesh_cap) {
  const std::size_t n = space->size();
  if (n > 12) throw Error(ErrorCode::InvalidArgument, "exhaustive search needs at most 12 points");
  if (!(R > 0.0)) throw Error(ErrorCode::InvalidArgument, "R must be positive");
  ExhaustiveResult result;
  if (n == 0) return result;
  PartitionSearch s;
  s.n = n;
  s.mesh_cap = mesh_cap + tolerance();
  s.ball_mask.assign(n, 0);
  for (PointIndex x = 0; x < n; ++x) {
    for (PointIndex y : ball(*space, x, R)) s.ball_mask[x] |= 1u << y;
  }
  s.mask_diameter.assign(std::size_t{1} << n, 0.0);
  for (std::uint32_t m = 1; m < s.mask_diameter.size(); ++m) {
    const std::uint32_t low = m & (~m + 1);
    const auto x = static_cast<PointIndex>(std::countr_zero(low));
    double d = s.mask_diameter[m ^ low];
    for (std::uint32_t rest = m ^ low; rest; rest &= rest - 1) {
      d = std::max(d, space->distance(x, static_cast<PointIndex>(std::countr_zero(rest))));
    }
    s.mask_diameter[m] = d;
  }
  s.best = n + 1;
  s.search(0);
  result.nodes_examined = s.examined;
  if (s.best_groups.empty()) return result;
  result.min_multiplicity = s.best;
  std::vector<std::string> labels;
  std::vector<PointSet> elements;
  for (std::size_t g = 0; g < s.best_groups.size(); ++g) {
    labels.push_back(indexed_label("E", g, s.best_groups.size()));
    std::vector<PointIndex> members;
    for (PointIndex x = 0; x < n; ++x) {
      if ((s.best_groups[g] >> x) & 1u) members.push_back(x);
    }
    elements.emplace_back(n, std::move(members));
  }
  result.witness.emplace(space, std::move(labels), std::move(elements), "exhaustive");
  return result;
}

}  // namespace coarsescope
