#include "coarsescope/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace coarsescope::fixtures {

namespace {

std::vector<std::string> labels(const char* prefix, std::size_t count) {
  std::vector<std::string> ids;
  ids.reserve(count);
  for (std::size_t i = 0; i < count; ++i) ids.push_back(indexed_label(prefix, i, count));
  return ids;
}

}  // namespace

SpacePtr line(std::size_t count, double spacing) {
  std::vector<std::vector<double>> coords(count);
  for (std::size_t i = 0; i < count; ++i) coords[i] = {static_cast<double>(i) * spacing};
  return share(FiniteMetricSpace::from_euclidean(labels("p", count), coords));
}

SpacePtr grid(std::size_t width, std::size_t height, double spacing) {
  std::vector<std::vector<double>> coords;
  coords.reserve(width * height);
  for (std::size_t i = 0; i < width; ++i) {
    for (std::size_t j = 0; j < height; ++j) {
      coords.push_back({static_cast<double>(i) * spacing, static_cast<double>(j) * spacing});
    }
  }
  return share(FiniteMetricSpace::from_euclidean(labels("g", coords.size()), coords));
}

SpacePtr path_graph(std::size_t count) {
  auto ids = labels("v", count);
  std::vector<WeightedEdge> edges;
  for (std::size_t i = 0; i + 1 < count; ++i) edges.push_back({ids[i], ids[i + 1], 1.0});
  return share(FiniteMetricSpace::from_graph(std::move(ids), edges));
}

SpacePtr random_euclidean(Rng& rng, std::size_t count, std::size_t dim, int extent) {
  std::uniform_int_distribution<int> coord(0, extent - 1);
  std::set<std::vector<double>> seen;
  std::vector<std::vector<double>> coords;
  const double capacity = std::pow(static_cast<double>(extent), static_cast<double>(dim));
  count = std::min<std::size_t>(count, static_cast<std::size_t>(capacity));
  while (coords.size() < count) {
    std::vector<double> c(dim);
    for (auto& v : c) v = coord(rng);
    if (seen.insert(c).second) coords.push_back(std::move(c));
  }
  return share(FiniteMetricSpace::from_euclidean(labels("x", count), coords));
}

SpacePtr random_graph(Rng& rng, std::size_t count, std::size_t extra, int max_weight) {
  auto ids = labels("v", count);
  std::uniform_int_distribution<int> weight(1, max_weight);
  std::vector<WeightedEdge> edges;
  for (std::size_t i = 1; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> parent(0, i - 1);
    edges.push_back({ids[parent(rng)], ids[i], static_cast<double>(weight(rng))});
  }
  if (count > 1) {
    std::uniform_int_distribution<std::size_t> any(0, count - 1);
    for (std::size_t e = 0; e < extra; ++e) {
      const auto a = any(rng);
      const auto b = any(rng);
      if (a != b) edges.push_back({ids[a], ids[b], static_cast<double>(weight(rng))});
    }
  }
  return share(FiniteMetricSpace::from_graph(std::move(ids), edges));
}

Cover random_cover(Rng& rng, const SpacePtr& space, std::size_t elements) {
  const std::size_t n = space->size();
  elements = std::max<std::size_t>(1, std::min(elements, n));
  std::vector<PointIndex> order(n);
  std::iota(order.begin(), order.end(), PointIndex{0});
  std::shuffle(order.begin(), order.end(), rng);
  order.resize(elements);
  const double diam = std::max(space->diameter(), 1.0);
  std::uniform_real_distribution<double> radius(0.05 * diam, 0.6 * diam);
  std::vector<std::vector<PointIndex>> members(elements);
  std::vector<char> covered(n, 0);
  for (std::size_t s = 0; s < elements; ++s) {
    for (PointIndex y : ball(*space, order[s], radius(rng))) {
      members[s].push_back(y);
      covered[y] = 1;
    }
  }
  for (PointIndex x = 0; x < n; ++x) {
    if (covered[x]) continue;
    std::size_t best = 0;
    for (std::size_t s = 1; s < elements; ++s) {
      if (space->distance(x, order[s]) < space->distance(x, order[best])) best = s;
    }
    members[best].push_back(x);
  }
  std::vector<PointSet> sets;
  for (auto& m : members) sets.emplace_back(n, std::move(m));
  return Cover(space, labels("U", elements), std::move(sets), "random");
}

Cover interval_cover(const SpacePtr& space, const std::vector<std::pair<double, double>>& intervals) {
  std::vector<PointSet> sets;
  for (const auto& [lo, hi] : intervals) {
    std::vector<PointIndex> m;
    for (PointIndex x = 0; x < space->size(); ++x) {
      const double c = space->coordinates(x)[0];
      if (c >= lo && c < hi) m.push_back(x);
    }
    sets.emplace_back(space->size(), std::move(m));
  }
  return Cover(space, labels("I", intervals.size()), std::move(sets), "intervals");
}

oracle::Matrix distance_matrix(const FiniteMetricSpace& space) {
  oracle::Matrix d(space.size(), std::vector<double>(space.size()));
  for (PointIndex x = 0; x < space.size(); ++x) {
    for (PointIndex y = 0; y < space.size(); ++y) d[x][y] = space.distance(x, y);
  }
  return d;
}

oracle::Membership membership(const Cover& cover) {
  oracle::Membership m;
  for (const auto& e : cover.elements()) m.push_back(e.mask());
  return m;
}

oracle::Weights weights(const SimplexPoint& p) {
  oracle::Weights w;
  for (const auto& [v, x] : p.entries()) w[v] = x;
  return w;
}

std::vector<oracle::Weights> weights(const PUMap& f) {
  std::vector<oracle::Weights> out(f.space().size());
  for (PointIndex x : f.domain()) out[x] = weights(f(x));
  return out;
}

}  // namespace coarsescope::fixtures
