#include "coarsescope/covers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace coarsescope {

Cover::Cover(SpacePtr space, std::vector<std::string> labels, std::vector<PointSet> elements,
             std::string name)
    : space_(std::move(space)), name_(std::move(name)) {
  if (!space_) {
    throw Error(ErrorCode::InvalidArgument, "cover needs a space");
  }
  if (labels.size() != elements.size()) {
    throw Error(ErrorCode::InvalidArgument, "cover labels and elements differ in length");
  }
  const std::size_t n = space_->size();
  std::vector<std::size_t> order;
  for (std::size_t s = 0; s < elements.size(); ++s) {
    if (elements[s].universe() != n) {
      throw Error(ErrorCode::InvalidArgument, "cover element '" + labels[s] + "' belongs to another space");
    }
    if (!elements[s].empty()) order.push_back(s);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return labels[a] < labels[b]; });
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (labels[order[k]] == labels[order[k - 1]]) {
      throw Error(ErrorCode::DuplicateId, "cover label '" + labels[order[k]] + "' appears twice");
    }
  }
  std::vector<char> covered(n, 0);
  for (std::size_t s : order) {
    for (PointIndex x : elements[s]) covered[x] = 1;
    labels_.push_back(std::move(labels[s]));
    elements_.push_back(std::move(elements[s]));
  }
  for (PointIndex x = 0; x < n; ++x) {
    if (!covered[x]) {
      throw Error(ErrorCode::NotACover, "point '" + space_->id(x) + "' lies in no element");
    }
  }
}

std::size_t Cover::index_of(const std::string& label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) {
    throw Error(ErrorCode::UnknownIndex, "no cover element labelled '" + label + "'");
  }
  return static_cast<std::size_t>(it - labels_.begin());
}

double member_distance(const Cover& cover, std::size_t s, PointIndex x) {
  if (s >= cover.size()) {
    throw Error(ErrorCode::UnknownIndex, "cover index " + std::to_string(s) + " out of range");
  }
  if (x >= cover.space().size()) {
    throw Error(ErrorCode::UnknownPoint, "point index " + std::to_string(x) + " out of range");
  }
  const PointSet& element = cover.element(s);
  if (!element.contains(x)) return 0.0;
  const auto mask = element.mask();
  double best = kInfinity;
  for (PointIndex y = 0; y < mask.size(); ++y) {
    if (!mask[y]) best = std::min(best, cover.space().distance(x, y));
  }
  return best;
}

std::vector<double> member_distances(const Cover& cover, std::size_t s) {
  if (s >= cover.size()) {
    throw Error(ErrorCode::UnknownIndex, "cover index " + std::to_string(s) + " out of range");
  }
  const auto& space = cover.space();
  const PointSet& element = cover.element(s);
  const auto mask = element.mask();
  std::vector<PointIndex> outside;
  for (PointIndex y = 0; y < mask.size(); ++y) {
    if (!mask[y]) outside.push_back(y);
  }
  std::vector<double> values;
  values.reserve(element.size());
  for (PointIndex x : element) {
    double best = kInfinity;
    for (PointIndex y : outside) best = std::min(best, space.distance(x, y));
    values.push_back(best);
  }
  return values;
}

CoverStats compute_stats(const Cover& cover) {
  const std::size_t n = cover.space().size();
  CoverStats stats;
  stats.local_lebesgue.assign(n, 0.0);
  stats.local_multiplicity.assign(n, 0);
  for (std::size_t s = 0; s < cover.size(); ++s) {
    const auto f = member_distances(cover, s);
    const auto& members = cover.element(s).members();
    for (std::size_t k = 0; k < members.size(); ++k) {
      stats.local_lebesgue[members[k]] = std::max(stats.local_lebesgue[members[k]], f[k]);
      ++stats.local_multiplicity[members[k]];
    }
    stats.mesh = std::max(stats.mesh, set_diameter(cover.space(), cover.element(s)));
  }
  for (PointIndex x = 0; x < n; ++x) {
    stats.lebesgue = std::min(stats.lebesgue, stats.local_lebesgue[x]);
    stats.multiplicity = std::max(stats.multiplicity, stats.local_multiplicity[x]);
  }
  return stats;
}

std::string indexed_label(std::string_view prefix, std::size_t index, std::size_t count) {
  const std::size_t width = std::to_string(count == 0 ? 0 : count - 1).size();
  std::string digits = std::to_string(index);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return std::string(prefix) + digits;
}

double brick_mesh_bound(double radius, int n, std::size_t dimension) {
  return 2.0 * (n + 1) * radius * std::sqrt(static_cast<double>(dimension));
}

BrickCover brick_cover(const SpacePtr& space, double radius, int n) {
  const auto dim = space->euclidean_dimension();
  if (!dim) {
    throw Error(ErrorCode::NotEuclidean, "brick_cover needs a space loaded from Euclidean points");
  }
  if (!(radius > 0.0) || n < 0) {
    throw Error(ErrorCode::InvalidArgument, "brick_cover needs R > 0 and n >= 0");
  }
  const double side = 2.0 * (n + 1) * radius;
  // Key: lattice index followed by the box index along every axis.
  std::map<std::vector<long long>, std::vector<PointIndex>> boxes;
  for (int lattice = 0; lattice <= n; ++lattice) {
    const double shift = 2.0 * lattice * radius;
    for (PointIndex x = 0; x < space->size(); ++x) {
      const auto c = space->coordinates(x);
      std::vector<long long> key;
      key.reserve(c.size() + 1);
      key.push_back(lattice);
      for (double v : c) key.push_back(static_cast<long long>(std::floor((v - shift) / side)));
      boxes[key].push_back(x);
    }
  }
  std::vector<std::string> labels;
  std::vector<PointSet> elements;
  std::size_t k = 0;
  for (auto& [key, members] : boxes) {
    labels.push_back(indexed_label("B", k++, boxes.size()));
    elements.emplace_back(space->size(), std::move(members));
  }
  return {Cover(space, std::move(labels), std::move(elements), "brick"), brick_mesh_bound(radius, n, *dim)};
}

GreedyCoverResult greedy_cover(const SpacePtr& space, double radius, std::size_t target_mult,
                               double mesh_cap) {
  if (!(radius > 0.0) || target_mult < 1) {
    throw Error(ErrorCode::InvalidArgument, "greedy_cover needs R > 0 and target_mult >= 1");
  }
  const std::size_t n = space->size();
  std::vector<PointIndex> centers;
  for (PointIndex x = 0; x < n; ++x) {
    const bool served = std::any_of(centers.begin(), centers.end(),
                                    [&](PointIndex c) { return space->distance(x, c) < radius; });
    if (!served) centers.push_back(x);
  }

  struct Element {
    std::vector<char> mask;
    std::size_t color;
    bool alive;
  };
  std::vector<Element> elements;
  // owner[color][x]: index of the element of that color containing x, or npos.
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<std::vector<std::size_t>> owner(target_mult, std::vector<std::size_t>(n, npos));

  auto diameter_of = [&](const std::vector<char>& mask) {
    std::vector<PointIndex> m;
    for (PointIndex x = 0; x < n; ++x) {
      if (mask[x]) m.push_back(x);
    }
    double diam = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = i + 1; j < m.size(); ++j) diam = std::max(diam, space->distance(m[i], m[j]));
    }
    return diam;
  };

  for (PointIndex c : centers) {
    std::vector<char> ball_mask(n, 0);
    for (PointIndex y = 0; y < n; ++y) ball_mask[y] = space->distance(c, y) < 2.0 * radius;

    std::size_t best_color = npos;
    std::size_t best_overlap = n + 1;
    std::vector<char> best_union;
    std::vector<std::size_t> best_absorbed;
    for (std::size_t color = 0; color < owner.size(); ++color) {
      std::vector<std::size_t> absorbed;
      std::size_t overlap = 0;
      for (PointIndex y = 0; y < n; ++y) {
        if (ball_mask[y] && owner[color][y] != npos) {
          ++overlap;
          absorbed.push_back(owner[color][y]);
        }
      }
      if (overlap >= best_overlap) continue;
      std::sort(absorbed.begin(), absorbed.end());
      absorbed.erase(std::unique(absorbed.begin(), absorbed.end()), absorbed.end());
      std::vector<char> merged = ball_mask;
      for (std::size_t e : absorbed) {
        for (PointIndex y = 0; y < n; ++y) merged[y] |= elements[e].mask[y];
      }
      if (!absorbed.empty() && diameter_of(merged) > mesh_cap) continue;
      best_color = color;
      best_overlap = overlap;
      best_union = std::move(merged);
      best_absorbed = std::move(absorbed);
    }
    if (best_color == npos) {
      best_color = owner.size();
      owner.emplace_back(n, npos);
      best_union = ball_mask;
    }
    for (std::size_t e : best_absorbed) elements[e].alive = false;
    const std::size_t id = elements.size();
    for (PointIndex y = 0; y < n; ++y) {
      if (best_union[y]) owner[best_color][y] = id;
    }
    elements.push_back({std::move(best_union), best_color, true});
  }

  std::vector<PointSet> sets;
  for (const auto& e : elements) {
    if (e.alive) sets.push_back(PointSet::from_mask(e.mask));
  }
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < sets.size(); ++k) labels.push_back(indexed_label("G", k, sets.size()));
  Cover cover(space, std::move(labels), std::move(sets), "greedy");
  const auto stats = compute_stats(cover);
  const bool ok = stats.multiplicity <= target_mult && stats.lebesgue >= radius - tolerance();
  return {ok, stats.multiplicity, std::move(cover)};
}

}  // namespace coarsescope
