#include "coarsescope/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>

namespace coarsescope {

namespace {

std::string triple(const std::vector<std::string>& ids, std::size_t x, std::size_t y, std::size_t z) {
  std::ostringstream os;
  os << "(" << ids[x] << ", " << ids[y] << ", " << ids[z] << ")";
  return os.str();
}

}  // namespace

FiniteMetricSpace::FiniteMetricSpace(SpaceSource source, std::vector<std::string> ids)
    : source_(source), ids_(std::move(ids)) {
  index_.reserve(ids_.size());
  for (PointIndex i = 0; i < ids_.size(); ++i) {
    if (!index_.emplace(ids_[i], i).second) {
      throw Error(ErrorCode::DuplicateId, "point id '" + ids_[i] + "' appears twice");
    }
  }
}

FiniteMetricSpace FiniteMetricSpace::from_matrix(std::vector<std::string> ids,
                                                 const std::vector<std::vector<double>>& rows) {
  FiniteMetricSpace space(SpaceSource::Matrix, std::move(ids));
  const std::size_t n = space.size();
  if (rows.size() != n) {
    throw Error(ErrorCode::MalformedDocument, "distance matrix has " + std::to_string(rows.size()) +
                                                  " rows for " + std::to_string(n) + " ids");
  }
  space.table_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw Error(ErrorCode::MalformedDocument, "distance matrix row " + std::to_string(i) + " has wrong length");
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double d = rows[i][j];
      if (!std::isfinite(d) || d < 0.0) {
        throw Error(ErrorCode::MalformedDocument, "distances must be finite and nonnegative");
      }
      space.table_[i * n + j] = d;
    }
  }
  const double tau = tolerance();
  for (std::size_t i = 0; i < n; ++i) {
    if (space.table_[i * n + i] != 0.0) {
      throw Error(ErrorCode::MalformedDocument, "dist(" + space.ids_[i] + ", itself) is not 0");
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(space.table_[i * n + j] - space.table_[j * n + i]) > tau) {
        throw Error(ErrorCode::AsymmetricMatrix, "dist(" + space.ids_[i] + ", " + space.ids_[j] +
                                                     ") != dist(" + space.ids_[j] + ", " + space.ids_[i] + ")");
      }
      if (space.table_[i * n + j] == 0.0) {
        throw Error(ErrorCode::CoincidentPoints, space.ids_[i] + " and " + space.ids_[j] + " are at distance 0");
      }
      space.table_[j * n + i] = space.table_[i * n + j];
    }
  }
  space.check_triangle_inequality();
  return space;
}

FiniteMetricSpace FiniteMetricSpace::from_euclidean(std::vector<std::string> ids,
                                                    const std::vector<std::vector<double>>& coords) {
  FiniteMetricSpace space(SpaceSource::Euclidean, std::move(ids));
  const std::size_t n = space.size();
  if (coords.size() != n) {
    throw Error(ErrorCode::MalformedDocument, "coordinate list length does not match ids");
  }
  space.dimension_ = n == 0 ? 0 : coords.front().size();
  space.coords_.reserve(n * space.dimension_);
  for (const auto& c : coords) {
    if (c.size() != space.dimension_) {
      throw Error(ErrorCode::MalformedDocument, "all points must have the same coordinate dimension");
    }
    for (double v : c) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::MalformedDocument, "coordinates must be finite");
      }
      space.coords_.push_back(v);
    }
  }
  // Coincident points would be at distance zero; detect them with a sort.
  std::vector<PointIndex> order(n);
  std::iota(order.begin(), order.end(), PointIndex{0});
  const std::size_t dim = space.dimension_;
  const auto* data = space.coords_.data();
  std::sort(order.begin(), order.end(), [&](PointIndex a, PointIndex b) {
    return std::lexicographical_compare(data + a * dim, data + (a + 1) * dim, data + b * dim, data + (b + 1) * dim);
  });
  for (std::size_t k = 1; k < n; ++k) {
    if (std::equal(data + order[k - 1] * dim, data + (order[k - 1] + 1) * dim, data + order[k] * dim)) {
      throw Error(ErrorCode::CoincidentPoints,
                  space.ids_[order[k - 1]] + " and " + space.ids_[order[k]] + " have identical coordinates");
    }
  }
  return space;
}

FiniteMetricSpace FiniteMetricSpace::from_graph(std::vector<std::string> ids,
                                                const std::vector<WeightedEdge>& edges) {
  FiniteMetricSpace space(SpaceSource::Graph, std::move(ids));
  const std::size_t n = space.size();
  std::vector<std::vector<std::pair<PointIndex, double>>> adjacency(n);
  for (const auto& e : edges) {
    if (!std::isfinite(e.weight) || e.weight <= 0.0) {
      throw Error(ErrorCode::MalformedDocument, "edge weights must be positive and finite");
    }
    const PointIndex a = space.index_of(e.a);
    const PointIndex b = space.index_of(e.b);
    adjacency[a].emplace_back(b, e.weight);
    adjacency[b].emplace_back(a, e.weight);
  }
  space.table_.assign(n * n, kInfinity);
  using Item = std::pair<double, PointIndex>;
  for (PointIndex s = 0; s < n; ++s) {
    double* row = space.table_.data() + s * n;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    row[s] = 0.0;
    queue.emplace(0.0, s);
    while (!queue.empty()) {
      const auto [d, u] = queue.top();
      queue.pop();
      if (d > row[u]) continue;
      for (const auto& [v, w] : adjacency[u]) {
        if (d + w < row[v]) {
          row[v] = d + w;
          queue.emplace(row[v], v);
        }
      }
    }
    for (PointIndex t = 0; t < n; ++t) {
      if (row[t] == kInfinity) {
        throw Error(ErrorCode::DisconnectedGraph, space.ids_[t] + " is unreachable from " + space.ids_[s]);
      }
    }
  }
  // Path sums can differ in the last bit depending on direction; keep the table symmetric.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = std::min(space.table_[i * n + j], space.table_[j * n + i]);
      space.table_[i * n + j] = d;
      space.table_[j * n + i] = d;
    }
  }
  return space;
}

void FiniteMetricSpace::check_triangle_inequality() const {
  const std::size_t n = size();
  const double tau = tolerance();
  for (std::size_t x = 0; x < n; ++x) {
    const double* rx = table_.data() + x * n;
    for (std::size_t y = 0; y < n; ++y) {
      const double dxy = rx[y];
      const double* ry = table_.data() + y * n;
      for (std::size_t z = 0; z < n; ++z) {
        if (rx[z] > dxy + ry[z] + tau) {
          throw Error(ErrorCode::TriangleViolation,
                      "d(x,z) > d(x,y) + d(y,z) for (x,y,z) = " + triple(ids_, x, y, z));
        }
      }
    }
  }
}

double FiniteMetricSpace::euclidean_distance(PointIndex x, PointIndex y) const noexcept {
  const double* a = coords_.data() + x * dimension_;
  const double* b = coords_.data() + y * dimension_;
  if (dimension_ == 1) {
    return std::abs(a[0] - b[0]);
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < dimension_; ++k) {
    const double diff = a[k] - b[k];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

PointIndex FiniteMetricSpace::index_of(std::string_view id) const {
  if (auto found = find(id)) {
    return *found;
  }
  throw Error(ErrorCode::UnknownPoint, "no point with id '" + std::string(id) + "'");
}

std::optional<PointIndex> FiniteMetricSpace::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> FiniteMetricSpace::euclidean_dimension() const {
  if (source_ != SpaceSource::Euclidean) return std::nullopt;
  return dimension_;
}

std::span<const double> FiniteMetricSpace::coordinates(PointIndex x) const {
  if (source_ != SpaceSource::Euclidean) {
    throw Error(ErrorCode::NotEuclidean, "space was not loaded from Euclidean points");
  }
  return {coords_.data() + x * dimension_, dimension_};
}

double FiniteMetricSpace::diameter() const {
  double diam = 0.0;
  for (PointIndex x = 0; x < size(); ++x) {
    for (PointIndex y = x + 1; y < size(); ++y) {
      diam = std::max(diam, distance(x, y));
    }
  }
  return diam;
}

PointSet::PointSet(std::size_t universe, std::vector<PointIndex> members)
    : universe_(universe), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && members_.back() >= universe_) {
    throw Error(ErrorCode::UnknownPoint, "point index " + std::to_string(members_.back()) + " out of range");
  }
}

PointSet PointSet::all(std::size_t universe) {
  std::vector<PointIndex> members(universe);
  std::iota(members.begin(), members.end(), PointIndex{0});
  return PointSet(universe, std::move(members));
}

PointSet PointSet::from_mask(const std::vector<char>& mask) {
  std::vector<PointIndex> members;
  for (PointIndex x = 0; x < mask.size(); ++x) {
    if (mask[x]) members.push_back(x);
  }
  return PointSet(mask.size(), std::move(members));
}

bool PointSet::contains(PointIndex x) const {
  return std::binary_search(members_.begin(), members_.end(), x);
}

std::vector<char> PointSet::mask() const {
  std::vector<char> m(universe_, 0);
  for (PointIndex x : members_) m[x] = 1;
  return m;
}

PointSet PointSet::complement() const {
  auto m = mask();
  for (auto& c : m) c = !c;
  return from_mask(m);
}

bool PointSet::is_subset_of(const PointSet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
}

PointSet ball(const FiniteMetricSpace& space, PointIndex center, double radius) {
  if (center >= space.size()) {
    throw Error(ErrorCode::UnknownPoint, "ball center index out of range");
  }
  if (!(radius >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "ball radius must be nonnegative");
  }
  std::vector<PointIndex> members;
  for (PointIndex y = 0; y < space.size(); ++y) {
    if (space.distance(center, y) < radius) members.push_back(y);
  }
  return PointSet(space.size(), std::move(members));
}

PointSet neighborhood(const FiniteMetricSpace& space, const PointSet& subset, double radius) {
  if (!(radius >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "neighborhood radius must be nonnegative");
  }
  std::vector<char> mask(space.size(), 0);
  for (PointIndex y = 0; y < space.size(); ++y) {
    for (PointIndex a : subset) {
      if (space.distance(a, y) < radius) {
        mask[y] = 1;
        break;
      }
    }
  }
  return PointSet::from_mask(mask);
}

double distance_to_set(const FiniteMetricSpace& space, PointIndex x, const PointSet& subset) {
  double best = kInfinity;
  for (PointIndex y : subset) best = std::min(best, space.distance(x, y));
  return best;
}

std::vector<PointSet> r_components(const FiniteMetricSpace& space, double radius) {
  if (!(radius >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "chain step must be nonnegative");
  }
  const std::size_t n = space.size();
  std::vector<PointIndex> parent(n);
  std::iota(parent.begin(), parent.end(), PointIndex{0});
  auto root = [&](PointIndex x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (PointIndex x = 0; x < n; ++x) {
    for (PointIndex y = x + 1; y < n; ++y) {
      if (space.distance(x, y) <= radius) {
        const PointIndex rx = root(x);
        const PointIndex ry = root(y);
        if (rx != ry) parent[std::max(rx, ry)] = std::min(rx, ry);
      }
    }
  }
  std::vector<std::vector<PointIndex>> classes;
  std::vector<std::size_t> slot(n, n);
  for (PointIndex x = 0; x < n; ++x) {
    const PointIndex r = root(x);
    if (slot[r] == n) {
      slot[r] = classes.size();
      classes.emplace_back();
    }
    classes[slot[r]].push_back(x);
  }
  std::vector<PointSet> result;
  result.reserve(classes.size());
  for (auto& c : classes) result.emplace_back(n, std::move(c));
  return result;
}

double set_diameter(const FiniteMetricSpace& space, const PointSet& subset) {
  double diam = 0.0;
  const auto& m = subset.members();
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      diam = std::max(diam, space.distance(m[i], m[j]));
    }
  }
  return diam;
}

}  // namespace coarsescope
