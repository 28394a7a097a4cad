#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "coarsescope/core.hpp"

namespace coarsescope {

enum class SpaceSource { Matrix, Euclidean, Graph };

struct WeightedEdge {
  std::string a;
  std::string b;
  double weight = 0.0;
};

/// A finite metric space with a total distance function.
///
/// Immutable after construction. Matrix and graph sources store the full
/// distance table; Euclidean sources keep their coordinates and evaluate the
/// norm on demand.
class FiniteMetricSpace {
 public:
  static FiniteMetricSpace from_matrix(std::vector<std::string> ids,
                                       const std::vector<std::vector<double>>& rows);
  static FiniteMetricSpace from_euclidean(std::vector<std::string> ids,
                                          const std::vector<std::vector<double>>& coords);
  static FiniteMetricSpace from_graph(std::vector<std::string> ids,
                                      const std::vector<WeightedEdge>& edges);

  std::size_t size() const noexcept { return ids_.size(); }
  SpaceSource source() const noexcept { return source_; }

  double distance(PointIndex x, PointIndex y) const noexcept {
    if (source_ == SpaceSource::Euclidean) {
      return euclidean_distance(x, y);
    }
    return table_[x * ids_.size() + y];
  }

  const std::string& id(PointIndex x) const { return ids_.at(x); }
  const std::vector<std::string>& ids() const noexcept { return ids_; }

  /// Throws UnknownPoint.
  PointIndex index_of(std::string_view id) const;
  std::optional<PointIndex> find(std::string_view id) const;

  /// Coordinate dimension for Euclidean sources, nullopt otherwise.
  std::optional<std::size_t> euclidean_dimension() const;
  std::span<const double> coordinates(PointIndex x) const;

  double diameter() const;

 private:
  FiniteMetricSpace(SpaceSource source, std::vector<std::string> ids);
  double euclidean_distance(PointIndex x, PointIndex y) const noexcept;
  void check_triangle_inequality() const;

  SpaceSource source_;
  std::vector<std::string> ids_;
  std::unordered_map<std::string, PointIndex> index_;
  std::vector<double> table_;
  std::vector<double> coords_;
  std::size_t dimension_ = 0;
};

using SpacePtr = std::shared_ptr<const FiniteMetricSpace>;

inline SpacePtr share(FiniteMetricSpace space) {
  return std::make_shared<const FiniteMetricSpace>(std::move(space));
}

/// A subset of the points of a space, stored as sorted point indices.
class PointSet {
 public:
  PointSet() = default;
  /// Sorts and deduplicates; throws UnknownPoint for indices >= universe.
  PointSet(std::size_t universe, std::vector<PointIndex> members);

  static PointSet all(std::size_t universe);
  static PointSet none(std::size_t universe) { return PointSet(universe, {}); }
  static PointSet from_mask(const std::vector<char>& mask);

  std::size_t universe() const noexcept { return universe_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(PointIndex x) const;
  const std::vector<PointIndex>& members() const noexcept { return members_; }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  std::vector<char> mask() const;
  PointSet complement() const;
  bool is_subset_of(const PointSet& other) const;

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::size_t universe_ = 0;
  std::vector<PointIndex> members_;
};

/// Open ball {y : d(center, y) < radius}.
PointSet ball(const FiniteMetricSpace& space, PointIndex center, double radius);

/// B(A, R): union of the open balls of radius R around points of A.
PointSet neighborhood(const FiniteMetricSpace& space, const PointSet& subset, double radius);

/// dist(x, A) with dist(x, {}) = +inf.
double distance_to_set(const FiniteMetricSpace& space, PointIndex x, const PointSet& subset);

/// Classes of the transitive closure of d(x,y) <= R, ordered by smallest member.
std::vector<PointSet> r_components(const FiniteMetricSpace& space, double radius);

/// Maximum pairwise distance inside a subset (0 for empty or singleton sets).
double set_diameter(const FiniteMetricSpace& space, const PointSet& subset);

}  // namespace coarsescope
