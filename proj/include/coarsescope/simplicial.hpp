#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coarsescope/core.hpp"

namespace coarsescope {

class Cover;

/// A finitely supported probability vector on vertices, i.e. a point of Delta(S).
///
/// Only the support is stored, sorted by vertex; every stored weight is > 0.
class SimplexPoint {
 public:
  using Entry = std::pair<VertexIndex, double>;

  SimplexPoint() = default;

  static SimplexPoint vertex(VertexIndex v);

  /// Validates weights (nonnegative, sum within tau of 1) and renormalizes
  /// when the sum is off by at most tau. Zero weights are dropped; repeated
  /// vertices are rejected. Throws NotNormalized.
  static SimplexPoint from_weights(std::vector<Entry> weights);

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::size_t support_size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  double weight(VertexIndex v) const;

  friend bool operator==(const SimplexPoint&, const SimplexPoint&) = default;

 private:
  std::vector<Entry> entries_;
};

/// Sum over the union of supports of |p(v) - q(v)|.
double l1_distance(const SimplexPoint& p, const SimplexPoint& q);

/// l1 distance between the scaled vectors a*p and b*q in l1(S).
double scaled_l1_distance(double a, const SimplexPoint& p, double b, const SimplexPoint& q);

/// p lies in the open star of v: p(v) > 0.
bool in_star(const SimplexPoint& p, VertexIndex v);

/// Support of p, the smallest simplex of Delta(S) containing it.
std::vector<VertexIndex> carrier(const SimplexPoint& p);

bool in_skeleton(const SimplexPoint& p, int n);

/// carrier(p) is a subset of carrier(q).
bool carrier_within(const SimplexPoint& p, const SimplexPoint& q);

/// A simplicial complex inside Delta(S), stored by its maximal simplices.
///
/// Vertex labels are kept in ascending order; vertex indices follow that order.
class Complex {
 public:
  Complex() = default;

  /// `simplices` may contain non-maximal faces; they are reduced. Every vertex
  /// is a simplex, so vertices not covered by any listed simplex become
  /// isolated maximal simplices.
  Complex(std::vector<std::string> labels, std::vector<std::vector<VertexIndex>> simplices,
          std::vector<std::string> ambient = {});

  /// Builds from simplices given by label. Labels are sorted first.
  static Complex from_labels(std::vector<std::string> labels,
                             const std::vector<std::vector<std::string>>& simplices);

  /// The full simplex on the given labels.
  static Complex full(std::vector<std::string> labels);

  std::size_t vertex_count() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(VertexIndex v) const { return labels_.at(v); }
  std::optional<VertexIndex> find(const std::string& label) const;
  /// Throws UnknownIndex.
  VertexIndex index_of(const std::string& label) const;

  const std::vector<std::vector<VertexIndex>>& maximal_simplices() const noexcept { return maximal_; }
  const std::vector<std::string>& ambient() const noexcept { return ambient_; }

  /// Sorted vertex set is a face of some maximal simplex.
  bool contains(const std::vector<VertexIndex>& simplex) const;

  /// Largest simplex dimension; -1 for the empty complex.
  int dimension() const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<VertexIndex>> maximal_;
  std::vector<std::vector<std::size_t>> by_vertex_;  // maximal simplices containing each vertex
  std::vector<std::string> ambient_;
};

/// Nerve of a cover: vertices are the cover labels, simplices the index sets
/// with nonempty common intersection.
Complex nerve(const Cover& cover);

}  // namespace coarsescope
