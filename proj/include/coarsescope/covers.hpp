#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coarsescope/metric_space.hpp"

namespace coarsescope {

/// An indexed cover {U_s} of a finite metric space.
///
/// Empty elements are dropped at construction and elements are stored in
/// ascending label order, so the element index doubles as the label order.
class Cover {
 public:
  /// Throws NotACover (with an uncovered witness point) or DuplicateId.
  Cover(SpacePtr space, std::vector<std::string> labels, std::vector<PointSet> elements,
        std::string name = {});

  const FiniteMetricSpace& space() const noexcept { return *space_; }
  const SpacePtr& space_ptr() const noexcept { return space_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::string& name() const noexcept { return name_; }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t s) const { return labels_.at(s); }
  const PointSet& element(std::size_t s) const { return elements_.at(s); }
  const std::vector<PointSet>& elements() const noexcept { return elements_; }

  /// Throws UnknownIndex.
  std::size_t index_of(const std::string& label) const;

 private:
  SpacePtr space_;
  std::vector<std::string> labels_;
  std::vector<PointSet> elements_;
  std::string name_;
};

struct CoverStats {
  double lebesgue = kInfinity;
  std::size_t multiplicity = 0;
  double mesh = 0.0;
  std::vector<double> local_lebesgue;
  std::vector<std::size_t> local_multiplicity;
};

/// f_s(x) = dist(x, X \ U_s); +inf when U_s = X, 0 when x is outside U_s.
double member_distance(const Cover& cover, std::size_t s, PointIndex x);

/// f_s evaluated on the members of U_s, aligned with cover.element(s).members().
std::vector<double> member_distances(const Cover& cover, std::size_t s);

CoverStats compute_stats(const Cover& cover);

/// Zero-padded label so that lexicographic and numeric order agree.
std::string indexed_label(std::string_view prefix, std::size_t index, std::size_t count);

struct BrickCover {
  Cover cover;
  double mesh_bound = 0.0;  // S(R) = 2(n+1) R sqrt(d)
};

/// Shifted-brick cover: n+1 lattices of axis-aligned boxes of side 2(n+1)R,
/// lattice j shifted by 2jR along every axis. Requires a Euclidean space.
BrickCover brick_cover(const SpacePtr& space, double radius, int n);

/// The mesh bound reported by brick_cover for coordinate dimension d.
double brick_mesh_bound(double radius, int n, std::size_t dimension);

struct GreedyCoverResult {
  bool success = false;
  std::size_t multiplicity = 0;
  Cover cover;  // best cover found, also on failure
};

/// Greedy ball cover with Lebesgue number >= R aiming for multiplicity <= target.
///
/// Centers form a greedy R-net in identifier order; each center contributes
/// the open ball of radius 2R, placed in the color class it overlaps least and
/// merged with same-color elements it meets as long as the merged diameter stays
/// <= mesh_cap. A ball that fits in no color opens a new one.
GreedyCoverResult greedy_cover(const SpacePtr& space, double radius, std::size_t target_mult,
                               double mesh_cap = kInfinity);

}  // namespace coarsescope
