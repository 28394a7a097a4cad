#pragma once

#include <random>
#include <utility>
#include <vector>

#include "coarsescope/oracle.hpp"
#include "coarsescope/pu_maps.hpp"

namespace coarsescope::fixtures {

using Rng = std::mt19937_64;

/// Points 0, g, 2g, ... on the line, ids "p0000", ...
SpacePtr line(std::size_t count, double spacing = 1.0);

/// w x h grid with the given spacing in the plane.
SpacePtr grid(std::size_t width, std::size_t height, double spacing = 1.0);

/// Unit-weight path graph on `count` vertices.
SpacePtr path_graph(std::size_t count);

/// Distinct integer points in [0, extent)^dim.
SpacePtr random_euclidean(Rng& rng, std::size_t count, std::size_t dim, int extent);

/// Connected graph: a random spanning tree plus `extra` edges, integer weights in [1, max_weight].
SpacePtr random_graph(Rng& rng, std::size_t count, std::size_t extra, int max_weight);

/// Up to `elements` random balls; uncovered points join the ball of the nearest center.
Cover random_cover(Rng& rng, const SpacePtr& space, std::size_t elements);

/// Cover of a Euclidean line space by half-open coordinate intervals [lo, hi).
Cover interval_cover(const SpacePtr& space, const std::vector<std::pair<double, double>>& intervals);

oracle::Matrix distance_matrix(const FiniteMetricSpace& space);
oracle::Membership membership(const Cover& cover);
oracle::Weights weights(const SimplexPoint& p);
std::vector<oracle::Weights> weights(const PUMap& f);

}  // namespace coarsescope::fixtures
