#pragma once

#include <cstddef>
#include <string>

#include "coarsescope/asdim.hpp"
#include "coarsescope/filler.hpp"
#include "coarsescope/property_a.hpp"

namespace scenarios {

using namespace coarsescope;

/// Filler input on a 1-D lattice covering [0, 10/delta] for the schedule found
/// with the brick mesh bound S(k) = 2(n+1)k. f is the barycentric map of
/// [0, 7/delta) and [3/delta, inf); A = [0, 3/delta); U is the brick cover at R = k.
struct LatticeFiller {
  FillerSchedule schedule;
  SpacePtr space;
  double spacing = 1.0;
  std::size_t points = 0;
  double length = 0.0;  // 10/delta
  PUMap f;
  PointSet A;
  Cover U;
  double f_mesh_bound = 0.0;  // 7/delta
  std::string coarsening;
};

LatticeFiller lattice_filler(int n, double eps, std::size_t max_points = 5000);

/// Path graph with ball_family inputs: delta = 0.9, M = 3, R = 4.5, S = 109.5.
struct PathPropertyA {
  SpacePtr space;
  SetFamily family;
  PropertyAInput input;
};

PathPropertyA path_property_a(std::size_t vertices = 300);

}  // namespace scenarios
