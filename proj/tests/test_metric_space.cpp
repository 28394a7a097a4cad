#include <doctest.h>

#include <random>

#include "coarsescope/fixtures.hpp"
#include "coarsescope/oracle.hpp"

using namespace coarsescope;

namespace {

SpacePtr integers(std::vector<double> xs) {
  std::vector<std::string> ids;
  std::vector<std::vector<double>> coords;
  for (double x : xs) {
    ids.push_back(std::to_string(static_cast<int>(x)));
    coords.push_back({x});
  }
  return share(FiniteMetricSpace::from_euclidean(ids, coords));
}

std::vector<PointIndex> members(const PointSet& s) { return s.members(); }

}  // namespace

TEST_CASE("graph distances equal Floyd-Warshall on random graphs") {
  fixtures::Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 12;
    const auto space = fixtures::random_graph(rng, n, n, 7);
    std::vector<std::tuple<std::size_t, std::size_t, double>> edges;
    // Every pair as an edge with the computed length: Floyd-Warshall must leave them unchanged.
    for (PointIndex x = 0; x < n; ++x)
      for (PointIndex y = x + 1; y < n; ++y) edges.emplace_back(x, y, space->distance(x, y));
    const auto expected = oracle::floyd_warshall(n, edges);
    CHECK(expected == fixtures::distance_matrix(*space));
  }
}

TEST_CASE("graph shortest paths from an edge list") {
  const std::vector<std::tuple<std::size_t, std::size_t, double>> edges = {{0, 1, 1.0}, {1, 2, 1.0}, {0, 3, 5.0},
                                                                           {2, 3, 1.5}};
  const auto expected = oracle::floyd_warshall(4, edges);
  const auto space = FiniteMetricSpace::from_graph(
      {"a", "b", "c", "d"}, {{"a", "b", 1.0}, {"b", "c", 1.0}, {"a", "d", 5.0}, {"c", "d", 1.5}});
  CHECK(expected[0][3] == doctest::Approx(3.5));
  CHECK(fixtures::distance_matrix(space) == expected);
}

TEST_CASE("three source formats") {
  const auto m = FiniteMetricSpace::from_matrix({"a", "b"}, {{0, 1}, {1, 0}});
  CHECK(m.size() == 2);
  CHECK(m.distance(0, 1) == 1.0);

  const auto e = FiniteMetricSpace::from_euclidean({"o", "p"}, {{0, 0}, {3, 4}});
  CHECK(e.distance(0, 1) == 5.0);
  CHECK(e.euclidean_dimension() == 2u);

  const auto g = FiniteMetricSpace::from_graph({"0", "1", "2"}, {{"0", "1", 1.0}, {"1", "2", 1.0}});
  CHECK(g.distance(g.index_of("0"), g.index_of("2")) == 2.0);
}

TEST_CASE("load errors") {
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    FAIL("no error");
    return ErrorCode::InvalidArgument;
  };
  CHECK(code_of([] { FiniteMetricSpace::from_matrix({"a", "b"}, {{0, 1}, {2, 0}}); }) ==
        ErrorCode::AsymmetricMatrix);
  CHECK(code_of([] {
          FiniteMetricSpace::from_matrix({"a", "b", "c"}, {{0, 1, 5}, {1, 0, 1}, {5, 1, 0}});
        }) == ErrorCode::TriangleViolation);
  CHECK(code_of([] { FiniteMetricSpace::from_graph({"a", "b", "c"}, {{"a", "b", 1.0}}); }) ==
        ErrorCode::DisconnectedGraph);
  CHECK(code_of([] { FiniteMetricSpace::from_euclidean({"a", "a"}, {{0}, {1}}); }) == ErrorCode::DuplicateId);
  CHECK(code_of([] { FiniteMetricSpace::from_euclidean({"a", "b"}, {{1}, {1}}); }) == ErrorCode::CoincidentPoints);
  CHECK(code_of([] { fixtures::line(3)->index_of("nope"); }) == ErrorCode::UnknownPoint);
}

TEST_CASE("the triangle violation names the offending triple") {
  try {
    FiniteMetricSpace::from_matrix({"a", "b", "c"}, {{0, 1, 5}, {1, 0, 1}, {5, 1, 0}});
    FAIL("accepted a non-metric");
  } catch (const Error& e) {
    const std::string what = e.what();
    CHECK(what.find("a") != std::string::npos);
    CHECK(what.find("c") != std::string::npos);
  }
}

TEST_CASE("open balls on the integers 0..9") {
  const auto p10 = fixtures::line(10);
  CHECK(members(ball(*p10, 0, 3)) == std::vector<PointIndex>{0, 1, 2});
  CHECK(ball(*p10, 0, 0).empty());
  CHECK(ball(*p10, 5, 100).size() == 10);
  CHECK(members(ball(*p10, 4, 1.5)) == std::vector<PointIndex>{3, 4, 5});
}

TEST_CASE("neighborhoods are unions of open balls") {
  const auto p10 = fixtures::line(10);
  const PointSet zero(10, {0});
  CHECK(members(neighborhood(*p10, zero, 3)) == std::vector<PointIndex>{0, 1, 2});
  CHECK(neighborhood(*p10, PointSet::none(10), 5).empty());
  CHECK(members(neighborhood(*p10, PointSet(10, {0, 9}), 2)) == std::vector<PointIndex>{0, 1, 8, 9});
}

TEST_CASE("neighborhood agrees with a brute-force union") {
  fixtures::Rng rng(9);
  std::uniform_real_distribution<double> radius(0.0, 15.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto space = fixtures::random_euclidean(rng, 25, 2, 20);
    std::vector<PointIndex> a;
    for (PointIndex x = 0; x < space->size(); x += 3 + trial % 4) a.push_back(x);
    const PointSet A(space->size(), a);
    const double r = radius(rng);
    std::vector<PointIndex> expected;
    for (PointIndex y = 0; y < space->size(); ++y) {
      bool hit = false;
      for (PointIndex x : a) hit = hit || space->distance(x, y) < r;
      if (hit) expected.push_back(y);
    }
    CHECK(members(neighborhood(*space, A, r)) == expected);
  }
}

TEST_CASE("distance to a set") {
  const auto p10 = fixtures::line(10);
  CHECK(distance_to_set(*p10, 0, PointSet(10, {4, 7})) == 4.0);
  CHECK(distance_to_set(*p10, 0, PointSet::none(10)) == kInfinity);
}

TEST_CASE("R-components use chains with steps <= R") {
  const auto x = integers({0, 1, 2, 10, 11});
  const auto two = r_components(*x, 2);
  REQUIRE(two.size() == 2);
  CHECK(members(two[0]) == std::vector<PointIndex>{0, 1, 2});
  CHECK(members(two[1]) == std::vector<PointIndex>{3, 4});
  CHECK(r_components(*x, 8).size() == 1);
  CHECK(r_components(*fixtures::line(10), 1).size() == 1);
  CHECK(r_components(*fixtures::line(10), 0.999).size() == 10);
}

TEST_CASE("ball monotonicity and component coarsening") {
  fixtures::Rng rng(17);
  const auto space = fixtures::random_graph(rng, 30, 10, 5);
  for (PointIndex x = 0; x < space->size(); ++x) {
    CHECK(ball(*space, x, 2).is_subset_of(ball(*space, x, 4)));
  }
  std::size_t previous = space->size() + 1;
  for (double r : {0.5, 1.0, 2.0, 3.0, 5.0, 8.0}) {
    const auto parts = r_components(*space, r);
    std::size_t total = 0;
    for (const auto& p : parts) total += p.size();
    CHECK(total == space->size());
    CHECK(parts.size() <= previous);
    previous = parts.size();
  }
}

TEST_CASE("point sets") {
  const PointSet s(6, {4, 1, 1, 3});
  CHECK(s.members() == std::vector<PointIndex>{1, 3, 4});
  CHECK(s.complement().members() == std::vector<PointIndex>{0, 2, 5});
  CHECK(PointSet::from_mask(s.mask()) == s);
  CHECK(s.is_subset_of(PointSet::all(6)));
  CHECK_THROWS_AS(PointSet(3, {3}), Error);
}

TEST_CASE("diameters") {
  const auto p10 = fixtures::line(10);
  CHECK(p10->diameter() == 9.0);
  CHECK(set_diameter(*p10, PointSet(10, {2, 5, 3})) == 3.0);
  CHECK(set_diameter(*p10, PointSet(10, {2})) == 0.0);
}
