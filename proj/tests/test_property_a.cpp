#include <doctest.h>

#include <algorithm>
#include <set>

#include "coarsescope/fixtures.hpp"
#include "scenarios.hpp"

using namespace coarsescope;

namespace {

TaggedSet tagged(std::vector<PointIndex> points, std::uint32_t copy = 1) {
  std::vector<TaggedPoint> out;
  for (PointIndex p : points) out.push_back({p, copy});
  return make_tagged_set(std::move(out));
}

// Counting oracle over std::set.
double oracle_ratio(const TaggedSet& a, const TaggedSet& b) {
  const std::set<TaggedPoint> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::size_t both = 0, either = 0;
  for (const auto& t : sa) both += sb.count(t);
  std::set<TaggedPoint> u = sa;
  u.insert(sb.begin(), sb.end());
  either = u.size();
  return both == 0 ? kInfinity : double(either - both) / double(both);
}

SpacePtr two_clusters() {
  return share(FiniteMetricSpace::from_euclidean({"a0", "a1", "b0", "b1"}, {{0.0}, {1.0}, {100.0}, {101.0}}));
}

PropertyAInput small_input() {
  PropertyAInput in;
  in.delta = 0.9;
  in.M = 2;
  in.R = 4.5;
  in.eps = 0.9;
  return in;
}

}  // namespace

TEST_CASE("symmetric difference ratios") {
  const auto abc = tagged({0, 1, 2});
  const auto bcd = tagged({1, 2, 3});
  CHECK(symdiff_ratio(abc, abc) == 0.0);
  CHECK(symdiff_ratio(abc, bcd) == 1.0);
  CHECK(symdiff_ratio(abc, tagged({5, 6})) == kInfinity);
  CHECK(symdiff_ratio(abc, tagged({0, 1, 2}, 2)) == kInfinity);
  const auto counts = count_overlap(abc, bcd);
  CHECK(counts.intersection == 2);
  CHECK(counts.symmetric_difference == 2);
  CHECK(make_tagged_set({{2, 1}, {0, 1}, {2, 1}}) == tagged({0, 2}));

  fixtures::Rng rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<TaggedPoint> a, b;
    for (int k = 0; k < 12; ++k) {
      a.push_back({PointIndex(rng() % 8), std::uint32_t(1 + rng() % 2)});
      b.push_back({PointIndex(rng() % 8), std::uint32_t(1 + rng() % 2)});
    }
    const auto sa = make_tagged_set(a), sb = make_tagged_set(b);
    CHECK(symdiff_ratio(sa, sb) == oracle_ratio(sa, sb));
    CHECK(symdiff_ratio(sa, sb) == symdiff_ratio(sb, sa));
  }
}

TEST_CASE("ball families on a path") {
  const auto path = fixtures::path_graph(40);
  const auto f = ball_family(path, 3.5, 1);
  CHECK(f.set(20).size() == 7);
  CHECK(symdiff_ratio(f, 20, 21) == doctest::Approx(1.0 / 3.0));
  const auto deep = ball_family(path, 3.5, 4);
  CHECK(deep.set(20).size() == 28);
  CHECK(symdiff_ratio(deep, 20, 21) == doctest::Approx(1.0 / 3.0));
  CHECK(symdiff_ratio(f, 0, 39) == kInfinity);

  const auto worst = worst_symdiff_ratio(f, 1.0);
  CHECK(worst.pair.has_value());
  double expected = 0.0;
  for (PointIndex x = 0; x + 1 < 40; ++x) expected = std::max(expected, oracle_ratio(f.set(x), f.set(x + 1)));
  CHECK(worst.ratio == doctest::Approx(expected));
  CHECK_THROWS_AS(ball_family(path, 0.0, 1), Error);
  CHECK_THROWS_AS(ball_family(path, 1.0, 0), Error);
}

TEST_CASE("set families reject foreign elements") {
  const auto path = fixtures::path_graph(5);
  std::vector<TaggedSet> sets(5, tagged({0}));
  CHECK_THROWS_WITH_AS(SetFamily(path, 1.5, sets), doctest::Contains("FOREIGN_POINT"), Error);
  sets = std::vector<TaggedSet>(5);
  CHECK_THROWS_AS(SetFamily(path, 10.0, sets), Error);
  for (PointIndex x = 0; x < 5; ++x) sets[x] = tagged({x}, 0);
  CHECK_THROWS_WITH_AS(SetFamily(path, 10.0, sets), doctest::Contains("FOREIGN_POINT"), Error);
}

TEST_CASE("small sets give R-components") {
  const auto space = two_clusters();
  const SetFamily family(space, 5.0, {tagged({0, 1}), tagged({0, 1}), tagged({2, 3}), tagged({2, 3})});
  const auto cx = build_cx(family, small_input());
  CHECK(cx.verified());
  CHECK(std::none_of(cx.large.begin(), cx.large.end(), [](char c) { return c != 0; }));
  CHECK(cx.C[0] == tagged({0, 1}));
  CHECK(cx.C[1] == tagged({0, 1}));
  CHECK(cx.C[3] == tagged({2, 3}));
  CHECK(cx.precondition.ratio == 0.0);
}

TEST_CASE("large sets absorb the 1/delta ball") {
  const auto s = scenarios::path_property_a(120);
  const auto cx = build_cx(s.family, s.input);
  for (const auto& c : cx.checks) {
    INFO(c.name);
    CHECK(c.passed);
  }
  for (PointIndex x = 0; x < 120; ++x) {
    CHECK(cx.large[x]);
    CHECK(std::includes(cx.C[x].begin(), cx.C[x].end(), s.family.set(x).begin(), s.family.set(x).end()));
    for (PointIndex y : ball(*s.space, x, 1.0 / s.input.delta)) {
      CHECK(std::binary_search(cx.C[x].begin(), cx.C[x].end(), TaggedPoint{y, 1}));
    }
  }
}

TEST_CASE("build_cx hypotheses") {
  const auto path = fixtures::path_graph(60);
  auto in = small_input();
  const auto wide = ball_family(path, 40.0, 1);
  in.R = 1.0;
  CHECK_THROWS_WITH_AS(build_cx(wide, in), doctest::Contains("PARAMETER_CONSTRAINT_FAILED"), Error);
  in = small_input();
  CHECK_THROWS_WITH_AS(build_cx(ball_family(path, 3.0, 1), in), doctest::Contains("PARAMETER_CONSTRAINT_FAILED"),
                       Error);
  // B(x, 1/0.9) holds 3 path vertices but M = 2.
  CHECK_THROWS_WITH_AS(build_cx(wide, in), doctest::Contains("BALL_TOO_BIG"), Error);
  in.M = 3;
  CHECK_THROWS_WITH_AS(build_cx(ball_family(path, 5.0, 1), in), doctest::Contains("RATIO_PRECONDITION_FAILED"), Error);
}

TEST_CASE("cx_partition counts copies") {
  const auto path = fixtures::path_graph(20);
  auto in = small_input();
  in.M = 3;
  std::vector<TaggedSet> singletons;
  for (PointIndex y = 0; y < 20; ++y) singletons.push_back(tagged({y}));
  const auto ind = cx_partition(singletons, path, in, 10.0);
  for (PointIndex y = 0; y < 20; ++y) CHECK(ind.f(y) == SimplexPoint::vertex(y));
  CHECK(l1_distance(ind.f(3), ind.f(4)) == 2.0);

  std::vector<TaggedSet> balls;
  for (PointIndex y = 0; y < 20; ++y) {
    std::vector<TaggedPoint> t;
    for (PointIndex z : ball(*path, y, 2.0)) {
      t.push_back({z, 1});
      t.push_back({z, 2});
    }
    if (y == 10) t.push_back({10, 3});
    balls.push_back(make_tagged_set(t));
  }
  const auto r = cx_partition(balls, path, in, 10.0);
  CHECK(r.f(5).weight(4) == doctest::Approx(1.0 / 3.0));
  CHECK(r.f(5).weight(7) == 0.0);
  CHECK(r.f(10).weight(10) == doctest::Approx(3.0 / 7.0));
  CHECK(r.f(10).weight(11) == doctest::Approx(2.0 / 7.0));

  CHECK_THROWS_AS(cx_partition(std::vector<TaggedSet>(20), path, in, 10.0), Error);
  singletons[0] = tagged({25});
  CHECK_THROWS_WITH_AS(cx_partition(singletons, path, in, 10.0), doctest::Contains("FOREIGN_POINT"), Error);
}

TEST_CASE("Property A pipeline on a path") {
  const auto s = scenarios::path_property_a(150);
  const auto cx = build_cx(s.family, s.input);
  REQUIRE(cx.verified());
  const auto part = cx_partition(cx.C, s.space, s.input, s.family.S());
  for (const auto& c : part.checks) {
    INFO(c.name);
    CHECK(c.passed);
  }
  CHECK(part.verified());
  const auto cert = check_delta_pu(part.f, s.input.delta, 4.0 * s.family.S());
  CHECK(cert.verdict);
}

TEST_CASE("partitions of unity and Property A data") {
  const auto p10 = fixtures::line(10);
  const PUMap one(p10, Complex::full({"s"}), std::vector<SimplexPoint>(10, SimplexPoint::vertex(0)));
  const auto cert = property_a_to_pu(one, 4.0, 0.5, 9.0);
  CHECK(cert.pu.verdict);
  CHECK(cert.lipschitz_from_variation_ok);
  CHECK(cert.pu.delta == 0.5);
  CHECK_THROWS_WITH_AS(property_a_to_pu(one, 4.0, 0.5, 8.0), doctest::Contains("SUPPORT_TOO_BIG"), Error);

  std::vector<SimplexPoint> blocks;
  for (int x = 0; x < 10; ++x) blocks.push_back(SimplexPoint::vertex(x / 5));
  const PUMap indicator(p10, Complex::full({"a", "b"}), blocks);
  CHECK_THROWS_WITH_AS(property_a_to_pu(indicator, 2.0, 1.9, 9.0), doctest::Contains("VARIATION_FAILED"), Error);

  const PUMap phi = barycentric_map(fixtures::interval_cover(p10, {{0, 6}, {4, 10}}));
  const double lip = measured_delta(phi);
  const auto data = pu_to_property_a(phi, 3.0, lip * 4.0);
  CHECK(data.delta == doctest::Approx(lip));
  CHECK(data.variation_ok);
  CHECK(data.verdict);
  CHECK(data.support_diameter == 5.0);
  CHECK_FALSE(pu_to_property_a(phi, 3.0, lip * 2.0).verdict);
}
