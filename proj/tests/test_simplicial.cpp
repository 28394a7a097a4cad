#include <doctest.h>

#include <random>

#include "coarsescope/fixtures.hpp"
#include "coarsescope/oracle.hpp"

using namespace coarsescope;

namespace {

SimplexPoint pt(std::vector<SimplexPoint::Entry> e) { return SimplexPoint::from_weights(std::move(e)); }

SimplexPoint random_point(fixtures::Rng& rng, std::size_t vertices) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<SimplexPoint::Entry> e;
  double total = 0.0;
  for (VertexIndex v = 0; v < vertices; ++v) {
    if (u(rng) < 0.5) continue;
    e.emplace_back(v, u(rng) + 1e-3);
    total += e.back().second;
  }
  if (e.empty()) return SimplexPoint::vertex(0);
  for (auto& [v, w] : e) w /= total;
  return pt(e);
}

}  // namespace

TEST_CASE("l1 distances") {
  const auto a = SimplexPoint::vertex(0);
  const auto b = SimplexPoint::vertex(1);
  const auto half = pt({{0, 0.5}, {1, 0.5}});
  CHECK(l1_distance(half, half) == 0.0);
  CHECK(l1_distance(a, b) == 2.0);
  CHECK(l1_distance(half, a) == 1.0);
  CHECK(scaled_l1_distance(2.0, half, 1.0, a) == doctest::Approx(1.0));
  CHECK(scaled_l1_distance(0.5, a, 0.5, b) == doctest::Approx(1.0));
}

TEST_CASE("l1 agrees with the oracle and is a metric bounded by 2") {
  fixtures::Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = random_point(rng, 6);
    const auto q = random_point(rng, 6);
    const auto r = random_point(rng, 6);
    const double expected = oracle::l1(fixtures::weights(p), fixtures::weights(q));
    CHECK(l1_distance(p, q) == doctest::Approx(expected).epsilon(1e-15));
    CHECK(l1_distance(p, q) == l1_distance(q, p));
    CHECK(l1_distance(p, r) <= l1_distance(p, q) + l1_distance(q, r) + 1e-12);
    CHECK(l1_distance(p, q) <= 2.0 + 1e-12);
  }
}

TEST_CASE("stars, carriers and skeleta") {
  const auto v = SimplexPoint::vertex(3);
  CHECK(in_star(v, 3));
  CHECK_FALSE(in_star(v, 4));
  CHECK(in_star(pt({{0, 0.999}, {1, 0.001}}), 1));

  CHECK(carrier(v) == std::vector<VertexIndex>{3});
  CHECK(carrier(pt({{0, 0.5}, {1, 0.5}})) == std::vector<VertexIndex>{0, 1});
  CHECK(carrier(pt({{0, 0.7}, {1, 0.3}, {2, 0.0}})) == std::vector<VertexIndex>{0, 1});

  CHECK(in_skeleton(v, 0));
  CHECK_FALSE(in_skeleton(pt({{0, 0.5}, {1, 0.5}}), 0));
  CHECK(in_skeleton(pt({{0, 0.4}, {1, 0.3}, {2, 0.3}}), 2));
  CHECK_THROWS_AS(in_skeleton(v, -1), Error);

  CHECK(carrier_within(pt({{1, 1.0}}), pt({{0, 0.5}, {1, 0.5}})));
  CHECK_FALSE(carrier_within(pt({{2, 1.0}}), pt({{0, 0.5}, {1, 0.5}})));
}

TEST_CASE("normalization") {
  CHECK_THROWS_AS(pt({{0, 0.5}, {1, 0.4}}), Error);
  CHECK_THROWS_AS(pt({{0, -0.5}, {1, 1.5}}), Error);
  CHECK_THROWS_AS(pt({{0, 0.5}, {0, 0.5}}), Error);
  const auto p = pt({{0, 0.5}, {1, 0.5 + 5e-10}});
  double sum = 0.0;
  for (const auto& [v, w] : p.entries()) sum += w;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.weight(7) == 0.0);
}

TEST_CASE("complexes keep maximal simplices") {
  const Complex k({"a", "b", "c", "d"}, {{0, 1}, {0}, {0, 1, 2}});
  CHECK(k.maximal_simplices() == std::vector<std::vector<VertexIndex>>{{0, 1, 2}, {3}});
  CHECK(k.dimension() == 2);
  CHECK(k.contains({1, 2}));
  CHECK(k.contains({3}));
  CHECK_FALSE(k.contains({2, 3}));
  CHECK(k.index_of("c") == 2);
  CHECK_THROWS_AS(k.index_of("z"), Error);

  const auto f = Complex::from_labels({"y", "x"}, {{"y", "x"}});
  CHECK(f.labels() == std::vector<std::string>{"x", "y"});
  CHECK(f.contains({0, 1}));
  CHECK(Complex::full({"p", "q", "r"}).dimension() == 2);
}

TEST_CASE("nerves of small covers") {
  const auto p10 = fixtures::line(10);
  const Cover two(p10, {"a", "b"}, {PointSet(10, {0, 1, 2, 3, 4, 5}), PointSet(10, {4, 5, 6, 7, 8, 9})});
  const Complex n2 = nerve(two);
  CHECK(n2.maximal_simplices() == std::vector<std::vector<VertexIndex>>{{0, 1}});

  const Cover apart(p10, {"a", "b"}, {PointSet(10, {0, 1, 2, 3, 4}), PointSet(10, {5, 6, 7, 8, 9})});
  CHECK(nerve(apart).maximal_simplices() == std::vector<std::vector<VertexIndex>>{{0}, {1}});

  const Cover three(p10, {"a", "b", "c"},
                    {PointSet(10, {0, 1, 2, 3, 4}), PointSet(10, {4, 5, 6}), PointSet(10, {4, 7, 8, 9})});
  CHECK(nerve(three).maximal_simplices() == std::vector<std::vector<VertexIndex>>{{0, 1, 2}});
}

TEST_CASE("nerve matches the oracle and its dimension is multiplicity - 1") {
  fixtures::Rng rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const auto space = fixtures::random_euclidean(rng, 20, 2, 12);
    const Cover cover = fixtures::random_cover(rng, space, 1 + trial % 8);
    const auto expected = oracle::nerve(fixtures::membership(cover));
    const Complex k = nerve(cover);
    std::vector<std::vector<std::size_t>> got(k.maximal_simplices().begin(), k.maximal_simplices().end());
    CHECK(got == expected);
    CHECK(k.dimension() + 1 == int(compute_stats(cover).multiplicity));
  }
}
