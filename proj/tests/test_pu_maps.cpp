#include <doctest.h>

#include <algorithm>
#include <random>

#include "coarsescope/fixtures.hpp"
#include "coarsescope/oracle.hpp"
#include "coarsescope/skeleton_push.hpp"

using namespace coarsescope;

namespace {

Cover two_intervals(const SpacePtr& p10) {
  return Cover(p10, {"a", "b"}, {PointSet(10, {0, 1, 2, 3, 4, 5}), PointSet(10, {4, 5, 6, 7, 8, 9})});
}

// Vertex-valued map: point x goes to vertex labels[pick(x)].
PUMap vertex_map(const SpacePtr& space, std::vector<std::string> labels, const std::vector<VertexIndex>& pick) {
  std::vector<SimplexPoint> values;
  for (auto v : pick) values.push_back(SimplexPoint::vertex(v));
  return PUMap(space, Complex::full(std::move(labels)), std::move(values));
}

PUMap constant_map(const SpacePtr& space) {
  return vertex_map(space, {"v"}, std::vector<VertexIndex>(space->size(), 0));
}

}  // namespace

TEST_CASE("Lipschitz checks") {
  const auto p10 = fixtures::line(10);
  const auto c = check_lipschitz(constant_map(p10), 0.0, 0.0);
  CHECK(c.passed);
  CHECK(c.lambda_hat == 0.0);

  const auto two = fixtures::line(2);
  const PUMap jump = vertex_map(two, {"a", "b"}, {0, 1});
  CHECK(check_lipschitz(jump, 2.0, 0.0).passed);
  CHECK_FALSE(check_lipschitz(jump, 1.9, 0.0).passed);
  CHECK(check_lipschitz(jump, 1.9, 0.0).worst_pair.has_value());

  const PUMap phi = barycentric_map(two_intervals(p10));
  const double expected = oracle::lipschitz_hat(fixtures::distance_matrix(*p10), fixtures::weights(phi), 0.0);
  const auto r = check_lipschitz(phi, 8.0, 0.0);
  CHECK(r.passed);
  CHECK(r.lambda_hat == doctest::Approx(expected));
}

TEST_CASE("variation checks are strict") {
  const auto p10 = fixtures::line(10);
  CHECK(check_variation(constant_map(p10), 5.0, 0.1).passed);
  const auto two = fixtures::line(2);
  const PUMap jump = vertex_map(two, {"a", "b"}, {0, 1});
  CHECK_FALSE(check_variation(jump, 1.0, 2.0).passed);
  CHECK(check_variation(jump, 1.0, 2.001).passed);
  CHECK(check_variation(jump, 0.5, 0.1).passed);
  CHECK_THROWS_AS(check_variation(jump, 1.0, 0.0), Error);
}

TEST_CASE("variation to Lipschitz constants") {
  const auto [l1, c1] = variation_to_lipschitz(2.0, 1.0);
  CHECK(l1 == 0.5);
  CHECK(c1 == 1.0);
  const auto [l2, c2] = variation_to_lipschitz(1.0, 2.0);
  CHECK(l2 == 0.0);
  CHECK(c2 == 2.0);
  CHECK_THROWS_AS(variation_to_lipschitz(1.0, 2.5), Error);
  CHECK_THROWS_AS(variation_to_lipschitz(1.0, 0.0), Error);
}

TEST_CASE("random maps with verified variation pass the derived Lipschitz check") {
  fixtures::Rng rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int tested = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto space = fixtures::random_euclidean(rng, 25, 2, 20);
    const PUMap f = barycentric_map(fixtures::random_cover(rng, space, 4));
    const double R = 1.0 + 10.0 * u(rng);
    const double eps = std::min(2.0, check_variation(f, R, 3.0).max_l1 + 0.05);
    if (!check_variation(f, R, eps).passed) continue;
    const auto [lambda, C] = variation_to_lipschitz(R, eps);
    CHECK(check_lipschitz(f, lambda, C).passed);
    ++tested;
  }
  CHECK(tested > 40);
}

TEST_CASE("star preimages and map Lebesgue numbers") {
  const auto p10 = fixtures::line(10);
  const Cover two = two_intervals(p10);
  const PUMap phi = barycentric_map(two);
  const Cover back = star_preimage_cover(phi);
  CHECK(back.elements() == two.elements());
  CHECK(map_lebesgue(phi) == 2.0);

  const Cover whole = star_preimage_cover(constant_map(p10));
  CHECK(whole.size() == 1);
  CHECK(map_lebesgue(constant_map(p10)) == kInfinity);

  std::vector<VertexIndex> split;
  for (int x = 0; x < 10; ++x) split.push_back(x < 5 ? 0 : 1);
  CHECK(map_lebesgue(vertex_map(p10, {"a", "b", "unused"}, split)) == 1.0);
  CHECK(star_preimage_cover(vertex_map(p10, {"a", "b", "unused"}, split)).size() == 2);
}

TEST_CASE("Lebesgue lower bound") {
  CHECK(lebesgue_lower_bound(1.0 / 12.0, 0.25, 1) == doctest::Approx(3.0));
  CHECK(lebesgue_lower_bound(1.0, 0.0, 0) == 1.0);
  CHECK_THROWS_AS(lebesgue_lower_bound(1.0, 0.5, 1), Error);
}

TEST_CASE("Lebesgue bound holds on random maps into 1-skeletons") {
  fixtures::Rng rng(31);
  std::uniform_real_distribution<double> u(0.0, 0.45);
  for (int trial = 0; trial < 50; ++trial) {
    const auto space = fixtures::random_graph(rng, 20, 8, 4);
    const PUMap f = fold_map(barycentric_map(fixtures::random_cover(rng, space, 5)), 1);
    const double C = u(rng);
    const double lambda = check_lipschitz(f, 0.0, C).lambda_hat;
    if (!(lambda > 0.0)) continue;
    const double expected = oracle::map_lebesgue(fixtures::distance_matrix(*space), fixtures::weights(f));
    CHECK(map_lebesgue(f) == expected);
    CHECK(expected >= lebesgue_lower_bound(lambda, C, 1) - 1e-9);
  }
}

TEST_CASE("barycentric map of the two-interval cover") {
  const auto p10 = fixtures::line(10);
  const PUMap phi = barycentric_map(two_intervals(p10));
  CHECK(phi(4).weight(0) == doctest::Approx(2.0 / 3.0));
  CHECK(phi(4).weight(1) == doctest::Approx(1.0 / 3.0));
  CHECK(phi(0) == SimplexPoint::vertex(0));
  const PUMap whole = barycentric_map(Cover(p10, {"X"}, {PointSet::all(10)}));
  for (PointIndex x = 0; x < 10; ++x) CHECK(whole(x) == SimplexPoint::vertex(0));
}

TEST_CASE("barycentric map agrees with the oracle") {
  fixtures::Rng rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const auto space = trial % 2 ? fixtures::random_graph(rng, 15, 5, 3) : fixtures::random_euclidean(rng, 15, 2, 9);
    const Cover cover = fixtures::random_cover(rng, space, 1 + trial % 6);
    const auto m = fixtures::membership(cover);
    const auto expected = oracle::barycentric(fixtures::distance_matrix(*space), m);
    const PUMap phi = barycentric_map(cover);
    const auto stats = compute_stats(cover);
    for (PointIndex x = 0; x < space->size(); ++x) {
      CHECK(oracle::l1(expected[x], fixtures::weights(phi(x))) < 1e-12);
      CHECK(in_skeleton(phi(x), int(stats.multiplicity) - 1));
    }
    // An element equal to X has f_s = +inf everywhere and takes all the weight.
    const bool has_whole = std::any_of(cover.elements().begin(), cover.elements().end(),
                                       [&](const PointSet& u) { return u.size() == space->size(); });
    if (!has_whole) CHECK(star_preimage_cover(phi).elements() == cover.elements());
  }
}

TEST_CASE("barycentric bound") {
  const auto p10 = fixtures::line(10);
  const auto r = check_barycentric_bound(two_intervals(p10));
  CHECK(r.bound == 8.0);
  CHECK(r.passed);
  const auto whole = check_barycentric_bound(Cover(p10, {"X"}, {PointSet::all(10)}));
  CHECK(whole.bound == 0.0);
  CHECK(whole.passed);

  fixtures::Rng rng(55);
  for (int trial = 0; trial < 30; ++trial) {
    const auto space = fixtures::random_euclidean(rng, 40, 1 + trial % 3, 15);
    CHECK(check_barycentric_bound(fixtures::random_cover(rng, space, 2 + trial % 10)).passed);
  }
}

TEST_CASE("delta-partition of unity certificates") {
  const auto p10 = fixtures::line(10);
  const auto c = check_delta_pu(constant_map(p10), 1.0, 9.0);
  CHECK(c.verdict);
  CHECK(c.lebesgue == kInfinity);

  const PUMap phi = barycentric_map(two_intervals(p10));
  const double lambda = oracle::lipschitz_hat(fixtures::distance_matrix(*p10), fixtures::weights(phi), 0.5);
  const auto half = check_delta_pu(phi, 0.5, 5.0);
  CHECK(half.lebesgue_ok);
  CHECK(half.uniformly_bounded_ok);
  CHECK(half.lipschitz_ok == (lambda <= 0.5 + 1e-9));
  CHECK(half.verdict == half.lipschitz_ok);

  const auto two = check_delta_pu(phi, 2.0, 5.0);
  CHECK(two.lipschitz_ok);
  CHECK(two.verdict);
  CHECK_FALSE(check_delta_pu(phi, 2.0, 4.0).verdict);
}

TEST_CASE("partial maps are checked on their domain only") {
  const auto p10 = fixtures::line(10);
  std::vector<VertexIndex> split;
  for (int x = 0; x < 10; ++x) split.push_back(x < 5 ? 0 : 1);
  const PUMap f = vertex_map(p10, {"a", "b"}, split);
  const PUMap left = f.restricted(PointSet(10, {0, 1, 2, 3, 4}));
  CHECK_FALSE(left.is_total());
  CHECK(check_lipschitz(left, 0.0, 0.0).passed);
  CHECK_FALSE(check_lipschitz(f, 0.0, 0.0).passed);
}

TEST_CASE("maps must land in their target") {
  const auto two = fixtures::line(2);
  const Complex k({"a", "b"}, {{0}, {1}});
  std::vector<SimplexPoint> values = {SimplexPoint::from_weights({{0, 0.5}, {1, 0.5}}), SimplexPoint::vertex(0)};
  CHECK_THROWS_AS(PUMap(two, k, values), Error);
}

TEST_CASE("pullbacks along point maps") {
  const auto p10 = fixtures::line(10);
  const PUMap f = barycentric_map(two_intervals(p10));

  std::vector<PointIndex> identity(10);
  for (PointIndex x = 0; x < 10; ++x) identity[x] = x;
  const auto same = pullback_partition(p10, identity, 1.0, 1.0, f);
  CHECK(same.h.values() == f.values());

  const auto collapsed = pullback_partition(p10, std::vector<PointIndex>(10, 3), 5.0, 0.0, f);
  CHECK(check_lipschitz(collapsed.h, 0.0, 0.0).passed);

  std::vector<PointIndex> halve(10);
  for (PointIndex x = 0; x < 10; ++x) halve[x] = (x / 2) * 2;
  const double eps_f = measured_delta(f);
  const auto h = pullback_partition(p10, halve, 2.0, 2.0, f);
  CHECK(h.eps_f == doctest::Approx(eps_f));
  CHECK(h.variation.passed);
  CHECK(check_variation(h.h, 2.0, 2.0 * eps_f + eps_f + 1e-9).passed);

  CHECK_THROWS_AS(pullback_partition(p10, halve, 2.0, 1.0, f), Error);
}
