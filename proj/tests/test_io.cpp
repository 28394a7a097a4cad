#include <doctest.h>

#include <fstream>

#include "coarsescope/fixtures.hpp"
#include "coarsescope/io.hpp"

using namespace coarsescope;
using coarsescope::io::json;

namespace {

std::filesystem::path scratch(const std::string& name, const std::string& text) {
  const auto dir = std::filesystem::temp_directory_path() / "coarsescope_io_tests";
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("reals and infinities") {
  CHECK(io::real(1.5) == json(1.5));
  CHECK(io::real(kInfinity) == json("+inf"));
  CHECK(io::parse_real(json("+inf")) == kInfinity);
  CHECK(io::parse_real(json(2)) == 2.0);
  CHECK_THROWS_AS(io::parse_real(json("lots")), Error);
}

TEST_CASE("spaces round trip") {
  const auto line = fixtures::line(6, 2.5);
  const auto back = io::parse_space(io::space_to_json(*line));
  REQUIRE(back.size() == 6);
  CHECK(back.ids() == line->ids());
  CHECK(back.euclidean_dimension() == std::optional<std::size_t>(1));
  for (PointIndex x = 0; x < 6; ++x)
    for (PointIndex y = 0; y < 6; ++y) CHECK(back.distance(x, y) == line->distance(x, y));

  const auto path = fixtures::path_graph(5);
  const auto matrix = io::parse_space(io::space_to_json(*path));
  CHECK(matrix.distance(0, 4) == 4.0);
  CHECK_FALSE(matrix.euclidean_dimension().has_value());

  CHECK_THROWS_AS(io::parse_space(json::parse(R"({"format": "euclidean", "ids": ["a"], "data": [[0], [1]]})")),
                  Error);
  CHECK_THROWS_AS(io::parse_space(json::parse(R"({"format": "teleport", "ids": [], "data": []})")), Error);
  CHECK_THROWS_AS(io::parse_space(json::parse(R"([1, 2, 3])")), Error);
}

TEST_CASE("covers, complexes and maps round trip") {
  const auto p10 = fixtures::line(10);
  const Cover cover = fixtures::interval_cover(p10, {{0, 6}, {4, 10}});
  const io::Document cdoc{io::cover_to_json(cover), {}};
  const Cover back = io::parse_cover(cdoc, p10);
  CHECK(back.labels() == cover.labels());
  CHECK(back.elements() == cover.elements());

  const Complex k = nerve(cover);
  const Complex kb = io::parse_complex(io::complex_to_json(k));
  CHECK(kb.labels() == k.labels());
  CHECK(kb.maximal_simplices() == k.maximal_simplices());

  const PUMap phi = barycentric_map(cover);
  const io::Document mdoc{io::pumap_to_json(phi), {}};
  const PUMap phib = io::parse_pumap(mdoc, p10);
  for (PointIndex x = 0; x < 10; ++x) CHECK(l1_distance(phi(x), phib(x)) < 1e-15);

  const PointSet s(10, {1, 4, 7});
  CHECK(io::parse_subset(io::subset_to_json(s, *p10), *p10) == s);
  CHECK(io::parse_subset(json::parse(R"({"members": ["p1"]})"), *p10) == PointSet(10, {1}));
  CHECK_THROWS_AS(io::parse_subset(json::parse(R"(["nowhere"])"), *p10), Error);

  const auto fam = ball_family(p10, 2.5, 2);
  const io::Document fdoc{io::family_to_json(fam), {}};
  const auto famb = io::parse_family(fdoc, p10);
  CHECK(famb.sets() == fam.sets());
  CHECK(famb.S() == fam.S());
}

TEST_CASE("documents resolve relative references") {
  const auto space_path = scratch("line3.json", io::space_to_json(*fixtures::line(3)).dump());
  const auto cover_path =
      scratch("cover3.json", R"({"space": "line3.json", "elements": {"a": ["p0", "p1"], "b": ["p2"]}})");
  const auto doc = io::open_document(cover_path);
  CHECK(doc.base == cover_path.parent_path());
  const auto resolved = io::resolve(doc.body["space"], doc.base);
  CHECK(io::parse_space(resolved.body).size() == 3);
  const auto inline_doc = io::resolve(json::parse(R"({"x": 1})"), doc.base);
  CHECK(inline_doc.body["x"] == 1);

  const auto bad = scratch("bad.json", "{ not json");
  CHECK_THROWS_WITH_AS(io::load_document(bad), doctest::Contains("MALFORMED_DOCUMENT"), Error);
  CHECK_THROWS_AS(io::load_document(bad.parent_path() / "missing.json"), Error);
}

TEST_CASE("maps outside the listed values are partial") {
  const auto p3 = fixtures::line(3);
  const io::Document doc{json::parse(R"({"values": {"p0": {"a": 1}, "p1": {"a": 0.5, "b": 0.5}}})"), {}};
  const PUMap f = io::parse_pumap(doc, p3);
  CHECK_FALSE(f.is_total());
  CHECK(f.domain() == PointSet(3, {0, 1}));
  const io::Document unnormalized{json::parse(R"({"values": {"p0": {"a": 0.7}}})"), {}};
  CHECK_THROWS_AS(io::parse_pumap(unnormalized, p3), Error);
}
