#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = coarsescope::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(COARSESCOPE_SAMPLES) + "/" + name; }

}  // namespace

TEST_CASE("analyze reports cover statistics") {
  const auto r = run({"analyze", "--space", sample("p10.json"), "--cover", sample("two.json")});
  REQUIRE(r.code == 0);
  const auto report = json::parse(r.out);
  CHECK(report["command"] == "analyze");
  CHECK(report["version"] == coarsescope::cli::kVersion);
  CHECK(report["passed"] == true);
  const auto& stats = report["results"]["cover_stats"];
  CHECK(stats["lebesgue"] == 2.0);
  CHECK(stats["multiplicity"] == 2);
  CHECK(stats["mesh"] == 5.0);
  CHECK(report["inputs"]["space"]["sha256"].get<std::string>().size() == 64);
  CHECK(r.err.find("wall_time") != std::string::npos);
}

TEST_CASE("bad input exits with 2") {
  CHECK(run({"analyze", "--space", sample("p10.json"), "--frobnicate"}).code == 2);
  CHECK(run({"analyze"}).code == 2);
  const auto missing = run({"analyze", "--space", sample("nothing.json")});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("MALFORMED_DOCUMENT") != std::string::npos);
  CHECK(run({"push", "--space", sample("p10.json"), "--map", sample("two.json"), "--subset", sample("left_end.json"),
             "--R", "1", "--eps", "-1"})
            .code == 2);
}

TEST_CASE("failing certificates exit with 1") {
  const auto r = run({"cover", "--space", sample("p10.json"), "--R", "3", "-n", "0"});
  CHECK(r.code == 1);
  CHECK(json::parse(r.out)["passed"] == false);
}

TEST_CASE("asdim and oracle commands") {
  const auto a = run({"asdim", "--space", sample("p10.json"), "--scales", "1,2"});
  REQUIRE(a.code == 0);
  const auto report = json::parse(a.out);
  CHECK(report["certificates"].size() == 2);
  CHECK(report["certificates"][0]["n_claimed"] == 0);

  const auto o = run({"oracle", "--seed", "7"});
  CHECK(o.code == 0);
  CHECK(json::parse(o.out)["seed"] == 7);
}

TEST_CASE("reports are deterministic") {
  const std::vector<std::string> args = {"barycentric", "--space", sample("p10.json"), "--cover", sample("two.json")};
  const auto first = run(args);
  const auto second = run(args);
  CHECK(first.code == 0);
  CHECK(first.out == second.out);
  CHECK(run({"oracle", "--seed", "3"}).out == run({"oracle", "--seed", "3"}).out);
}
