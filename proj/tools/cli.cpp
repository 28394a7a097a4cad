#include "cli.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "coarsescope/fixtures.hpp"
#include "coarsescope/io.hpp"

namespace coarsescope::cli {

namespace {

using io::json;
namespace fs = std::filesystem;

struct Options {
  std::string space, cover, map, subset, family, out;
  std::uint64_t seed = 0;
  std::string scales = "1,2,4,8";
  int nmax = 4;
  std::optional<int> n;
  std::optional<double> eps, delta, R, M;
  bool exhaustive = false;
  long long k_limit = 1'000'000;
  std::string fixture = "small";
};

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < length; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

double required(const std::optional<double>& v, const char* flag) {
  if (!v) throw Error(ErrorCode::InvalidArgument, std::string("missing ") + flag);
  return *v;
}

std::vector<double> parse_scales(const std::string& text) {
  std::vector<double> scales;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size() || !(v > 0.0)) throw std::invalid_argument(item);
      scales.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "--scales takes positive reals separated by commas");
    }
  }
  if (scales.empty()) throw Error(ErrorCode::InvalidArgument, "--scales is empty");
  return scales;
}

class Report {
 public:
  Report(std::string command, const Options& opt) : opt_(opt) {
    body_["command"] = std::move(command);
    body_["version"] = kVersion;
    body_["seed"] = opt.seed;
    body_["tolerance"] = tolerance();
    body_["inputs"] = json::object();
    body_["certificates"] = json::array();
    body_["results"] = json::object();
  }

  void input(const std::string& role, const std::string& path) {
    body_["inputs"][role] = {{"path", path}, {"sha256", sha256_file(path)}};
  }
  void parameter(const std::string& key, json value) { body_["parameters"][key] = std::move(value); }
  void result(const std::string& key, json value) { body_["results"][key] = std::move(value); }
  void certificate(json cert) {
    all_pass_ = all_pass_ && cert.value("passed", false);
    body_["certificates"].push_back(std::move(cert));
  }

  int write(std::ostream& out) {
    body_["passed"] = all_pass_;
    const std::string text = body_.dump(2) + "\n";
    if (opt_.out.empty()) {
      out << text;
    } else {
      std::ofstream file(opt_.out, std::ios::binary);
      if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write " + opt_.out);
      file << text;
    }
    return all_pass_ ? 0 : 1;
  }

 private:
  const Options& opt_;
  json body_;
  bool all_pass_ = true;
};

SpacePtr load_space(const Options& opt, Report& report) {
  if (opt.space.empty()) throw Error(ErrorCode::InvalidArgument, "missing --space");
  report.input("space", opt.space);
  return share(io::parse_space(io::load_document(opt.space)));
}

json check_list(const std::vector<Check>& checks, const FiniteMetricSpace& space, bool& all) {
  json list = json::array();
  for (const auto& c : checks) {
    list.push_back(io::check_to_json(c, space));
    if (c.required && !c.passed) all = false;
  }
  return list;
}

json space_summary(const FiniteMetricSpace& space) {
  static const char* sources[] = {"matrix", "euclidean", "graph"};
  return {{"size", space.size()},
          {"diameter", io::real(space.diameter())},
          {"source", sources[static_cast<int>(space.source())]}};
}

int cmd_analyze(const Options& opt, std::ostream& out) {
  Report report("analyze", opt);
  const auto space = load_space(opt, report);
  report.result("space", space_summary(*space));
  if (!opt.cover.empty()) {
    report.input("cover", opt.cover);
    const Cover cover = io::parse_cover(io::open_document(opt.cover), space);
    const auto stats = compute_stats(cover);
    report.result("cover_stats", io::stats_to_json(stats, *space));
    const Complex n = nerve(cover);
    report.result("nerve", {{"dimension", n.dimension()}, {"complex", io::complex_to_json(n)}});
    report.certificate(io::barycentric_bound_to_json(check_barycentric_bound(cover), *space));
  }
  if (!opt.map.empty()) {
    report.input("map", opt.map);
    const PUMap f = io::parse_pumap(io::open_document(opt.map), space);
    const auto stats = star_preimage_stats(f);
    report.result("map", {{"measured_delta", io::real(measured_delta(f))},
                          {"star_preimage_lebesgue", io::real(stats.lebesgue)},
                          {"star_preimage_multiplicity", stats.multiplicity},
                          {"star_mesh", io::real(stats.mesh)},
                          {"target_dimension", f.target().dimension()}});
    if (opt.delta) {
      const double bound = opt.M.value_or(stats.mesh);
      report.certificate(io::delta_pu_to_json(check_delta_pu(f, *opt.delta, bound), *space));
    }
    if (opt.R && opt.eps) {
      json v = io::variation_to_json(check_variation(f, *opt.R, *opt.eps), *space);
      v["kind"] = "variation";
      report.certificate(std::move(v));
    }
  }
  return report.write(out);
}

int cmd_cover(const Options& opt, std::ostream& out) {
  Report report("cover", opt);
  const auto space = load_space(opt, report);
  const double R = required(opt.R, "--R");
  report.parameter("R", R);
  std::optional<Cover> cover;
  AsdimCertificate cert;
  if (opt.n) {
    report.parameter("n", *opt.n);
    if (space->euclidean_dimension()) {
      cover = brick_cover(space, R, *opt.n).cover;
    } else {
      cover = greedy_cover(space, R, *opt.n + 1, 4.0 * (*opt.n + 1) * R).cover;
    }
    cert = certify_from_cover(*cover, R, *opt.n);
  } else {
    report.parameter("nmax", opt.nmax);
    auto est = estimate_upper_bound(space, R, opt.nmax);
    cert = est.certificate;
    if (est.witness) cover = std::move(est.witness);
    report.result("generator", est.generator);
  }
  if (cover) {
    report.result("cover", io::cover_to_json(*cover));
    report.result("cover_stats", io::stats_to_json(compute_stats(*cover), *space));
  }
  report.certificate(io::asdim_to_json(cert, *space));
  return report.write(out);
}

int cmd_barycentric(const Options& opt, std::ostream& out) {
  Report report("barycentric", opt);
  const auto space = load_space(opt, report);
  if (opt.cover.empty()) throw Error(ErrorCode::InvalidArgument, "missing --cover");
  report.input("cover", opt.cover);
  const Cover cover = io::parse_cover(io::open_document(opt.cover), space);
  const PUMap phi = barycentric_map(cover);
  report.result("map", io::pumap_to_json(phi));
  report.certificate(io::barycentric_bound_to_json(check_barycentric_bound(cover), *space));
  if (opt.delta) {
    const double bound = opt.M.value_or(compute_stats(cover).mesh);
    report.certificate(io::delta_pu_to_json(check_delta_pu(phi, *opt.delta, bound), *space));
  }
  return report.write(out);
}

int cmd_push(const Options& opt, std::ostream& out) {
  Report report("push", opt);
  const auto space = load_space(opt, report);
  if (opt.map.empty() || opt.subset.empty() || !opt.n) {
    throw Error(ErrorCode::InvalidArgument, "push needs --map, --subset and -n");
  }
  report.input("map", opt.map);
  report.input("subset", opt.subset);
  const PUMap f = io::parse_pumap(io::open_document(opt.map), space);
  const PointSet A = io::parse_subset(io::load_document(opt.subset), *space);
  const double R = required(opt.R, "--R");
  const double eps = required(opt.eps, "--eps");
  report.parameter("R", R);
  report.parameter("eps", eps);
  report.parameter("n", *opt.n);
  report.certificate(io::push_to_json(push_to_skeleton(f, A, R, *opt.n, eps)));
  return report.write(out);
}

int cmd_filler(const Options& opt, std::ostream& out) {
  Report report("filler", opt);
  const auto space = load_space(opt, report);
  if (opt.map.empty() || opt.subset.empty() || !opt.n) {
    throw Error(ErrorCode::InvalidArgument, "filler needs --map, --subset and -n");
  }
  const int n = *opt.n;
  const double eps = required(opt.eps, "--eps");
  report.input("map", opt.map);
  report.input("subset", opt.subset);
  const PUMap f = io::parse_pumap(io::open_document(opt.map), space);
  const PointSet A = io::parse_subset(io::load_document(opt.subset), *space);
  FillerSchedule schedule;
  std::optional<Cover> U;
  if (!opt.cover.empty()) {
    report.input("cover", opt.cover);
    U = io::parse_cover(io::open_document(opt.cover), space);
    const auto stats = compute_stats(*U);
    const double R = opt.R.value_or(std::floor(std::min(stats.lebesgue, 1e12)));
    const auto k = static_cast<long long>(R);
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "the cover's Lebesgue number is below 1");
    schedule = schedule_at(n, eps, k, std::max(stats.mesh, static_cast<double>(k)));
  } else {
    const auto dim = space->euclidean_dimension();
    if (!dim) throw Error(ErrorCode::NotEuclidean, "without --cover the space must be Euclidean");
    schedule = find_schedule(n, eps, [&](double r) { return brick_mesh_bound(r, n, *dim); }, opt.k_limit);
    U = brick_cover(space, schedule.R, n).cover;
  }
  report.result("schedule", io::schedule_to_json(schedule));
  const double f_mesh = opt.M.value_or(star_preimage_stats(f).mesh);
  report.parameter("n", n);
  report.parameter("eps", eps);
  report.parameter("f_mesh_bound", f_mesh);
  const FillerResult result = build_filler(f, A, schedule, *U, f_mesh);
  report.result("filler", io::filler_to_json(result));
  report.certificate(io::delta_pu_to_json(result.h_certificate, *space));
  report.certificate({{"kind", "filler_checks"}, {"passed", result.verified()}});
  return report.write(out);
}

int cmd_propa(const Options& opt, std::ostream& out) {
  Report report("propa", opt);
  const auto space = load_space(opt, report);
  if (opt.family.empty()) throw Error(ErrorCode::InvalidArgument, "missing --family");
  report.input("family", opt.family);
  const SetFamily family = io::parse_family(io::open_document(opt.family), space);
  PropertyAInput input;
  input.R = required(opt.R, "--R");
  input.delta = required(opt.delta, "--delta");
  input.eps = opt.eps.value_or(input.delta);
  const double M = required(opt.M, "--M");
  if (!(M >= 2.0) || M != std::floor(M)) throw Error(ErrorCode::ParameterConstraintFailed, "M must be an integer >= 2");
  input.M = static_cast<std::size_t>(M);
  report.parameter("R", input.R);
  report.parameter("delta", input.delta);
  report.parameter("eps", input.eps);
  report.parameter("M", input.M);
  const CxResult cx = build_cx(family, input);
  report.certificate(io::cx_to_json(cx, *space));
  const CxPartitionResult part = cx_partition(cx.C, family.space_ptr(), input, family.S());
  bool links = true;
  json link_checks = check_list(part.checks, *space, links);
  report.certificate({{"kind", "cx_partition_links"}, {"checks", std::move(link_checks)}, {"passed", links}});
  report.certificate(io::delta_pu_to_json(check_delta_pu(part.f, input.delta, 4.0 * family.S()), *space));
  const auto back = pu_to_property_a(part.f, input.R, input.eps);
  report.certificate({{"kind", "property_a_data"},
                      {"R", input.R},
                      {"eps", input.eps},
                      {"max_variation", io::real(back.max_variation)},
                      {"support_diameter", io::real(back.support_diameter)},
                      {"passed", back.variation_ok}});
  report.result("map", io::pumap_to_json(part.f));
  return report.write(out);
}

int cmd_asdim(const Options& opt, std::ostream& out) {
  Report report("asdim", opt);
  const auto space = load_space(opt, report);
  const auto scales = parse_scales(opt.scales);
  report.parameter("scales", scales);
  report.parameter("nmax", opt.nmax);
  report.parameter("exhaustive", opt.exhaustive);
  json sweep = json::array();
  for (double R : scales) {
    auto est = estimate_upper_bound(space, R, opt.nmax);
    json cert = io::asdim_to_json(est.certificate, *space);
    cert["generator"] = est.generator;
    json row{{"R", R}, {"n_upper", est.n_best ? json(*est.n_best) : json(nullptr)}};
    if (opt.exhaustive) {
      if (space->size() > 12) throw Error(ErrorCode::InvalidArgument, "--exhaustive needs at most 12 points");
      if (est.witness) {
        const double cap = compute_stats(*est.witness).mesh;
        const auto ex = exhaustive_min_multiplicity(space, R, cap);
        row["exhaustive"] = {{"mesh_cap", io::real(cap)},
                             {"min_multiplicity", ex.min_multiplicity},
                             {"n_lower_at_cap", static_cast<long long>(ex.min_multiplicity) - 1},
                             {"nodes_examined", ex.nodes_examined}};
      }
    }
    sweep.push_back(std::move(row));
    report.certificate(std::move(cert));
  }
  report.result("sweep", std::move(sweep));
  if (!opt.map.empty()) {
    report.input("map", opt.map);
    const PUMap f = io::parse_pumap(io::open_document(opt.map), space);
    const double delta = required(opt.delta, "--delta");
    if (!opt.n) throw Error(ErrorCode::InvalidArgument, "missing -n");
    const double bound = opt.M.value_or(star_preimage_stats(f).mesh);
    report.certificate(io::asdim_to_json(certify_from_map(f, delta, *opt.n, bound), *space));
  }
  return report.write(out);
}

// Main path against the brute-force oracle on seeded random fixtures.
int cmd_oracle(const Options& opt, std::ostream& out) {
  Report report("oracle", opt);
  std::size_t count = 0;
  std::size_t max_points = 0;
  if (opt.fixture == "small") {
    count = 25;
    max_points = 8;
  } else if (opt.fixture == "medium") {
    count = 10;
    max_points = 30;
  } else {
    throw Error(ErrorCode::InvalidArgument, "--fixture is small or medium");
  }
  report.parameter("fixture", opt.fixture);
  fixtures::Rng rng(opt.seed);
  std::map<std::string, std::size_t> mismatches{{"distances", 0}, {"stats", 0},    {"barycentric", 0},
                                                {"nerve", 0},     {"lipschitz", 0}, {"map_lebesgue", 0},
                                                {"fold", 0}};
  std::uniform_int_distribution<std::size_t> size_dist(2, max_points);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t size = size_dist(rng);
    const auto graph = fixtures::random_graph(rng, size, size / 2, 5);
    {
      // Rebuild the same graph from its own table: edges between all pairs reproduce it.
      std::vector<std::tuple<std::size_t, std::size_t, double>> edges;
      for (PointIndex x = 0; x < size; ++x)
        for (PointIndex y = x + 1; y < size; ++y) edges.emplace_back(x, y, graph->distance(x, y));
      const auto d = oracle::floyd_warshall(size, edges);
      if (d != fixtures::distance_matrix(*graph)) ++mismatches["distances"];
    }
    const auto space = (i % 2 == 0) ? graph : fixtures::random_euclidean(rng, size, 2, 10);
    const auto d = fixtures::distance_matrix(*space);
    std::uniform_int_distribution<std::size_t> elems(1, std::min<std::size_t>(size, 5));
    const Cover cover = fixtures::random_cover(rng, space, elems(rng));
    const auto m = fixtures::membership(cover);
    const auto stats = compute_stats(cover);
    const auto ostats = oracle::cover_stats(d, m);
    if (stats.lebesgue != ostats.lebesgue || stats.multiplicity != ostats.multiplicity || stats.mesh != ostats.mesh) {
      ++mismatches["stats"];
    }
    const PUMap phi = barycentric_map(cover);
    const auto ophi = oracle::barycentric(d, m);
    const auto w = fixtures::weights(phi);
    for (PointIndex x = 0; x < size; ++x) {
      if (oracle::l1(w[x], ophi[x]) > 1e-12) {
        ++mismatches["barycentric"];
        break;
      }
    }
    std::vector<std::vector<std::size_t>> simplices;
    const Complex complex = nerve(cover);
    for (const auto& s : complex.maximal_simplices()) simplices.emplace_back(s.begin(), s.end());
    if (simplices != oracle::nerve(m)) ++mismatches["nerve"];
    const auto lip = check_lipschitz(phi, 0.0, 0.0);
    if (std::abs(lip.lambda_hat - oracle::lipschitz_hat(d, ophi, 0.0)) > 1e-9) ++mismatches["lipschitz"];
    if (map_lebesgue(phi) != oracle::map_lebesgue(d, w)) ++mismatches["map_lebesgue"];
    for (int n = 0; n < 3; ++n) {
      for (PointIndex x = 0; x < size; ++x) {
        if (fixtures::weights(fold_to_skeleton(phi(x), n)) != oracle::fold(w[x], n)) {
          ++mismatches["fold"];
          n = 3;
          break;
        }
      }
    }
  }
  std::size_t total = 0;
  json diff = json::object();
  for (const auto& [k, v] : mismatches) {
    diff[k] = v;
    total += v;
  }
  report.result("fixtures", count);
  report.certificate({{"kind", "oracle_equivalence"}, {"mismatches", std::move(diff)}, {"passed", total == 0}});
  return report.write(out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  if (const char* tol = std::getenv("COARSESCOPE_TOL")) {
    char* end = nullptr;
    const double tau = std::strtod(tol, &end);
    if (end == tol || *end != '\0' || !(tau >= 0.0)) {
      err << "error: COARSESCOPE_TOL must be a nonnegative real\n";
      return 2;
    }
    set_tolerance(tau);
  }

  CLI::App app{"coarsescope: coarse-geometry certificates on finite metric spaces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Options opt;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--space", opt.space, "space document")->required();
    sub->add_option("--out", opt.out, "write the report here instead of stdout");
    sub->add_option("--seed", opt.seed, "seed for randomized fixtures");
  };
  auto n_flag = [&](CLI::App* sub) { sub->add_option("-n", opt.n, "skeleton dimension"); };

  auto* analyze = app.add_subcommand("analyze", "space, cover and map statistics");
  common(analyze);
  analyze->add_option("--cover", opt.cover);
  analyze->add_option("--map", opt.map);
  analyze->add_option("--delta", opt.delta);
  analyze->add_option("--M", opt.M, "declared mesh bound");
  analyze->add_option("--R", opt.R);
  analyze->add_option("--eps", opt.eps);

  auto* cover = app.add_subcommand("cover", "generate a cover with Lebesgue number >= R");
  common(cover);
  cover->add_option("--R", opt.R)->required();
  n_flag(cover);
  cover->add_option("--nmax", opt.nmax);

  auto* bary = app.add_subcommand("barycentric", "barycentric partition of unity of a cover");
  common(bary);
  bary->add_option("--cover", opt.cover)->required();
  bary->add_option("--delta", opt.delta);
  bary->add_option("--M", opt.M);

  auto* push = app.add_subcommand("push", "retract a map over B(A,R) into the n-skeleton");
  common(push);
  push->add_option("--map", opt.map)->required();
  push->add_option("--subset", opt.subset)->required();
  push->add_option("--R", opt.R)->required();
  push->add_option("--eps", opt.eps)->required();
  n_flag(push);

  auto* filler = app.add_subcommand("filler", "build and certify the filler h");
  common(filler);
  filler->add_option("--map", opt.map)->required();
  filler->add_option("--subset", opt.subset)->required();
  filler->add_option("--eps", opt.eps)->required();
  filler->add_option("--cover", opt.cover);
  filler->add_option("--R", opt.R);
  filler->add_option("--M", opt.M, "declared mesh bound of f");
  filler->add_option("--k-limit", opt.k_limit);
  n_flag(filler);

  auto* propa = app.add_subcommand("propa", "Property A set families to partitions of unity");
  common(propa);
  propa->add_option("--family", opt.family)->required();
  propa->add_option("--R", opt.R)->required();
  propa->add_option("--eps", opt.eps);
  propa->add_option("--M", opt.M)->required();
  propa->add_option("--delta", opt.delta)->required();

  auto* asdim = app.add_subcommand("asdim", "asymptotic dimension certificates across scales");
  common(asdim);
  asdim->add_option("--scales", opt.scales);
  asdim->add_option("--nmax", opt.nmax);
  asdim->add_flag("--exhaustive", opt.exhaustive);
  asdim->add_option("--map", opt.map);
  asdim->add_option("--delta", opt.delta);
  asdim->add_option("--M", opt.M);
  n_flag(asdim);

  auto* orc = app.add_subcommand("oracle", "compare the main path with brute-force reimplementations");
  orc->add_option("--fixture", opt.fixture);
  orc->add_option("--seed", opt.seed);
  orc->add_option("--out", opt.out);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  int code = 2;
  try {
    if (analyze->parsed()) code = cmd_analyze(opt, out);
    else if (cover->parsed()) code = cmd_cover(opt, out);
    else if (bary->parsed()) code = cmd_barycentric(opt, out);
    else if (push->parsed()) code = cmd_push(opt, out);
    else if (filler->parsed()) code = cmd_filler(opt, out);
    else if (propa->parsed()) code = cmd_propa(opt, out);
    else if (asdim->parsed()) code = cmd_asdim(opt, out);
    else if (orc->parsed()) code = cmd_oracle(opt, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  err << "wall_time: " << elapsed.count() << " s\n";
  return code;
}

}  // namespace coarsescope::cli
