#include "coarsescope/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

namespace coarsescope::io {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::MalformedDocument, what); }

const json& field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) malformed(std::string("missing field '") + key + "'");
  return doc.at(key);
}

std::string as_id(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  malformed("point and vertex identifiers must be strings");
}

std::vector<std::string> id_list(const json& j) {
  if (!j.is_array()) malformed("expected an array of identifiers");
  std::vector<std::string> ids;
  ids.reserve(j.size());
  for (const auto& e : j) ids.push_back(as_id(e));
  return ids;
}

std::vector<std::vector<double>> real_rows(const json& j) {
  if (!j.is_array()) malformed("expected a list of rows");
  std::vector<std::vector<double>> rows;
  rows.reserve(j.size());
  for (const auto& row : j) {
    if (!row.is_array()) malformed("expected a list of rows");
    std::vector<double> r;
    r.reserve(row.size());
    for (const auto& v : row) r.push_back(parse_real(v));
    rows.push_back(std::move(r));
  }
  return rows;
}

SpacePtr space_of(const Document& doc, const SpacePtr& given) {
  if (given) return given;
  return share(parse_space(resolve(field(doc.body, "space"), doc.base).body));
}

}  // namespace

json load_document(const fs::path& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    malformed(path.string() + ": " + e.what());
  }
}

Document open_document(const fs::path& path) {
  return {load_document(path), path.has_parent_path() ? path.parent_path() : fs::path(".")};
}

Document resolve(const json& ref, const fs::path& base) {
  if (ref.is_string()) {
    fs::path p = ref.get<std::string>();
    if (p.is_relative()) p = base / p;
    return open_document(p);
  }
  if (ref.is_object()) return {ref, base};
  malformed("a reference must be a path or an inline object");
}

json real(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

double parse_real(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "+inf" || s == "inf") return kInfinity;
    if (s == "-inf") return -kInfinity;
  }
  malformed("expected a number");
}

FiniteMetricSpace parse_space(const json& doc) {
  const auto format = field(doc, "format");
  if (!format.is_string()) malformed("'format' must be a string");
  auto ids = id_list(field(doc, "ids"));
  const auto& data = field(doc, "data");
  const auto f = format.get<std::string>();
  if (f == "matrix") return FiniteMetricSpace::from_matrix(std::move(ids), real_rows(data));
  if (f == "euclidean") return FiniteMetricSpace::from_euclidean(std::move(ids), real_rows(data));
  if (f == "graph") {
    std::vector<WeightedEdge> edges;
    for (const auto& e : field(data, "edges")) {
      if (!e.is_array() || e.size() != 3) malformed("graph edges are [id, id, weight]");
      edges.push_back({as_id(e[0]), as_id(e[1]), parse_real(e[2])});
    }
    return FiniteMetricSpace::from_graph(std::move(ids), edges);
  }
  malformed("unknown space format '" + f + "'");
}

json space_to_json(const FiniteMetricSpace& space) {
  json doc;
  doc["ids"] = space.ids();
  if (space.euclidean_dimension()) {
    doc["format"] = "euclidean";
    json rows = json::array();
    for (PointIndex x = 0; x < space.size(); ++x) {
      const auto c = space.coordinates(x);
      rows.push_back(std::vector<double>(c.begin(), c.end()));
    }
    doc["data"] = std::move(rows);
  } else {
    doc["format"] = "matrix";
    json rows = json::array();
    for (PointIndex x = 0; x < space.size(); ++x) {
      json row = json::array();
      for (PointIndex y = 0; y < space.size(); ++y) row.push_back(space.distance(x, y));
      rows.push_back(std::move(row));
    }
    doc["data"] = std::move(rows);
  }
  return doc;
}

Cover parse_cover(const Document& doc, const SpacePtr& given) {
  const SpacePtr space = space_of(doc, given);
  const auto& elements = field(doc.body, "elements");
  if (!elements.is_object()) malformed("'elements' must map labels to id lists");
  std::vector<std::string> labels;
  std::vector<PointSet> sets;
  for (const auto& [label, ids] : elements.items()) {
    std::vector<PointIndex> members;
    for (const auto& id : id_list(ids)) members.push_back(space->index_of(id));
    labels.push_back(label);
    sets.emplace_back(space->size(), std::move(members));
  }
  std::string name = doc.body.value("name", std::string{});
  return Cover(space, std::move(labels), std::move(sets), std::move(name));
}

json cover_to_json(const Cover& cover) {
  json elements = json::object();
  for (std::size_t s = 0; s < cover.size(); ++s) {
    json ids = json::array();
    for (PointIndex x : cover.element(s)) ids.push_back(cover.space().id(x));
    elements[cover.label(s)] = std::move(ids);
  }
  json doc{{"elements", std::move(elements)}};
  if (!cover.name().empty()) doc["name"] = cover.name();
  return doc;
}

Complex parse_complex(const json& doc) {
  auto labels = id_list(field(doc, "vertices"));
  std::vector<std::vector<std::string>> simplices;
  if (doc.contains("maximal_simplices")) {
    for (const auto& s : doc.at("maximal_simplices")) simplices.push_back(id_list(s));
  }
  return Complex::from_labels(std::move(labels), simplices);
}

json complex_to_json(const Complex& complex) {
  json simplices = json::array();
  for (const auto& s : complex.maximal_simplices()) {
    json row = json::array();
    for (VertexIndex v : s) row.push_back(complex.label(v));
    simplices.push_back(std::move(row));
  }
  return {{"vertices", complex.labels()}, {"maximal_simplices", std::move(simplices)}};
}

SimplexPoint parse_simplex_point(const json& doc, const Complex& complex) {
  const json& weights = doc.is_object() && doc.contains("weights") ? doc.at("weights") : doc;
  if (!weights.is_object()) malformed("weights must map vertex labels to reals");
  std::vector<SimplexPoint::Entry> entries;
  for (const auto& [label, w] : weights.items()) entries.emplace_back(complex.index_of(label), parse_real(w));
  return SimplexPoint::from_weights(std::move(entries));
}

json simplex_point_to_json(const SimplexPoint& p, const Complex& complex) {
  json weights = json::object();
  for (const auto& [v, w] : p.entries()) weights[complex.label(v)] = w;
  return weights;
}

PUMap parse_pumap(const Document& doc, const SpacePtr& given) {
  const SpacePtr space = space_of(doc, given);
  const auto& values = field(doc.body, "values");
  if (!values.is_object()) malformed("'values' must map point ids to weights");
  Complex complex;
  if (doc.body.contains("complex")) {
    complex = parse_complex(resolve(doc.body.at("complex"), doc.base).body);
  } else {
    std::set<std::string> labels;
    std::vector<std::vector<std::string>> supports;
    for (const auto& [pid, w] : values.items()) {
      const json& weights = w.is_object() && w.contains("weights") ? w.at("weights") : w;
      if (!weights.is_object()) malformed("weights must map vertex labels to reals");
      std::vector<std::string> support;
      for (const auto& [label, x] : weights.items()) {
        labels.insert(label);
        support.push_back(label);
      }
      supports.push_back(std::move(support));
    }
    complex = Complex::from_labels({labels.begin(), labels.end()}, supports);
  }
  std::vector<SimplexPoint> points(space->size());
  std::vector<PointIndex> domain;
  for (const auto& [pid, w] : values.items()) {
    const PointIndex x = space->index_of(pid);
    points[x] = parse_simplex_point(w, complex);
    domain.push_back(x);
  }
  return PUMap(space, std::move(complex), std::move(points), PointSet(space->size(), std::move(domain)));
}

json pumap_to_json(const PUMap& f) {
  json values = json::object();
  for (PointIndex x : f.domain()) values[f.space().id(x)] = simplex_point_to_json(f(x), f.target());
  return {{"complex", complex_to_json(f.target())}, {"values", std::move(values)}};
}

PointSet parse_subset(const json& doc, const FiniteMetricSpace& space) {
  const json& ids = doc.is_object() ? field(doc, "members") : doc;
  std::vector<PointIndex> members;
  for (const auto& id : id_list(ids)) members.push_back(space.index_of(id));
  return PointSet(space.size(), std::move(members));
}

json subset_to_json(const PointSet& set, const FiniteMetricSpace& space) {
  json ids = json::array();
  for (PointIndex x : set) ids.push_back(space.id(x));
  return ids;
}

SetFamily parse_family(const Document& doc, const SpacePtr& given) {
  const SpacePtr space = space_of(doc, given);
  const double S = parse_real(field(doc.body, "S"));
  const auto& sets = field(doc.body, "sets");
  if (!sets.is_object()) malformed("'sets' must map point ids to lists of [id, copy]");
  std::vector<TaggedSet> family(space->size());
  std::vector<char> seen(space->size(), 0);
  for (const auto& [pid, list] : sets.items()) {
    const PointIndex x = space->index_of(pid);
    seen[x] = 1;
    if (!list.is_array()) malformed("A_" + pid + " must be a list");
    for (const auto& e : list) {
      if (!e.is_array() || e.size() != 2 || !e[1].is_number_integer() || e[1].get<long long>() < 1) {
        malformed("elements of A_" + pid + " are [id, positive integer]");
      }
      family[x].push_back({space->index_of(as_id(e[0])), static_cast<std::uint32_t>(e[1].get<long long>())});
    }
  }
  for (PointIndex x = 0; x < space->size(); ++x) {
    if (!seen[x]) throw Error(ErrorCode::InvalidArgument, "A_" + space->id(x) + " is missing");
  }
  return SetFamily(space, S, std::move(family));
}

json family_to_json(const SetFamily& family) {
  const auto& space = family.space();
  json sets = json::object();
  for (PointIndex x = 0; x < space.size(); ++x) {
    json list = json::array();
    for (const auto& t : family.set(x)) list.push_back({space.id(t.point), t.copy});
    sets[space.id(x)] = std::move(list);
  }
  return {{"S", real(family.S())}, {"sets", std::move(sets)}};
}

json point_witness(const FiniteMetricSpace& space, const std::optional<PointIndex>& x) {
  if (!x) return nullptr;
  return space.id(*x);
}

json pair_witness(const FiniteMetricSpace& space, const std::optional<PointPair>& p) {
  if (!p) return nullptr;
  return json::array({space.id(p->first), space.id(p->second)});
}

json stats_to_json(const CoverStats& stats, const FiniteMetricSpace& space) {
  json local_l = json::object();
  json local_m = json::object();
  for (PointIndex x = 0; x < stats.local_lebesgue.size(); ++x) {
    local_l[space.id(x)] = real(stats.local_lebesgue[x]);
    local_m[space.id(x)] = stats.local_multiplicity[x];
  }
  return {{"lebesgue", real(stats.lebesgue)},
          {"multiplicity", stats.multiplicity},
          {"mesh", real(stats.mesh)},
          {"local_lebesgue", std::move(local_l)},
          {"local_multiplicity", std::move(local_m)}};
}

json check_to_json(const Check& check, const FiniteMetricSpace& space) {
  json j{{"name", check.name},
         {"passed", check.passed},
         {"measured", real(check.measured)},
         {"bound", real(check.bound)},
         {"required", check.required}};
  if (check.point) j["witness_point"] = point_witness(space, check.point);
  if (check.pair) j["witness_pair"] = pair_witness(space, check.pair);
  return j;
}

json lipschitz_to_json(const LipschitzReport& r, const FiniteMetricSpace& space) {
  return {{"lambda", real(r.lambda)},         {"C", real(r.C)},
          {"passed", r.passed},               {"lambda_hat", real(r.lambda_hat)},
          {"max_excess", real(r.max_excess)}, {"worst_pair", pair_witness(space, r.worst_pair)}};
}

json variation_to_json(const VariationReport& r, const FiniteMetricSpace& space) {
  return {{"R", real(r.R)},
          {"eps", real(r.eps)},
          {"passed", r.passed},
          {"max_l1", real(r.max_l1)},
          {"worst_pair", pair_witness(space, r.worst_pair)}};
}

json delta_pu_to_json(const DeltaPUCertificate& c, const FiniteMetricSpace& space) {
  return {{"kind", "delta_partition_of_unity"},
          {"delta", real(c.delta)},
          {"bound_M", real(c.bound_M)},
          {"lipschitz", lipschitz_to_json(c.lipschitz, space)},
          {"lipschitz_ok", c.lipschitz_ok},
          {"lebesgue", real(c.lebesgue)},
          {"lebesgue_ok", c.lebesgue_ok},
          {"lebesgue_witness", point_witness(space, c.lebesgue_witness)},
          {"star_mesh", real(c.star_mesh)},
          {"uniformly_bounded_ok", c.uniformly_bounded_ok},
          {"passed", c.verdict}};
}

json barycentric_bound_to_json(const BarycentricBoundReport& r, const FiniteMetricSpace& space) {
  return {{"kind", "barycentric_lipschitz_bound"},
          {"bound", real(r.bound)},
          {"multiplicity", r.multiplicity},
          {"lebesgue", real(r.lebesgue)},
          {"lipschitz", lipschitz_to_json(r.lipschitz, space)},
          {"passed", r.passed}};
}

json push_to_json(const PushResult& p) {
  const auto& space = p.r.space();
  return {{"kind", "skeleton_push"},
          {"r", pumap_to_json(p.r)},
          {"neighborhood", subset_to_json(p.neighborhood, space)},
          {"eps", real(p.eps)},
          {"mu_claimed", real(p.mu_claimed)},
          {"variation", variation_to_json(p.variation, space)},
          {"variation_verified", p.variation_verified},
          {"agreement_on_A", p.agreement_on_A},
          {"agreement_witness", point_witness(space, p.agreement_witness)},
          {"carrier_inclusion", p.carrier_inclusion},
          {"carrier_witness", point_witness(space, p.carrier_witness)},
          {"max_pointwise", real(p.max_pointwise)},
          {"pointwise_bound", real(p.pointwise_bound)},
          {"pointwise_ok", p.pointwise_ok},
          {"pointwise_witness", point_witness(space, p.pointwise_witness)},
          {"passed", p.verified()}};
}

json schedule_to_json(const FillerSchedule& s) {
  return {{"n", s.n},
          {"eps", real(s.eps)},
          {"k", s.k},
          {"R", real(s.R)},
          {"S_of_k", real(s.S_of_k)},
          {"delta", real(s.delta)},
          {"mu", real(s.mu)},
          {"h_lipschitz", real(s.h_lipschitz)},
          {"lebesgue_bound", real(s.lebesgue_bound)},
          {"inequality1", s.inequality1},
          {"inequality2", s.inequality2},
          {"inequality3", s.inequality3},
          {"satisfied", s.satisfied()}};
}

json filler_to_json(const FillerResult& r) {
  const auto& space = r.h.space();
  json alpha = json::object();
  for (PointIndex x = 0; x < r.alpha.alpha.size(); ++x) alpha[space.id(x)] = r.alpha.alpha[x];
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(check_to_json(c, space));
  return {{"kind", "filler"},
          {"h", pumap_to_json(r.h)},
          {"alpha", std::move(alpha)},
          {"beta", pumap_to_json(r.beta)},
          {"r", pumap_to_json(r.push.r)},
          {"merged_cover", cover_to_json(r.merge.merged)},
          {"schedule", schedule_to_json(r.schedule)},
          {"eps_f", real(r.eps_f)},
          {"h_certificate", delta_pu_to_json(r.h_certificate, space)},
          {"push", push_to_json(r.push)},
          {"checks", std::move(checks)},
          {"passed", r.verified()}};
}

json asdim_to_json(const AsdimCertificate& c, const FiniteMetricSpace& space) {
  json j{{"kind", "asdim"},
         {"witness_kind", std::string(to_string(c.kind))},
         {"scale_R", real(c.scale_R)},
         {"n_claimed", c.n_claimed},
         {"lebesgue", real(c.lebesgue)},
         {"multiplicity", c.multiplicity},
         {"mesh", real(c.mesh)},
         {"passed", c.verdict},
         {"provenance", c.provenance}};
  if (c.kind == WitnessKind::Map) {
    j["delta"] = real(c.delta);
    j["lambda_hat"] = real(c.lambda_hat);
    j["measured_delta"] = real(c.measured_delta);
    j["bound_M"] = real(c.bound_M);
    j["induced_R"] = real(c.scale_R);
  } else {
    j["delta_recipe"] = real(c.delta_recipe);
    j["delta_lipofbary"] = real(c.delta_lipofbary);
  }
  if (!c.failure.empty()) j["failure"] = c.failure;
  if (c.witness_point) j["witness_point"] = point_witness(space, c.witness_point);
  if (c.witness_pair) j["witness_pair"] = pair_witness(space, c.witness_pair);
  return j;
}

json cx_to_json(const CxResult& cx, const FiniteMetricSpace& space) {
  json large = json::object();
  json sizes = json::object();
  for (PointIndex x = 0; x < cx.C.size(); ++x) {
    large[space.id(x)] = static_cast<bool>(cx.large[x]);
    sizes[space.id(x)] = cx.C[x].size();
  }
  json checks = json::array();
  for (const auto& c : cx.checks) checks.push_back(check_to_json(c, space));
  return {{"kind", "cx_construction"},
          {"large", std::move(large)},
          {"sizes", std::move(sizes)},
          {"precondition_ratio", real(cx.precondition.ratio)},
          {"precondition_pair", pair_witness(space, cx.precondition.pair)},
          {"checks", std::move(checks)},
          {"passed", cx.verified()}};
}

}  // namespace coarsescope::io
