#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "coarsescope/asdim.hpp"
#include "coarsescope/filler.hpp"
#include "coarsescope/property_a.hpp"

namespace coarsescope::io {

using nlohmann::json;

/// Parses a JSON file; throws MalformedDocument.
json load_document(const std::filesystem::path& path);

/// A document together with the directory its relative references resolve against.
struct Document {
  json body;
  std::filesystem::path base;
};

Document open_document(const std::filesystem::path& path);

/// A reference is either a path (relative to `base`) or an inline object.
Document resolve(const json& ref, const std::filesystem::path& base);

/// Reals are plain numbers; infinities are the strings "+inf" / "-inf".
json real(double v);
double parse_real(const json& j);

FiniteMetricSpace parse_space(const json& doc);
json space_to_json(const FiniteMetricSpace& space);

Cover parse_cover(const Document& doc, const SpacePtr& space);
json cover_to_json(const Cover& cover);

Complex parse_complex(const json& doc);
json complex_to_json(const Complex& complex);

SimplexPoint parse_simplex_point(const json& doc, const Complex& complex);
json simplex_point_to_json(const SimplexPoint& p, const Complex& complex);

/// Points absent from "values" are outside the map's domain. Without a
/// "complex", the target is generated by the supports of the values.
PUMap parse_pumap(const Document& doc, const SpacePtr& space);
json pumap_to_json(const PUMap& f);

/// Array of ids or {"members": [...]}.
PointSet parse_subset(const json& doc, const FiniteMetricSpace& space);
json subset_to_json(const PointSet& set, const FiniteMetricSpace& space);

SetFamily parse_family(const Document& doc, const SpacePtr& space);
json family_to_json(const SetFamily& family);

json stats_to_json(const CoverStats& stats, const FiniteMetricSpace& space);
json check_to_json(const Check& check, const FiniteMetricSpace& space);
json lipschitz_to_json(const LipschitzReport& report, const FiniteMetricSpace& space);
json variation_to_json(const VariationReport& report, const FiniteMetricSpace& space);
json delta_pu_to_json(const DeltaPUCertificate& cert, const FiniteMetricSpace& space);
json barycentric_bound_to_json(const BarycentricBoundReport& report, const FiniteMetricSpace& space);
json push_to_json(const PushResult& push);
json schedule_to_json(const FillerSchedule& schedule);
json filler_to_json(const FillerResult& filler);
json asdim_to_json(const AsdimCertificate& cert, const FiniteMetricSpace& space);
json cx_to_json(const CxResult& cx, const FiniteMetricSpace& space);

json point_witness(const FiniteMetricSpace& space, const std::optional<PointIndex>& x);
json pair_witness(const FiniteMetricSpace& space, const std::optional<PointPair>& p);

}  // namespace coarsescope::io
