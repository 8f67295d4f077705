#pragma once

// JSON persistence. Every reader throws Error(schema) on malformed input.

#include <string>

#include <json.hpp>

#include "whitesurf/acceptance.hpp"
#include "whitesurf/surface.hpp"
#include "whitesurf/trisec.hpp"

namespace whitesurf::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

json field_to_json(const Field& f);
Field field_from_json(const json& j);

json scalar_to_json(const Field& f, const Scalar& s);
Scalar scalar_from_json(const Field& f, const json& j);

json point_to_json(const Field& f, const ProjPoint& p);
ProjPoint point_from_json(const Field& f, const json& j);

json curve_to_json(const Field& f, const CurveForm& c);
CurveForm curve_from_json(const Field& f, const json& j);

/// {"schema":1, "field":{"char":p,"deg":k}, "points":[...], "provenance":{...}}
json config_to_json(const WhiteConfig& cfg);
WhiteConfig config_from_json(const json& j);

/// Same layout without provenance; multiplicities default to 1.
json scheme_to_json(const Field& f, const PointScheme& z);
std::pair<Field, PointScheme> scheme_from_json(const json& j);

json census_to_json(const CensusReport& r);
CensusReport census_from_json(const json& j);

json trial_to_json(const TrialRecord& t);
TrialRecord trial_from_json(const json& j);

json scorecard_to_json(const AcceptanceOutcome& o, const AcceptanceOptions& opt);

json read_file(const std::string& path);
void write_file(const std::string& path, const json& j);

}  // namespace whitesurf::io
