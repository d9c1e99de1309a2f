#pragma once

#include "bt/building.hpp"
#include "bt/grass.hpp"
#include "bt/kottwitz.hpp"
#include "bt/retract.hpp"

#include <json.hpp>

#include <string>

namespace bt {

using json = nlohmann::ordered_json;

// {"field": "GF(p^r)", "ramification": m, "d": d, "n": n, "matrix": [[...], ...]}
json point_to_json(const GrassPoint& x);
GrassPoint point_from_json(const json& j);

// {"d": d, "n": n, "trop": {"1,2": "0", ...}}; values are rational strings or "inf".
// An array in subset order is accepted on input as well.
json trop_to_json(const TropPlueckerVector& tp);
TropPlueckerVector trop_from_json(const json& j);
bool has_trop(const json& j);

// normal form on export
json building_point_to_json(const BuildingPoint& z);
BuildingPoint building_point_from_json(const json& j);

json newton_to_json(const NewtonPoint& v);
NewtonPoint newton_from_json(const json& j);
json hasse_to_json(const std::vector<NewtonPoint>& S);

json certificate_to_json(const ApartmentCertificate& c);
json retraction_to_json(const Retraction& r);

RetractionConfig config_from_json(const json& j);

json read_json_file(const std::string& path);

}  // namespace bt
