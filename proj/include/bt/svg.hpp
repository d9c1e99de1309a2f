#pragma once

#include "bt/kottwitz.hpp"

#include <string>
#include <vector>

namespace bt {

// One polyline per polygon with the Hodge polygon drawn in a heavier stroke.
// Turning points are marked, filled when they lie on the Hodge polygon.
std::string polygons_svg(const HodgeDatum& h, const std::vector<NewtonPoint>& polygons);

}  // namespace bt
