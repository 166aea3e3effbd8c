#pragma once
// Standalone SVG 1.1 drawings of generic polygons and of curves given by code.
//
// The polygon is drawn with class "curve", each crossing as a circle with
// class "crossing", and every monogon loop (consecutive positions that are
// twins) as an overlaid polyline with class "loop".

#include "curvetp/crossing_code.hpp"
#include "curvetp/polygon_scan.hpp"

#include <string>

namespace curvetp {

struct SvgOptions {
  double width = 800;
  double margin = 24;
};

/// Throws Error(NotGeneric).
std::string render_svg(const Polygon& polygon, const SvgOptions& options = {});

/// Draws straighten_upperbound(code). Throws Error(NotRealizable).
std::string render_svg(const SignedCrossingCode& code, const SvgOptions& options = {});

}  // namespace curvetp
