#pragma once
// JSON file formats. Indices in files are 1-based; rationals are strings
// "p/q" (integers and finite decimals are accepted on input).
//
//   curve    {"n": 1, "twin": [2, 1], "sign": [1, -1]}
//   polygon  {"vertices": [["0", "0"], ["3/2", "1"], ...]}
//   wiring   {"n": 3, "swaps": [1, 2, 1]}
//   lines    {"lines": [["-1/2", "1/8"], ...]}
//
// Parsers throw Error(ParseError) and ignore unknown keys.

#include "curvetp/crossing_code.hpp"
#include "curvetp/polygon_scan.hpp"
#include "curvetp/reduction.hpp"

#include <json.hpp>

#include <string>

namespace curvetp::io {

using Json = nlohmann::ordered_json;

SignedCrossingCode curve_from_json(const Json& j);
Json curve_to_json(const SignedCrossingCode& code);

Polygon polygon_from_json(const Json& j);
Json polygon_to_json(const Polygon& polygon);

WiringDiagram wiring_from_json(const Json& j);
Json wiring_to_json(const WiringDiagram& w);

LineArrangement lines_from_json(const Json& j);
Json lines_to_json(const LineArrangement& a);

/// Compact, keys in schema order, trailing newline.
std::string dump(const Json& j);

Json parse_json(const std::string& text);
std::string read_file(const std::string& path);

}  // namespace curvetp::io
