#include "curvetp/io.hpp"

#include "curvetp/error.hpp"

#include <fstream>
#include <sstream>

namespace curvetp::io {

namespace {

[[noreturn]] void fail(const std::string& why) { throw Error(ErrorKind::ParseError, why); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) fail("expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) fail(std::string("missing key \"") + key + "\"");
  return *it;
}

const Json& array_field(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) fail(std::string("\"") + key + "\" must be an array");
  return a;
}

int integer(const Json& v, const char* what) {
  if (!v.is_number_integer()) fail(std::string(what) + " must be an integer");
  return v.get<int>();
}

Rational rational(const Json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  fail("coordinates must be strings \"p/q\" or integers");
}

std::pair<Rational, Rational> rational_pair(const Json& v) {
  if (!v.is_array() || v.size() != 2) fail("expected a pair of rationals");
  return {rational(v[0]), rational(v[1])};
}

}  // namespace

SignedCrossingCode curve_from_json(const Json& j) {
  int n = integer(field(j, "n"), "\"n\"");
  const Json& twin = array_field(j, "twin");
  const Json& sign = array_field(j, "sign");
  if (n < 0) fail("\"n\" must be non-negative");
  if (twin.size() != static_cast<size_t>(2 * n) || sign.size() != static_cast<size_t>(2 * n))
    fail("\"twin\" and \"sign\" must have 2n entries");
  SignedCrossingCode code;
  for (const auto& t : twin) {
    int v = integer(t, "twin entry");
    if (v < 1 || v > 2 * n) fail("twin entry " + std::to_string(v) + " outside 1.." + std::to_string(2 * n));
    code.twin.push_back(v - 1);
  }
  for (const auto& s : sign) code.sign.push_back(integer(s, "sign entry"));
  return code;
}

Json curve_to_json(const SignedCrossingCode& code) {
  Json j;
  j["n"] = code.n();
  Json twin = Json::array();
  for (int t : code.twin) twin.push_back(t + 1);
  j["twin"] = std::move(twin);
  j["sign"] = code.sign;
  return j;
}

Polygon polygon_from_json(const Json& j) {
  Polygon p;
  for (const auto& v : array_field(j, "vertices")) {
    auto [x, y] = rational_pair(v);
    p.vertices.push_back({x, y});
  }
  return p;
}

Json polygon_to_json(const Polygon& polygon) {
  Json vertices = Json::array();
  for (const auto& v : polygon.vertices) vertices.push_back({format_rational(v.x), format_rational(v.y)});
  Json j;
  j["vertices"] = std::move(vertices);
  return j;
}

WiringDiagram wiring_from_json(const Json& j) {
  WiringDiagram w;
  w.n = integer(field(j, "n"), "\"n\"");
  for (const auto& s : array_field(j, "swaps")) w.swaps.push_back(integer(s, "swap"));
  return w;
}

Json wiring_to_json(const WiringDiagram& w) {
  Json j;
  j["n"] = w.n;
  j["swaps"] = w.swaps;
  return j;
}

LineArrangement lines_from_json(const Json& j) {
  LineArrangement a;
  for (const auto& l : array_field(j, "lines")) {
    auto [slope, intercept] = rational_pair(l);
    a.lines.push_back({slope, intercept});
  }
  return a;
}

Json lines_to_json(const LineArrangement& a) {
  Json lines = Json::array();
  for (const auto& l : a.lines) lines.push_back({format_rational(l.slope), format_rational(l.intercept)});
  Json j;
  j["lines"] = std::move(lines);
  return j;
}

std::string dump(const Json& j) { return j.dump() + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace curvetp::io
