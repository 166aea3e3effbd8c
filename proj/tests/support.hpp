#pragma once
// Shared fixtures and random generators for the test suites.

#include "curvetp/crossing_code.hpp"
#include "curvetp/error.hpp"
#include "curvetp/geometry.hpp"
#include "curvetp/polygon_scan.hpp"
#include "curvetp/reduction.hpp"

#include <algorithm>

#include <random>
#include <string>
#include <vector>

namespace curvetp::testing {

inline Rational q(const char* text) { return parse_rational(text); }
inline Rational q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}
inline Point pt(long x, long y) { return {Rational(x), Rational(y)}; }

inline Polygon bowtie() { return Polygon{{pt(0, 0), pt(3, -1), pt(1, 3), pt(4, 1)}}; }

inline SignedCrossingCode figure_eight() { return {{1, 0}, {-1, 1}}; }

inline Rational random_rational(std::mt19937_64& rng, long range, long den_max = 1) {
  std::uniform_int_distribution<long> num(-range, range);
  std::uniform_int_distribution<long> den(1, den_max);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline Point random_point(std::mt19937_64& rng, long range, long den_max = 1) {
  return {random_rational(rng, range, den_max), random_rational(rng, range, den_max)};
}

/// Random generic polygon with `m` vertices and integer coordinates in
/// [-range, range]. The crossing count is unconstrained.
inline Polygon random_generic_polygon(std::mt19937_64& rng, int m, long range = 40) {
  for (;;) {
    Polygon p;
    for (int i = 0; i < m; ++i) p.vertices.push_back(random_point(rng, range));
    if (check_generic(p).generic()) return p;
  }
}

/// Random generic polygon whose crossing count lies in [lo, hi].
inline Polygon random_polygon_with_crossings(std::mt19937_64& rng, int m, int lo, int hi, long range = 40) {
  for (;;) {
    Polygon p = random_generic_polygon(rng, m, range);
    int n = static_cast<int>(self_intersections(p).size());
    if (n >= lo && n <= hi) return p;
  }
}

// Random lines with slopes in (-1, 1) meeting inside |x| < 1, with no tied
// intersection abscissae.
inline LineArrangement random_arrangement(std::mt19937_64& rng, int n) {
  for (;;) {
    std::vector<Rational> slopes;
    while (static_cast<int>(slopes.size()) < n) {
      Rational s = random_rational(rng, 60, 1) / 64;
      if (std::find(slopes.begin(), slopes.end(), s) == slopes.end()) slopes.push_back(s);
    }
    std::sort(slopes.begin(), slopes.end());
    LineArrangement a;
    for (const auto& s : slopes) a.lines.push_back({s, random_rational(rng, 40, 1) / 256});
    try {
      wiring_of_lines(a);
      return a;
    } catch (const Error&) {
    }
  }
}

}  // namespace curvetp::testing
