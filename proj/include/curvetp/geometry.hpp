#pragma once
// Exact rational geometry: points, segments and the orientation family of
// predicates. Nothing here ever rounds.

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace curvetp {

/// Arbitrary-precision rational, always kept in canonical form.
using Rational = mpq_class;

/// Parses "p/q", "p", "-p/q" or a finite decimal such as "-1.25".
Rational parse_rational(std::string_view text);
/// Canonical "p/q" or "p" form.
std::string format_rational(const Rational& value);

struct Point {
  Rational x;
  Rational y;

  friend bool operator==(const Point&, const Point&) = default;
};

struct Segment {
  Point a;
  Point b;
};

enum class CrossingSign { Positive, Negative, None };

/// Sign of the signed area of triangle (p, q, r): +1 counterclockwise,
/// -1 clockwise, 0 collinear.
int orient(const Point& p, const Point& q, const Point& r);

/// The determinant behind orient(), twice the signed triangle area.
Rational signed_area2(const Point& p, const Point& q, const Point& r);

bool parallel(const Segment& e, const Segment& f);

/// Vanishing of the 3x3 determinant of homogeneous line coefficients
/// (dy, -dx, x1*y0 - x0*y1). Only meaningful when no two inputs are parallel.
bool concurrent(const Segment& e, const Segment& f, const Segment& g);

/// Transversal crossing at a single interior point of both segments.
bool segments_cross(const Segment& e, const Segment& f);

/// Positive iff directed e crosses directed f from right to left.
CrossingSign crossing_sign(const Segment& e, const Segment& f);

/// Throws Error(ParallelLines) if the supporting lines are parallel.
Point line_intersection(const Segment& e, const Segment& f);

/// (x_origin - x_p)(x_p - x_q) > 0.
bool x_between(const Point& origin, const Point& p, const Point& q);

}  // namespace curvetp
