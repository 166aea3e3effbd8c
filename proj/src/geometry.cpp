#include "curvetp/geometry.hpp"

#include "curvetp/error.hpp"

#include <cctype>

namespace curvetp {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ParallelLines: return "ParallelLines";
    case ErrorKind::NotRealizable: return "NotRealizable";
    case ErrorKind::InvalidCode: return "InvalidCode";
    case ErrorKind::NotGeneric: return "NotGeneric";
    case ErrorKind::MissingVariable: return "MissingVariable";
    case ErrorKind::InvalidWiring: return "InvalidWiring";
    case ErrorKind::EvenN: return "EvenN";
    case ErrorKind::BadArrangement: return "BadArrangement";
    case ErrorKind::TiedAbscissae: return "TiedAbscissae";
    case ErrorKind::PerturbationFailed: return "PerturbationFailed";
    case ErrorKind::SolverUnavailable: return "SolverUnavailable";
    case ErrorKind::ModelParseFailure: return "ModelParseFailure";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational result;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw Error(ErrorKind::ParseError, "bad rational '" + std::string(text) + "'");
    mpz_class d(std::string(den), 10);
    if (d == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
    result = Rational(mpz_class(std::string(num), 10), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty()))
      throw Error(ErrorKind::ParseError, "bad decimal '" + std::string(text) + "'");
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class digits(std::string(whole) + std::string(frac), 10);
    result = Rational(digits, scale);
  } else {
    if (!all_digits(body)) throw Error(ErrorKind::ParseError, "bad rational '" + std::string(text) + "'");
    result = Rational(mpz_class(std::string(body), 10));
  }
  result.canonicalize();
  return negative ? Rational(-result) : result;
}

std::string format_rational(const Rational& value) { return value.get_str(10); }

Rational signed_area2(const Point& p, const Point& q, const Point& r) {
  return (p.x - r.x) * (q.y - r.y) - (p.y - r.y) * (q.x - r.x);
}

int orient(const Point& p, const Point& q, const Point& r) { return sgn(signed_area2(p, q, r)); }

bool parallel(const Segment& e, const Segment& f) {
  Rational det = (e.b.x - e.a.x) * (f.b.y - f.a.y) - (e.b.y - e.a.y) * (f.b.x - f.a.x);
  return sgn(det) == 0;
}

namespace {

struct LineCoeffs {
  Rational a, b, c;
};

LineCoeffs line_of(const Segment& s) {
  return {s.b.y - s.a.y, -(s.b.x - s.a.x), s.b.x * s.a.y - s.a.x * s.b.y};
}

}  // namespace

bool concurrent(const Segment& e, const Segment& f, const Segment& g) {
  auto l1 = line_of(e), l2 = line_of(f), l3 = line_of(g);
  Rational det = l1.a * (l2.b * l3.c - l2.c * l3.b) - l1.b * (l2.a * l3.c - l2.c * l3.a) +
                 l1.c * (l2.a * l3.b - l2.b * l3.a);
  return sgn(det) == 0;
}

bool segments_cross(const Segment& e, const Segment& f) {
  return orient(e.a, f.a, f.b) * orient(e.b, f.a, f.b) < 0 &&
         orient(e.a, e.b, f.a) * orient(e.a, e.b, f.b) < 0;
}

CrossingSign crossing_sign(const Segment& e, const Segment& f) {
  int s1 = orient(e.a, f.a, f.b);
  int s2 = orient(e.b, f.a, f.b);
  int s3 = orient(e.a, e.b, f.a);
  int s4 = orient(e.a, e.b, f.b);
  if (s1 < 0 && s2 > 0 && s3 > 0 && s4 < 0) return CrossingSign::Positive;
  if (s1 > 0 && s2 < 0 && s3 < 0 && s4 > 0) return CrossingSign::Negative;
  return CrossingSign::None;
}

Point line_intersection(const Segment& e, const Segment& f) {
  auto l1 = line_of(e), l2 = line_of(f);
  Rational det = l1.a * l2.b - l2.a * l1.b;
  if (sgn(det) == 0) throw Error(ErrorKind::ParallelLines, "segments lie on parallel lines");
  // a x + b y + c = 0 for both lines.
  Point p{(l1.b * l2.c - l2.b * l1.c) / det, (l2.a * l1.c - l1.a * l2.c) / det};
  return p;
}

bool x_between(const Point& origin, const Point& p, const Point& q) {
  return sgn((origin.x - p.x) * (p.x - q.x)) > 0;
}

}  // namespace curvetp
