#include "curvetp/reduction.hpp"

#include "curvetp/error.hpp"

#include <algorithm>
#include <numeric>

namespace curvetp {

WiringReport validate_wiring(const WiringDiagram& w) {
  WiringReport r;
  if (w.n < 1) {
    r.positions_legal = false;
    r.failures.push_back("n must be positive");
    return r;
  }
  std::vector<int> rows(w.n);
  std::iota(rows.begin(), rows.end(), 0);
  std::vector<std::vector<int>> count(w.n, std::vector<int>(w.n, 0));
  for (size_t s = 0; s < w.swaps.size(); ++s) {
    int p = w.swaps[s];
    if (p < 1 || p >= w.n) {
      r.positions_legal = false;
      r.failures.push_back("swap " + std::to_string(s + 1) + " has position " + std::to_string(p) +
                           " outside 1.." + std::to_string(w.n - 1));
      continue;
    }
    int a = rows[p - 1], b = rows[p];
    ++count[std::min(a, b)][std::max(a, b)];
    std::swap(rows[p - 1], rows[p]);
  }
  for (int i = 0; i < w.n; ++i)
    for (int j = i + 1; j < w.n; ++j)
      if (count[i][j] != 1) {
        r.pairs_once = false;
        r.failures.push_back("wires " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " cross " +
                             std::to_string(count[i][j]) + " times");
      }
  return r;
}

WiringDiagram pad_to_odd(const WiringDiagram& w) {
  if (w.n % 2 == 1) return w;
  WiringDiagram out{w.n + 1, {}};
  for (int p : w.swaps) out.swaps.push_back(p + 1);
  for (int p = 1; p <= w.n; ++p) out.swaps.push_back(p);
  return out;
}

namespace {

// One pass of the curve through a crossing.
struct Pass {
  int crossing;
  int sign;
};

}  // namespace

SignedCrossingCode curve_from_arrangement(const WiringDiagram& w) {
  WiringReport report = validate_wiring(w);
  if (!report.valid()) throw Error(ErrorKind::InvalidWiring, report.failures.front());
  if (w.n % 2 == 0) throw Error(ErrorKind::EvenN, "the looped curve needs an odd number of wires");
  const int n = w.n;

  // Wire crossings in left-to-right order along each wire, with the sign of
  // that wire's pass when both wires run left to right.
  std::vector<std::vector<Pass>> along(n);
  std::vector<int> rows(n);
  std::iota(rows.begin(), rows.end(), 0);
  // Odd wires run left to right, even wires right to left.
  auto sigma = [](int wire) { return wire % 2 == 0 ? 1 : -1; };
  for (int s = 0; s < w.crossings(); ++s) {
    int p = w.swaps[s];
    int upper = rows[p - 1], lower = rows[p];
    int sign = -sigma(upper) * sigma(lower);
    along[upper].push_back({s, sign});
    along[lower].push_back({s, -sign});
    std::swap(rows[p - 1], rows[p]);
  }

  // Connector c follows wire c; connector n-1 is the top one. Each adds loops
  // 2c and 2c+1, met as: wire pass (-), connector pass (+), connector pass (-),
  // wire pass (+) on the next wire.
  const int wire_crossings = w.crossings();
  auto loop = [&](int c, int k) { return wire_crossings + 2 * c + k; };
  std::vector<Pass> seq;
  for (int wire = 0; wire < n; ++wire) {
    int prev = (wire + n - 1) % n;
    seq.push_back({loop(prev, 1), +1});
    if (sigma(wire) > 0) {
      seq.insert(seq.end(), along[wire].begin(), along[wire].end());
    } else {
      seq.insert(seq.end(), along[wire].rbegin(), along[wire].rend());
    }
    seq.push_back({loop(wire, 0), -1});
    seq.push_back({loop(wire, 0), +1});
    seq.push_back({loop(wire, 1), -1});
  }
  // The basepoint sits between the two loops of the top connector.
  std::rotate(seq.rbegin(), seq.rbegin() + 1, seq.rend());

  SignedCrossingCode code;
  const int len = static_cast<int>(seq.size());
  code.twin.assign(len, -1);
  code.sign.resize(len);
  std::vector<int> first(wire_crossings + 2 * n, -1);
  for (int k = 0; k < len; ++k) {
    code.sign[k] = seq[k].sign;
    int& f = first[seq[k].crossing];
    if (f < 0) {
      f = k;
    } else {
      code.twin[k] = f;
      code.twin[f] = k;
    }
  }
  return code;
}

void check_arrangement(const LineArrangement& arrangement) {
  const auto& L = arrangement.lines;
  const int n = arrangement.n();
  if (n < 1) throw Error(ErrorKind::BadArrangement, "no lines");
  for (int i = 0; i < n; ++i) {
    if (L[i].slope <= -1 || L[i].slope >= 1)
      throw Error(ErrorKind::BadArrangement, "slope of line " + std::to_string(i + 1) + " not in (-1, 1)");
    if (i > 0 && L[i].slope <= L[i - 1].slope)
      throw Error(ErrorKind::BadArrangement, "slopes must increase strictly");
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Rational x = (L[j].intercept - L[i].intercept) / (L[i].slope - L[j].slope);
      if (abs(x) >= 1)
        throw Error(ErrorKind::BadArrangement,
                    "lines " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " meet at |x| >= 1");
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Rational x = (L[j].intercept - L[i].intercept) / (L[i].slope - L[j].slope);
        if (L[k].slope * x + L[k].intercept == L[i].slope * x + L[i].intercept)
          throw Error(ErrorKind::BadArrangement, "lines " + std::to_string(i + 1) + ", " + std::to_string(j + 1) +
                                                     ", " + std::to_string(k + 1) + " are concurrent");
      }
}

WiringDiagram wiring_of_lines(const LineArrangement& arrangement) {
  check_arrangement(arrangement);
  const auto& L = arrangement.lines;
  const int n = arrangement.n();
  struct Meet {
    Rational x;
    int i, j;
  };
  std::vector<Meet> meets;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) meets.push_back({(L[j].intercept - L[i].intercept) / (L[i].slope - L[j].slope), i, j});
  std::sort(meets.begin(), meets.end(), [](const Meet& a, const Meet& b) { return a.x < b.x; });
  for (size_t k = 1; k < meets.size(); ++k)
    if (meets[k].x == meets[k - 1].x)
      throw Error(ErrorKind::TiedAbscissae, "two intersections at x = " + format_rational(meets[k].x));

  // Far left, the smallest slope is on top.
  WiringDiagram w{n, {}};
  std::vector<int> rows(n);
  std::iota(rows.begin(), rows.end(), 0);
  for (const auto& m : meets) {
    int a = static_cast<int>(std::find(rows.begin(), rows.end(), m.i) - rows.begin());
    int b = static_cast<int>(std::find(rows.begin(), rows.end(), m.j) - rows.begin());
    if (std::abs(a - b) != 1) throw Error(ErrorKind::BadArrangement, "crossing lines are not adjacent");
    int p = std::min(a, b);
    w.swaps.push_back(p + 1);
    std::swap(rows[p], rows[p + 1]);
  }
  return w;
}

Polygon staple_polygon(const LineArrangement& arrangement, const Rational& delta, int salt) {
  check_arrangement(arrangement);
  if (delta <= 0) throw Error(ErrorKind::BadArrangement, "delta must be positive");
  const int n = arrangement.n();
  const auto& L = arrangement.lines;
  const Rational five_fourths(5, 4);
  Rational eta = delta / (16 * n);

  auto on_line = [&](int i, const Rational& x) { return Point{x, L[i].slope * x + L[i].intercept}; };
  std::vector<Point> p(n), q(n);
  for (int i = 0; i < n; ++i) {
    p[i] = on_line(i, -(five_fourths + (i + 1) * eta));
    q[i] = on_line(i, five_fourths + (i + 1) * eta);
  }
  // Bend t moves by up to delta/8 in a direction that depends on t and salt.
  int bend = 0;
  auto nudge = [&](const Point& a, const Rational& dx, const Rational& dy) {
    Rational k(bend + 3 + 5 * salt);
    ++bend;
    Rational ox = delta / 8 / k, oy = delta / 8 / (k * k + 1);
    return Point{a.x + dx + ox, a.y + dy - oy};
  };

  Polygon poly;
  auto& v = poly.vertices;
  for (int i = 0; i < n; ++i) {
    const int wire = i + 1;
    if (wire % 2 == 1) {
      v.push_back(p[i]);
      v.push_back(q[i]);
      if (wire < n) {
        // Right staple down from q_wire to q_wire+1.
        v.push_back(nudge(q[i], -delta, -delta));
        v.push_back(nudge(q[i + 1], -delta, delta));
      } else {
        // Top staple from q_n back over to p_1.
        v.push_back(nudge(q[i], -delta, -delta));
        v.push_back(nudge(p[0], delta, -delta));
      }
    } else {
      v.push_back(q[i]);
      v.push_back(p[i]);
      // Left staple down from p_wire to p_wire+1.
      v.push_back(nudge(p[i], delta, delta));
      v.push_back(nudge(p[i + 1], delta, -delta));
    }
  }
  return poly;
}

StapleResult find_staple_polygon(const LineArrangement& arrangement, Rational initial) {
  const int n = arrangement.n();
  const size_t expected = static_cast<size_t>(n * (n - 1) / 2 + 2 * n);
  Rational delta = initial;
  for (int attempt = 0; attempt < 64; ++attempt) {
    Polygon poly = staple_polygon(arrangement, delta, attempt);
    if (check_generic(poly).generic() && self_intersections(poly).size() == expected)
      return {std::move(poly), delta, attempt + 1};
    delta /= 2;
  }
  throw Error(ErrorKind::PerturbationFailed, "no generic staple polygon found");
}

WiringDiagram ringel_diagram() {
  // Generated by tools/ringel_fixture.py from an exact Pappus configuration.
  return {9, {4, 5, 4, 7, 8, 7, 1, 2, 1, 3, 6, 5, 4, 5, 6, 7, 6, 8,
              5, 2, 3, 2, 1, 4, 3, 2, 3, 5, 7, 6, 7, 4, 5, 4, 6, 3}};
}

}  // namespace curvetp
