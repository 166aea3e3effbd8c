#pragma once
// Wiring diagrams, the looped curve built from them, and the staple polygon
// built from a straight-line realization.
//
// Wires are numbered 1..n from top to bottom left of all crossings. A swap at
// position p exchanges the wires currently at rows p and p+1 (1-based).

#include "curvetp/crossing_code.hpp"
#include "curvetp/geometry.hpp"
#include "curvetp/polygon_scan.hpp"

#include <string>
#include <vector>

namespace curvetp {

struct WiringDiagram {
  int n = 0;
  std::vector<int> swaps;

  int crossings() const { return static_cast<int>(swaps.size()); }
  friend bool operator==(const WiringDiagram&, const WiringDiagram&) = default;
};

struct WiringReport {
  bool positions_legal = true;  // every swap lies in 1..n-1
  bool pairs_once = true;       // every pair of wires crosses exactly once
  std::vector<std::string> failures;

  bool valid() const { return positions_legal && pairs_once; }
};

WiringReport validate_wiring(const WiringDiagram& w);

/// Identity for odd n. For even n, prepends a topmost wire that crosses all
/// others after the original swaps.
WiringDiagram pad_to_odd(const WiringDiagram& w);

/// Signed crossing code of the looped curve: wires joined by connectors
/// (u_2i, u_2i+1) on the left, (v_2i-1, v_2i) on the right and (u_1, v_n) over
/// the top, each connector adding two outward loops. The basepoint lies on the
/// top connector. Throws Error(InvalidWiring) or Error(EvenN).
SignedCrossingCode curve_from_arrangement(const WiringDiagram& w);

/// Lines y = slope * x + intercept.
struct Line {
  Rational slope, intercept;
};

struct LineArrangement {
  std::vector<Line> lines;
  int n() const { return static_cast<int>(lines.size()); }
};

/// Slopes strictly increasing inside (-1, 1), all pairwise intersections with
/// |x| < 1, no three lines concurrent. Throws Error(BadArrangement).
void check_arrangement(const LineArrangement& arrangement);

/// Swap sequence read off the intersections sorted by abscissa. Throws
/// Error(BadArrangement) or Error(TiedAbscissae).
WiringDiagram wiring_of_lines(const LineArrangement& arrangement);

/// The 4n-gon: segments of each line between x = -5/4 and 5/4 (nudged apart
/// by a fraction of delta) joined by three-segment staples whose stubs have
/// offset delta. `salt` varies the deterministic perturbation of the bends.
/// The result is not checked; see find_staple_polygon.
Polygon staple_polygon(const LineArrangement& arrangement, const Rational& delta, int salt = 0);

struct StapleResult {
  Polygon polygon;
  Rational delta;
  int attempts = 0;
};

/// Halves delta from `initial` until staple_polygon is generic with
/// n(n-1)/2 + 2n crossings. Throws Error(PerturbationFailed) after 64 tries.
StapleResult find_staple_polygon(const LineArrangement& arrangement, Rational initial = Rational(1, 8));

/// Ringel's simple arrangement of nine pseudolines that no line arrangement
/// realizes.
WiringDiagram ringel_diagram();

}  // namespace curvetp
