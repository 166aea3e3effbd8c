#include "curvetp/error.hpp"
#include "curvetp/reduction.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace curvetp;
using namespace curvetp::testing;

namespace {

SignedCrossingCode staple_code(const LineArrangement& a) {
  StapleResult r = find_staple_polygon(a);
  REQUIRE(r.polygon.size() == 4 * a.n());
  return extract_leftmost(r.polygon).code;
}

}  // namespace

TEST_CASE("validate_wiring") {
  CHECK(validate_wiring({3, {1, 2, 1}}).valid());
  CHECK(validate_wiring({2, {1}}).valid());
  auto twice = validate_wiring({3, {1, 1}});
  CHECK_FALSE(twice.valid());
  CHECK(twice.positions_legal);
  CHECK_FALSE(twice.pairs_once);
  auto out_of_range = validate_wiring({3, {1, 3, 1}});
  CHECK_FALSE(out_of_range.positions_legal);
  CHECK(validate_wiring(ringel_diagram()).valid());
  CHECK(ringel_diagram().crossings() == 36);
}

TEST_CASE("pad_to_odd") {
  WiringDiagram three{3, {1, 2, 1}};
  CHECK(pad_to_odd(three) == three);
  WiringDiagram padded = pad_to_odd({2, {1}});
  CHECK(padded.n == 3);
  CHECK(padded.crossings() == 3);
  CHECK(validate_wiring(padded).valid());
  CHECK(pad_to_odd(padded) == padded);
  WiringDiagram four{4, {1, 2, 1, 3, 2, 1}};
  REQUIRE(validate_wiring(four).valid());
  WiringDiagram five = pad_to_odd(four);
  CHECK(validate_wiring(five).valid());
  CHECK(five.crossings() == four.crossings() + 4);
}

TEST_CASE("looped curve codes") {
  for (const WiringDiagram& w : {WiringDiagram{1, {}}, WiringDiagram{3, {1, 2, 1}}, WiringDiagram{3, {2, 1, 2}},
                                 pad_to_odd({4, {1, 2, 1, 3, 2, 1}}), ringel_diagram()}) {
    SignedCrossingCode c = curve_from_arrangement(w);
    CHECK(c.n() == w.n * (w.n - 1) / 2 + 2 * w.n);
    CHECK(validate(c).valid());
    CHECK(realizable(c));
    // Each fringe loop is a monogon whose other side is the outer face.
    PlaneMap map = image_graph(c);
    int loops = 0;
    for (int k = 0; k < c.positions(); ++k) {
      if (c.twin[k] != k + 1) continue;
      ++loops;
      int f = map.face_of_dart[PlaneMap::forward_dart(k)], b = map.face_of_dart[PlaneMap::backward_dart(k)];
      CHECK((f == map.outer_face) != (b == map.outer_face));
      CHECK(std::min(map.faces[f].size(), map.faces[b].size()) == 1);
    }
    CHECK(loops == 2 * w.n);
  }
  CHECK(curve_from_arrangement(ringel_diagram()).n() == 54);
  CHECK_THROWS_AS(curve_from_arrangement({2, {1}}), Error);
  CHECK_THROWS_AS(curve_from_arrangement({3, {1, 1}}), Error);
  try {
    curve_from_arrangement({2, {1}});
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::EvenN);
  }
}

TEST_CASE("wiring_of_lines") {
  LineArrangement two{{{q(-1, 2), q(0L)}, {q(1, 2), q(0L)}}};
  CHECK(wiring_of_lines(two) == WiringDiagram{2, {1}});

  LineArrangement three{{{q(-1, 2), q(1, 8)}, {q(0L), q(0L)}, {q(1, 2), q(0L)}}};
  WiringDiagram w = wiring_of_lines(three);
  CHECK(w.crossings() == 3);
  CHECK(validate_wiring(w).valid());
  // Meets at x = 0 (lines 2, 3), 1/8 (1, 3), 1/4 (1, 2).
  CHECK(w == WiringDiagram{3, {2, 1, 2}});

  // These three lines all pass through (1/4, 0).
  LineArrangement concurrent{{{q(-1, 2), q(1, 8)}, {q(0L), q(0L)}, {q(1, 2), q(-1, 8)}}};
  try {
    wiring_of_lines(concurrent);
    FAIL("expected BadArrangement");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::BadArrangement);
  }
  LineArrangement tied{{{q(-1, 2), q(0L)}, {q(0L), q(0L)}, {q(1, 4), q(1, 8)}, {q(1, 2), q(1, 8)}}};
  CHECK_THROWS_AS(wiring_of_lines(tied), Error);
  LineArrangement steep{{{q(-2), q(0L)}, {q(0L), q(0L)}}};
  CHECK_THROWS_AS(wiring_of_lines(steep), Error);
}

TEST_CASE("staple polygon realizes the looped curve") {
  LineArrangement three{{{q(-1, 2), q(1, 8)}, {q(0L), q(0L)}, {q(1, 2), q(0L)}}};
  StapleResult r = find_staple_polygon(three);
  CHECK(r.polygon.size() == 12);
  CHECK(check_generic(r.polygon).generic());
  CHECK(is_isotopic(r.polygon, curve_from_arrangement(wiring_of_lines(three))));

  std::mt19937_64 rng(3);
  for (int n : {3, 5})
    for (int trial = 0; trial < 6; ++trial) {
      LineArrangement a = random_arrangement(rng, n);
      CHECK(codes_isotopic(staple_code(a), curve_from_arrangement(wiring_of_lines(a))));
    }
}

TEST_CASE("staple oracle separates different diagrams") {
  // Two arrangements with different wiring diagrams give non-isotopic curves.
  LineArrangement a{{{q(-1, 2), q(1, 8)}, {q(0L), q(0L)}, {q(1, 2), q(0L)}}};
  LineArrangement b{{{q(-1, 2), q(-1, 8)}, {q(0L), q(0L)}, {q(1, 2), q(0L)}}};
  WiringDiagram wa = wiring_of_lines(a), wb = wiring_of_lines(b);
  REQUIRE(!(wa == wb));
  CHECK_FALSE(codes_isotopic(staple_code(a), curve_from_arrangement(wb)));
  CHECK_FALSE(codes_isotopic(curve_from_arrangement(wa), curve_from_arrangement(wb)));
}
