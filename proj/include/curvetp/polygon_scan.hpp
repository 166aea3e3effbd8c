#pragma once
// Polygons as closed curves: genericity, self-intersections, and the codes a
// polygon induces.

#include "curvetp/crossing_code.hpp"
#include "curvetp/geometry.hpp"

#include <array>
#include <utility>
#include <vector>

namespace curvetp {

/// Closed polygon p_0 p_1 ... p_{m-1}; edge i runs from p_i to p_{i+1 mod m}.
struct Polygon {
  std::vector<Point> vertices;

  int size() const { return static_cast<int>(vertices.size()); }
  const Point& vertex(int i) const { return vertices[((i % size()) + size()) % size()]; }
  Segment edge(int i) const { return {vertex(i), vertex(i + 1)}; }
};

/// Which edges of the polygon carry each crossing position, 0-based edge
/// indices. Weakly increasing.
struct EdgeCode {
  std::vector<int> entries;

  friend bool operator==(const EdgeCode&, const EdgeCode&) = default;
};

struct GenericityReport {
  bool enough_vertices = true;
  std::vector<std::pair<int, int>> equal_x;              // vertex pairs
  std::vector<std::array<int, 3>> collinear_vertices;    // vertex triples
  std::vector<std::pair<int, int>> parallel_edges;       // edge pairs
  std::vector<std::array<int, 3>> concurrent_edges;      // edge triples

  bool generic() const {
    return enough_vertices && equal_x.empty() && collinear_vertices.empty() &&
           parallel_edges.empty() && concurrent_edges.empty();
  }
};

struct Crossing {
  int i = 0;  // i < j, not adjacent
  int j = 0;
  Point point;
  int sign = 0;  // crossing sign of directed edge i against directed edge j
};

struct ExtractedCode {
  SignedCrossingCode code;
  EdgeCode edge;
  int basepoint = 0;   // index of the basepoint vertex in the input polygon
  bool reversed = false;
  Polygon polygon;     // the input re-indexed so that the basepoint is vertex 0
};

GenericityReport check_generic(const Polygon& polygon);

/// Sorted by (i, distance from p_i along edge i). Throws Error(NotGeneric).
std::vector<Crossing> self_intersections(const Polygon& polygon);

/// Indices of the strict convex hull vertices, counterclockwise.
std::vector<int> convex_hull(const Polygon& polygon);

/// Re-indexes so that `basepoint` becomes vertex 0 and (p_{m-1}, p_0, p_1)
/// turns counterclockwise.
Polygon rebase(const Polygon& polygon, int basepoint, bool* reversed = nullptr);

/// Code and edge code read from a polygon that already satisfies the basepoint
/// convention (vertex 0 on the hull, counterclockwise turn there).
ExtractedCode read_code(const Polygon& rebased_polygon);

/// One result per convex hull vertex. Throws Error(NotGeneric).
std::vector<ExtractedCode> extract_codes(const Polygon& polygon);

/// The extraction whose basepoint is the leftmost vertex.
ExtractedCode extract_leftmost(const Polygon& polygon);

/// Throws Error(NotGeneric) or Error(NotRealizable).
bool is_isotopic(const Polygon& polygon, const SignedCrossingCode& target);

}  // namespace curvetp
