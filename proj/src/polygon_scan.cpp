#include "curvetp/polygon_scan.hpp"

#include "curvetp/error.hpp"

#include <algorithm>
#include <array>

namespace curvetp {

namespace {

using Homogeneous = std::array<Rational, 3>;

// Scaled so the first nonzero entry is 1; all-zero vectors stay zero.
Homogeneous normalized(Homogeneous h) {
  for (const auto& lead : h) {
    if (lead == 0) continue;
    Rational pivot = lead;
    for (auto& e : h) e /= pivot;
    break;
  }
  return h;
}

bool is_zero(const Homogeneous& h) { return h[0] == 0 && h[1] == 0 && h[2] == 0; }

// Triples a < b < c, found from a, for which keys[a][b] and keys[a][c] agree
// or either is zero. keys(a, b) is only called for b > a.
template <class Key>
void dependent_triples(int m, Key keys, std::vector<std::array<int, 3>>& out) {
  for (int a = 0; a < m; ++a) {
    std::vector<std::pair<Homogeneous, int>> rows;
    std::vector<int> zero;
    for (int b = a + 1; b < m; ++b) {
      Homogeneous h = normalized(keys(a, b));
      if (is_zero(h)) {
        zero.push_back(b);
      } else {
        rows.push_back({std::move(h), b});
      }
    }
    std::vector<bool> is_zero_row(m, false);
    for (int b : zero) is_zero_row[b] = true;
    std::vector<std::array<int, 3>> found;
    if (!zero.empty()) {
      for (int b = a + 1; b < m; ++b)
        for (int c = b + 1; c < m; ++c)
          if (is_zero_row[b] || is_zero_row[c]) found.push_back({a, b, c});
    }
    std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
      return x.first != y.first ? x.first < y.first : x.second < y.second;
    });
    for (size_t i = 0; i < rows.size();) {
      size_t j = i;
      while (j < rows.size() && rows[j].first == rows[i].first) ++j;
      for (size_t p = i; p < j; ++p)
        for (size_t q = p + 1; q < j; ++q) found.push_back({a, rows[p].second, rows[q].second});
      i = j;
    }
    std::sort(found.begin(), found.end());
    out.insert(out.end(), found.begin(), found.end());
  }
}

}  // namespace

GenericityReport check_generic(const Polygon& polygon) {
  GenericityReport report;
  const int m = polygon.size();
  if (m < 3) {
    report.enough_vertices = false;
    return report;
  }
  const auto& v = polygon.vertices;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (v[a].x == v[b].x) report.equal_x.push_back({a, b});
  // Three vertices are collinear when two of them sit in the same direction
  // from the third.
  dependent_triples(
      m, [&](int a, int b) { return Homogeneous{v[b].x - v[a].x, v[b].y - v[a].y, Rational(0)}; },
      report.collinear_vertices);
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (parallel(polygon.edge(a), polygon.edge(b))) report.parallel_edges.push_back({a, b});
  // Lines as (A, B, C) with Ax + By + C = 0; three are concurrent (possibly at
  // infinity) when two meet the third at the same projective point.
  std::vector<Homogeneous> lines;
  for (int e = 0; e < m; ++e) {
    const Segment s = polygon.edge(e);
    lines.push_back({s.b.y - s.a.y, s.a.x - s.b.x, s.b.x * s.a.y - s.a.x * s.b.y});
  }
  dependent_triples(
      m,
      [&](int a, int b) {
        const auto &p = lines[a], &q = lines[b];
        return Homogeneous{p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]};
      },
      report.concurrent_edges);
  return report;
}

namespace {

void require_generic(const Polygon& polygon) {
  if (!check_generic(polygon).generic()) throw Error(ErrorKind::NotGeneric, "polygon is not generic");
}

bool adjacent(int i, int j, int m) { return (i + 1) % m == j || (j + 1) % m == i; }

// Crossings found without the genericity gate; callers have already checked.
std::vector<Crossing> scan_crossings(const Polygon& polygon) {
  const int m = polygon.size();
  std::vector<Crossing> out;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 2; j < m; ++j) {
      if (adjacent(i, j, m)) continue;
      const Segment e = polygon.edge(i), f = polygon.edge(j);
      const CrossingSign s = crossing_sign(e, f);
      if (s == CrossingSign::None) continue;
      out.push_back({i, j, line_intersection(e, f), s == CrossingSign::Positive ? 1 : -1});
    }
  }
  // Along an edge, distance from its start is monotone in |x - x_start|
  // because no edge is vertical.
  std::stable_sort(out.begin(), out.end(), [&](const Crossing& a, const Crossing& b) {
    if (a.i != b.i) return a.i < b.i;
    const Rational& x0 = polygon.vertex(a.i).x;
    return abs(a.point.x - x0) < abs(b.point.x - x0);
  });
  return out;
}

}  // namespace

std::vector<Crossing> self_intersections(const Polygon& polygon) {
  require_generic(polygon);
  return scan_crossings(polygon);
}

std::vector<int> convex_hull(const Polygon& polygon) {
  const int m = polygon.size();
  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) idx[i] = i;
  const auto& v = polygon.vertices;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (v[a].x != v[b].x) return v[a].x < v[b].x;
    return v[a].y < v[b].y;
  });
  std::vector<int> hull(2 * m);
  int k = 0;
  for (int i = 0; i < m; ++i) {
    while (k >= 2 && orient(v[hull[k - 2]], v[hull[k - 1]], v[idx[i]]) <= 0) --k;
    hull[k++] = idx[i];
  }
  for (int i = m - 2, lower = k + 1; i >= 0; --i) {
    while (k >= lower && orient(v[hull[k - 2]], v[hull[k - 1]], v[idx[i]]) <= 0) --k;
    hull[k++] = idx[i];
  }
  hull.resize(std::max(k - 1, 0));
  return hull;
}

Polygon rebase(const Polygon& polygon, int basepoint, bool* reversed) {
  const int m = polygon.size();
  const bool ccw = orient(polygon.vertex(basepoint - 1), polygon.vertex(basepoint), polygon.vertex(basepoint + 1)) > 0;
  Polygon out;
  out.vertices.reserve(m);
  for (int j = 0; j < m; ++j) out.vertices.push_back(polygon.vertex(ccw ? basepoint + j : basepoint - j));
  if (reversed) *reversed = !ccw;
  return out;
}

ExtractedCode read_code(const Polygon& rebased_polygon) {
  const Polygon& p = rebased_polygon;
  const int m = p.size();
  const auto crossings = scan_crossings(p);

  // Gather per edge the crossings it carries, ordered from the edge start.
  struct Visit {
    int crossing;
    int other_edge;
  };
  std::vector<std::vector<Visit>> per_edge(m);
  for (int c = 0; c < static_cast<int>(crossings.size()); ++c) {
    per_edge[crossings[c].i].push_back({c, crossings[c].j});
    per_edge[crossings[c].j].push_back({c, crossings[c].i});
  }
  ExtractedCode out;
  std::vector<int> first_position(crossings.size(), -1);
  const int len = 2 * static_cast<int>(crossings.size());
  out.code.twin.assign(len, -1);
  out.code.sign.assign(len, 0);
  int position = 0;
  for (int e = 0; e < m; ++e) {
    auto& visits = per_edge[e];
    const Rational& x0 = p.vertex(e).x;
    std::sort(visits.begin(), visits.end(), [&](const Visit& a, const Visit& b) {
      return abs(crossings[a.crossing].point.x - x0) < abs(crossings[b.crossing].point.x - x0);
    });
    for (const Visit& visit : visits) {
      const int c = visit.crossing;
      if (first_position[c] < 0) {
        first_position[c] = position;
      } else {
        out.code.twin[position] = first_position[c];
        out.code.twin[first_position[c]] = position;
      }
      out.code.sign[position] = crossing_sign(p.edge(e), p.edge(visit.other_edge)) == CrossingSign::Positive ? 1 : -1;
      out.edge.entries.push_back(e);
      ++position;
    }
  }
  out.polygon = p;
  return out;
}

std::vector<ExtractedCode> extract_codes(const Polygon& polygon) {
  require_generic(polygon);
  std::vector<ExtractedCode> out;
  for (int h : convex_hull(polygon)) {
    bool reversed = false;
    ExtractedCode code = read_code(rebase(polygon, h, &reversed));
    code.basepoint = h;
    code.reversed = reversed;
    out.push_back(std::move(code));
  }
  return out;
}

ExtractedCode extract_leftmost(const Polygon& polygon) {
  require_generic(polygon);
  int left = 0;
  for (int i = 1; i < polygon.size(); ++i)
    if (polygon.vertices[i].x < polygon.vertices[left].x) left = i;
  bool reversed = false;
  ExtractedCode code = read_code(rebase(polygon, left, &reversed));
  code.basepoint = left;
  code.reversed = reversed;
  return code;
}

bool is_isotopic(const Polygon& polygon, const SignedCrossingCode& target) {
  require_generic(polygon);
  if (!realizable(target)) throw Error(ErrorKind::NotRealizable, "target code is not realizable");
  const auto targets = equivalent_codes(target);
  const auto crossings = scan_crossings(polygon);
  if (2 * static_cast<int>(crossings.size()) != target.positions()) return false;
  for (const auto& extracted : extract_codes(polygon))
    if (std::binary_search(targets.begin(), targets.end(), extracted.code)) return true;
  return false;
}

}  // namespace curvetp
