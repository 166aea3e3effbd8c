#include "curvetp/straighten.hpp"

#include "curvetp/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <cstdio>
#include <future>
#include <queue>
#include <set>

namespace curvetp {

namespace {

// Planar triangulation containing the twice-subdivided image graph. Vertex
// ids: crossings 0..n-1, then two subdivision vertices per arc, then face
// centers and rings.
struct Triangulation {
  std::vector<std::set<int>> adj;
  std::vector<int> outer;  // ring inside the outer face, in boundary order

  int add_vertex() {
    adj.emplace_back();
    return static_cast<int>(adj.size()) - 1;
  }
  void link(int a, int b) {
    adj[a].insert(b);
    adj[b].insert(a);
  }
};

int first_sub(int n, int arc) { return n + 2 * arc; }

Triangulation triangulate(const SignedCrossingCode& code, const PlaneMap& map) {
  const int n = code.n(), len = code.positions();
  Triangulation t;
  t.adj.resize(n + 2 * len);
  for (int a = 0; a < len; ++a) {
    int s1 = first_sub(n, a), s2 = s1 + 1;
    t.link(map.vertex_of_position[a], s1);
    t.link(s1, s2);
    t.link(s2, map.vertex_of_position[(a + 1) % len]);
  }
  // Faces are stellated. A boundary that passes a crossing twice would give
  // a doubled spoke, so such a face gets an inner ring with one vertex per
  // boundary occurrence, zigzagged to the boundary and coned to the center.
  for (int f = 0; f < map.face_count(); ++f) {
    std::vector<int> walk;
    for (int d : map.faces[f]) {
      int a = PlaneMap::arc_of(d), s1 = first_sub(n, a);
      walk.push_back(map.tail[d]);
      if (PlaneMap::is_forward(d)) {
        walk.push_back(s1);
        walk.push_back(s1 + 1);
      } else {
        walk.push_back(s1 + 1);
        walk.push_back(s1);
      }
    }
    const int L = static_cast<int>(walk.size());
    std::vector<int> sorted(walk);
    std::sort(sorted.begin(), sorted.end());
    const bool outer = f == map.outer_face;
    bool repeats = outer || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
    std::vector<int> ring(walk);
    if (repeats)
      for (auto& r : ring) r = t.add_vertex();
    // The outer ring becomes the pinned boundary and gets no center.
    int center = outer ? -1 : t.add_vertex();
    for (int i = 0; i < L; ++i) {
      int next = (i + 1) % L;
      if (repeats) {
        t.link(walk[i], ring[i]);
        t.link(walk[i], ring[next]);
        t.link(ring[i], ring[next]);
      }
      if (!outer) t.link(ring[i], center);
    }
    if (outer) t.outer = ring;
  }
  return t;
}

// Barycentric embedding with the outer ring pinned: every other vertex is
// the average of its neighbors. Exact elimination in breadth-first order keeps
// the fill inside a band.
std::vector<Point> barycentric(const Triangulation& t, const std::vector<Point>& pinned) {
  const int V = static_cast<int>(t.adj.size());
  std::vector<Point> pos(V);
  std::vector<int> index(V, -1), order;
  std::vector<bool> fixed(V, false);
  for (size_t k = 0; k < t.outer.size(); ++k) {
    fixed[t.outer[k]] = true;
    pos[t.outer[k]] = pinned[k];
  }
  std::vector<bool> seen(fixed);
  std::queue<int> bfs;
  for (int v : t.outer) bfs.push(v);
  while (!bfs.empty()) {
    int v = bfs.front();
    bfs.pop();
    for (int u : t.adj[v])
      if (!seen[u]) {
        seen[u] = true;
        index[u] = static_cast<int>(order.size());
        order.push_back(u);
        bfs.push(u);
      }
  }
  const int N = static_cast<int>(order.size());

  std::vector<std::vector<Rational>> M(N, std::vector<Rational>(N));
  std::vector<Rational> bx(N), by(N);
  std::vector<int> hi(N, 0);
  for (int r = 0; r < N; ++r) {
    int v = order[r];
    M[r][r] = static_cast<long>(t.adj[v].size());
    hi[r] = r;
    for (int u : t.adj[v]) {
      if (fixed[u]) {
        bx[r] += pos[u].x;
        by[r] += pos[u].y;
      } else {
        M[r][index[u]] = -1;
        hi[r] = std::max(hi[r], index[u]);
      }
    }
  }
  for (int k = 0; k < N; ++k) {
    if (M[k][k] == 0) throw Error(ErrorKind::PerturbationFailed, "singular barycentric system");
    for (int i = k + 1; i < N; ++i) {
      if (M[i][k] == 0) continue;
      Rational f = M[i][k] / M[k][k];
      for (int j = k + 1; j <= hi[k]; ++j)
        if (M[k][j] != 0) M[i][j] -= f * M[k][j];
      M[i][k] = 0;
      bx[i] -= f * bx[k];
      by[i] -= f * by[k];
      hi[i] = std::max(hi[i], hi[k]);
    }
  }
  std::vector<Rational> x(N), y(N);
  for (int k = N - 1; k >= 0; --k) {
    Rational sx = bx[k], sy = by[k];
    for (int j = k + 1; j <= hi[k]; ++j)
      if (M[k][j] != 0) {
        sx -= M[k][j] * x[j];
        sy -= M[k][j] * y[j];
      }
    x[k] = sx / M[k][k];
    y[k] = sy / M[k][k];
  }
  for (int r = 0; r < N; ++r) pos[order[r]] = {x[r], y[r]};
  return pos;
}

// Rational points on the unit circle, clockwise, near equal spacing.
std::vector<Point> circle_points(int count) {
  std::vector<Point> out;
  for (int i = 0; i < count; ++i) {
    double half = -std::numbers::pi * i / count;
    if (2 * i == count) {
      out.push_back({Rational(-1), Rational(0)});
      continue;
    }
    Rational t(static_cast<long>(std::llround(std::tan(half) * 4096)), 4096);
    Rational d = 1 + t * t;
    out.push_back({(1 - t * t) / d, 2 * t / d});
  }
  return out;
}

Polygon simple_triangle() { return Polygon{{Point{0, 0}, Point{2, 1}, Point{1, 3}}}; }

}  // namespace

StraightenResult straighten_upperbound(const SignedCrossingCode& code) {
  if (code.n() == 0) {
    Polygon tri = simple_triangle();
    return {tri, 3, is_isotopic(tri, code)};
  }
  PlaneMap map = image_graph(code);
  const int n = code.n(), len = code.positions();
  Triangulation t = triangulate(code, map);
  // Pinned clockwise: the outer ring runs counterclockwise around its face,
  // which becomes the unbounded side here.
  std::vector<Point> pos = barycentric(t, circle_points(static_cast<int>(t.outer.size())));

  // Clear the common denominator; the tour then has integer coordinates.
  mpz_class scale = 1;
  for (int v = 0; v < n + 2 * len; ++v) {
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), pos[v].x.get_den_mpz_t());
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), pos[v].y.get_den_mpz_t());
  }
  std::vector<Point> tour;
  for (int a = 0; a < len; ++a)
    for (int v : {map.vertex_of_position[a], first_sub(n, a), first_sub(n, a) + 1})
      tour.push_back({pos[v].x * scale, pos[v].y * scale});

  Rational feature;
  for (size_t i = 0; i < tour.size(); ++i)
    for (size_t j = i + 1; j < tour.size(); ++j) {
      Rational d = std::max(abs(tour[i].x - tour[j].x), abs(tour[i].y - tour[j].y));
      if (d > 0 && (feature == 0 || d < feature)) feature = d;
    }

  // The tour visits every crossing point twice. Jiggling both visits can
  // leave three crossings where the two corners overlap in angle, so first
  // one visit slides a fraction eps along its outgoing edge, which leaves
  // exactly one; then every vertex k moves by (delta/2^k, delta/3^k), much
  // less than that.
  Rational eps(1, 4);
  for (int attempt = 0; attempt < 64; ++attempt, eps /= 2) {
    Rational delta = feature * eps / (Rational(8) << attempt);
    Polygon poly{tour};
    for (int a = 0; a < len; ++a)
      if (a < code.twin[a]) {
        Point& p = poly.vertices[3 * a];
        const Point& next = tour[3 * a + 1];
        p = {p.x + eps * (next.x - p.x), p.y + eps * (next.y - p.y)};
      }
    Rational ox = delta, oy = delta;
    for (auto& p : poly.vertices) {
      p = {p.x + ox, p.y + oy};
      ox /= 2;
      oy /= 3;
    }
    if (check_generic(poly).generic() && is_isotopic(poly, code)) {
      const int count = poly.size();
      return {std::move(poly), count, true};
    }
  }
  throw Error(ErrorKind::PerturbationFailed, "no generic perturbation of the drawing matched the code");
}

const char* to_string(SearchOutcome outcome) {
  switch (outcome) {
    case SearchOutcome::Sat: return "SAT";
    case SearchOutcome::Unsat: return "UNSAT";
    case SearchOutcome::Unknown: return "UNKNOWN";
  }
  return "?";
}

std::optional<Polygon> witness_from_model(const Model& model, int m, const SignedCrossingCode& code) {
  std::vector<const ModelValue*> xs, ys;
  for (int i = 1; i <= m; ++i) {
    auto x = model.find("x_" + std::to_string(i)), y = model.find("y_" + std::to_string(i));
    if (x == model.end() || y == model.end())
      throw Error(ErrorKind::ModelParseFailure, "model lacks a value for vertex " + std::to_string(i));
    xs.push_back(&x->second);
    ys.push_back(&y->second);
  }
  mpz_class bound;
  mpz_ui_pow_ui(bound.get_mpz_t(), 2, 64);
  auto build = [&](bool round) {
    Polygon p;
    auto value = [&](const ModelValue* v) {
      return round && !v->exact ? round_continued_fraction(v->value, bound) : v->value;
    };
    for (int i = 0; i < m; ++i) p.vertices.push_back({value(xs[i]), value(ys[i])});
    return p;
  };
  for (bool round : {true, false}) {
    Polygon p = build(round);
    if (check_generic(p).generic() && is_isotopic(p, code)) return p;
  }
  return std::nullopt;
}

namespace {

SearchStep search_one(const SignedCrossingCode& code, int m, const SearchOptions& options,
                      const SolverConfig& solver) {
  SearchStep step;
  step.m = m;
  std::string smt = etr::serialize(etr::isotopic_to_polygon(code, m, options.compile), etr::Dialect::Smt2);
  SolverRun run = run_solver(smt, solver);
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.2fs", run.seconds);
  step.detail = std::string(to_string(run.status)) + " in " + timing;
  switch (run.status) {
    case SolverStatus::Unsat:
      step.outcome = SearchOutcome::Unsat;
      break;
    case SolverStatus::Sat:
      try {
        step.witness = witness_from_model(parse_model(run.output), m, code);
        if (step.witness) {
          step.outcome = SearchOutcome::Sat;
        } else {
          step.detail += "; model failed exact verification";
        }
      } catch (const Error& e) {
        step.detail += std::string("; ") + e.what();
      }
      break;
    default:
      break;
  }
  return step;
}

}  // namespace

MinSearchReport min_polygon_search(const SignedCrossingCode& code, const SearchOptions& options,
                                   const SolverConfig& solver) {
  if (options.m_min < 3 || options.m_max < options.m_min)
    throw Error(ErrorKind::InvalidCode, "vertex counts must satisfy 3 <= m_min <= m_max");
  if (!realizable(code)) throw Error(ErrorKind::NotRealizable, "the code describes no plane curve");
  solver.resolved_command();

  MinSearchReport report;
  const int batch = std::max(1, options.parallel);
  for (int m = options.m_min; m <= options.m_max; m += batch) {
    std::vector<std::future<SearchStep>> running;
    for (int k = m; k < m + batch && k <= options.m_max; ++k)
      running.push_back(std::async(std::launch::async, search_one, std::cref(code), k, std::cref(options),
                                   std::cref(solver)));
    bool found = false;
    for (auto& f : running) {
      SearchStep step = f.get();
      if (found && options.stop_at_first_sat) continue;
      if (step.outcome == SearchOutcome::Sat) {
        found = true;
        if (!report.best_m) report.best_m = step.m;
      }
      report.steps.push_back(std::move(step));
    }
    if (found && options.stop_at_first_sat) break;
  }
  return report;
}

}  // namespace curvetp
