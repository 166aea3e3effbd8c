#include "curvetp/etr_compiler.hpp"

#include "curvetp/error.hpp"

#include <algorithm>
#include <array>

namespace curvetp::etr {

namespace {

std::string name(const char* prefix, int i) { return std::string(prefix) + "_" + std::to_string(i); }

std::string name(const char* prefix, int i, int j) {
  return std::string(prefix) + "_" + std::to_string(i) + "_" + std::to_string(j);
}

// Balanced, so that long sums do not produce deep trees.
Poly sum(const std::vector<Poly>& terms, size_t lo, size_t hi) {
  if (hi - lo == 1) return terms[lo];
  size_t mid = lo + (hi - lo) / 2;
  return sum(terms, lo, mid) + sum(terms, mid, hi);
}

Poly det2(const Poly& a, const Poly& b, const Poly& c, const Poly& d) { return a * d - b * c; }

}  // namespace

Compiler::Compiler(int m, CompileOptions options) : m_(m), options_(options) {
  if (m < 3) throw Error(ErrorKind::InvalidCode, "a polygon needs at least 3 vertices");
  x_.push_back(nullptr);
  y_.push_back(nullptr);
  for (int i = 1; i <= m; ++i) {
    x_.push_back(variable(name("x", i)));
    y_.push_back(variable(name("y", i)));
  }
}

Poly Compiler::delta(int i, int j, int k) {
  i = wrap(i), j = wrap(j), k = wrap(k);
  auto key = std::make_tuple(i, j, k);
  if (auto it = delta_cache_.find(key); it != delta_cache_.end()) return it->second;
  Poly d = det2(x_[i] - x_[k], y_[i] - y_[k], x_[j] - x_[k], y_[j] - y_[k]);
  delta_cache_.emplace(key, d);
  return d;
}

Poly Compiler::parallel_det(int i, int j) {
  return det2(x_[wrap(i + 1)] - x_[wrap(i)], y_[wrap(i + 1)] - y_[wrap(i)], x_[wrap(j + 1)] - x_[wrap(j)],
              y_[wrap(j + 1)] - y_[wrap(j)]);
}

Poly Compiler::concurrent_det(int i, int j, int k) {
  // Row (dx, dy, x_{i+1} y_i - x_i y_{i+1}) is the line through edge i.
  auto row = [&](int e) {
    int a = wrap(e), b = wrap(e + 1);
    return std::array<Poly, 3>{x_[b] - x_[a], y_[b] - y_[a], x_[b] * y_[a] - x_[a] * y_[b]};
  };
  auto r1 = row(i), r2 = row(j), r3 = row(k);
  return r1[0] * det2(r2[1], r2[2], r3[1], r3[2]) - r1[1] * det2(r2[0], r2[2], r3[0], r3[2]) +
         r1[2] * det2(r2[0], r2[1], r3[0], r3[1]);
}

Formula Compiler::cross(int i, int j) {
  auto key = std::make_tuple(i, j, 0);
  if (auto it = cross_cache_.find(key); it != cross_cache_.end()) return it->second;
  Formula f = conjunction({atom(delta(i, j, j + 1) * delta(i + 1, j, j + 1), Cmp::Lt),
                           atom(delta(i, i + 1, j) * delta(i, i + 1, j + 1), Cmp::Lt)});
  cross_cache_.emplace(key, f);
  return f;
}

Formula Compiler::cross_signed(int i, int j, int sign) {
  auto key = std::make_tuple(i, j, sign);
  if (auto it = cross_cache_.find(key); it != cross_cache_.end()) return it->second;
  Cmp lo = sign > 0 ? Cmp::Lt : Cmp::Gt, hi = sign > 0 ? Cmp::Gt : Cmp::Lt;
  Formula f = conjunction({atom(delta(i, j, j + 1), lo), atom(delta(i + 1, j, j + 1), hi),
                           atom(delta(i, i + 1, j), hi), atom(delta(i, i + 1, j + 1), lo)});
  cross_cache_.emplace(key, f);
  return f;
}

const std::pair<Poly, Poly>& Compiler::intersection(int i, int j) {
  auto key = std::make_pair(i, j);
  auto it = intersections_.find(key);
  if (it == intersections_.end())
    it = intersections_.emplace(key, std::make_pair(variable(name("ix", i, j)), variable(name("iy", i, j)))).first;
  return it->second;
}

Formula Compiler::ordered_p(int i, int j, int k) {
  if (i == j || i == k) return falsity();
  auto key = std::make_tuple(i, j, k);
  if (auto it = ordered_cache_.find(key); it != ordered_cache_.end()) return it->second;
  Poly xij = intersection(i, j).first, xik = intersection(i, k).first;
  Formula f = atom((x_[i] - xij) * (xij - xik), Cmp::Gt);
  ordered_cache_.emplace(key, f);
  return f;
}

Formula Compiler::intersection_equations() {
  std::vector<Formula> parts;
  for (const auto& [key, point] : intersections_) {
    auto it = defining_cache_.find(key);
    if (it == defining_cache_.end()) {
      std::vector<Formula> eqs;
      for (int e : {key.first, key.second}) {
        int a = wrap(e), b = wrap(e + 1);
        eqs.push_back(atom(det2(point.first - x_[b], point.second - y_[b], x_[a] - x_[b], y_[a] - y_[b]), Cmp::Eq));
      }
      it = defining_cache_.emplace(key, conjunction(std::move(eqs))).first;
    }
    parts.push_back(it->second);
  }
  return conjunction(std::move(parts));
}

Poly Compiler::edge_var(int k) {
  auto it = edge_vars_.find(k);
  if (it == edge_vars_.end()) it = edge_vars_.emplace(k, variable(name("edge", k))).first;
  return it->second;
}

Formula Compiler::edge_is(int k, int e) {
  auto key = std::make_pair(k, e);
  if (auto it = edge_eq_cache_.find(key); it != edge_eq_cache_.end()) return it->second;
  Formula f = atom(edge_var(k) - constant(static_cast<long>(e)), Cmp::Eq);
  edge_eq_cache_.emplace(key, f);
  return f;
}

bool Compiler::adjacent_or_equal(int e, int f) const {
  return e == f || wrap(e + 1) == f || wrap(f + 1) == e;
}

void Compiler::check_code(const SignedCrossingCode& code) const {
  if (!structurally_valid(code)) throw Error(ErrorKind::InvalidCode, "not a valid signed crossing code");
}

Formula Compiler::good_polygon() {
  if (good_cache_) return good_cache_;
  std::vector<Formula> parts;
  for (int i = 1; i <= m_; ++i) parts.push_back(atom(x_[i] - x_[wrap(i + 1)], Cmp::Ne));
  for (int i = 2; i <= m_; ++i) parts.push_back(atom(x_[1] - x_[i], Cmp::Le));
  parts.push_back(atom(delta(m_, 1, 2), Cmp::Gt));
  for (int i = 1; i < m_; ++i)
    for (int j = i + 1; j <= m_; ++j) parts.push_back(negate(atom(parallel_det(i, j), Cmp::Eq)));
  for (int i = 1; i <= m_ - 2; ++i)
    for (int j = i + 1; j < m_; ++j)
      for (int k = j + 1; k <= m_; ++k)
        parts.push_back(conjunction(
            {atom(delta(i, j, k), Cmp::Ne), negate(atom(concurrent_det(i, j, k), Cmp::Eq))}));
  good_cache_ = conjunction(std::move(parts));
  return good_cache_;
}

Formula Compiler::num_crossings(int n) {
  if (auto it = num_cache_.find(n); it != num_cache_.end()) return it->second;
  std::vector<Formula> parts;
  std::vector<Poly> indicators;
  for (int i = 1; i <= m_ - 2; ++i)
    for (int j = i + 2; j <= m_; ++j) {
      if (i == 1 && j == m_ && !options_.include_wrap_pair) continue;
      auto key = std::make_pair(i, j);
      auto it = indicators_.find(key);
      if (it == indicators_.end()) it = indicators_.emplace(key, variable(name("X", i, j))).first;
      const Poly& X = it->second;
      Formula c = cross(i, j);
      parts.push_back(disjunction({conjunction({atom(X - constant(1L), Cmp::Eq), c}),
                                   conjunction({atom(X, Cmp::Eq), negate(c)})}));
      indicators.push_back(X);
    }
  Poly total = indicators.empty() ? constant(0L) : sum(indicators, 0, indicators.size());
  parts.push_back(atom(total - constant(static_cast<long>(n)), Cmp::Eq));
  Formula f = conjunction(std::move(parts));
  num_cache_.emplace(n, f);
  return f;
}

Formula Compiler::well_formed(int n) {
  if (auto it = well_formed_cache_.find(n); it != well_formed_cache_.end()) return it->second;
  std::vector<Formula> parts;
  for (int k = 1; k < 2 * n; ++k) parts.push_back(atom(edge_var(k) - edge_var(k + 1), Cmp::Le));
  for (int k = 1; k <= 2 * n; ++k) {
    std::vector<Formula> choices;
    for (int e = 1; e <= m_; ++e) choices.push_back(edge_is(k, e));
    parts.push_back(disjunction(std::move(choices)));
  }
  Formula f = conjunction(std::move(parts));
  well_formed_cache_.emplace(n, f);
  return f;
}

Formula Compiler::crossing_signs(const SignedCrossingCode& code) {
  check_code(code);
  std::vector<Formula> clauses;
  for (int k = 0; k < code.positions(); ++k) {
    const int t = code.twin[k];
    std::vector<Formula> terms;
    for (int e = 1; e <= m_; ++e)
      for (int et = 1; et <= m_; ++et) {
        if (options_.prune && adjacent_or_equal(e, et)) continue;
        terms.push_back(conjunction({edge_is(k + 1, e), edge_is(t + 1, et), cross_signed(e, et, code.sign[k])}));
      }
    clauses.push_back(disjunction(std::move(terms)));
  }
  return conjunction(std::move(clauses));
}

Formula Compiler::crossing_order(const SignedCrossingCode& code) {
  check_code(code);
  std::vector<Formula> clauses;
  for (int k = 0; k + 1 < code.positions(); ++k) {
    const int a = k + 1, b = code.twin[k] + 1, c = code.twin[k + 1] + 1;
    std::vector<Formula> terms{atom(edge_var(a) - edge_var(a + 1), Cmp::Ne)};
    for (int e = 1; e <= m_; ++e)
      for (int et = 1; et <= m_; ++et)
        for (int et2 = 1; et2 <= m_; ++et2) {
          if (options_.prune && (e == et || e == et2 || et == et2)) continue;
          terms.push_back(conjunction({edge_is(a, e), edge_is(b, et), edge_is(c, et2), ordered_p(e, et, et2)}));
        }
    clauses.push_back(disjunction(std::move(terms)));
  }
  if (options_.literal_order_disjunction && !clauses.empty()) return disjunction(std::move(clauses));
  return conjunction(std::move(clauses));
}

Formula Compiler::coded_polygon(const SignedCrossingCode& code) {
  check_code(code);
  const int n = code.n();
  std::vector<Formula> parts{good_polygon(), num_crossings(n), well_formed(n), crossing_signs(code),
                             crossing_order(code), intersection_equations()};
  std::erase_if(parts, [](const Formula& f) { return f->kind == FormulaNode::Kind::True; });
  return conjunction(std::move(parts));
}

std::vector<std::string> Compiler::declarations(int n) const {
  std::vector<std::string> out;
  for (int i = 1; i <= m_; ++i) {
    out.push_back(x_[i]->name);
    out.push_back(y_[i]->name);
  }
  for (int k = 1; k <= 2 * n; ++k) out.push_back(name("edge", k));
  for (const auto& [key, X] : indicators_) out.push_back(X->name);
  for (const auto& [key, point] : intersections_) {
    out.push_back(point.first->name);
    out.push_back(point.second->name);
  }
  return out;
}

Formula good_polygon(int m) { return Compiler(m).good_polygon(); }

Formula num_crossings(int m, int n, CompileOptions options) { return Compiler(m, options).num_crossings(n); }

Formula well_formed(int n, int m) { return Compiler(m).well_formed(n); }

Formula crossing_signs(const SignedCrossingCode& code, int m, CompileOptions options) {
  return Compiler(m, options).crossing_signs(code);
}

Formula crossing_order(const SignedCrossingCode& code, int m, CompileOptions options) {
  return Compiler(m, options).crossing_order(code);
}

Sentence coded_polygon(const SignedCrossingCode& code, int m, CompileOptions options) {
  Compiler c(m, options);
  Formula body = c.coded_polygon(code);
  return {c.declarations(code.n()), body};
}

Sentence isotopic_to_polygon(const SignedCrossingCode& code, int m, CompileOptions options) {
  if (!structurally_valid(code)) throw Error(ErrorKind::InvalidCode, "not a valid signed crossing code");
  if (!realizable(code)) throw Error(ErrorKind::NotRealizable, "code does not describe a plane curve");
  Compiler c(m, options);
  std::vector<Formula> disjuncts;
  for (const auto& member : equivalent_codes(code)) disjuncts.push_back(c.coded_polygon(member));
  return {c.declarations(code.n()), disjunction(std::move(disjuncts))};
}

Assignment witness_assignment(const Polygon& rebased, const EdgeCode& edge) {
  Assignment v;
  const int m = rebased.size();
  for (int i = 0; i < m; ++i) {
    v[name("x", i + 1)] = rebased.vertices[i].x;
    v[name("y", i + 1)] = rebased.vertices[i].y;
  }
  for (size_t k = 0; k < edge.entries.size(); ++k) v[name("edge", static_cast<int>(k) + 1)] = edge.entries[k] + 1;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      Segment a = rebased.edge(i), b = rebased.edge(j);
      if (i < j) v[name("X", i + 1, j + 1)] = segments_cross(a, b) ? 1 : 0;
      if (parallel(a, b)) continue;
      Point p = line_intersection(a, b);
      v[name("ix", i + 1, j + 1)] = p.x;
      v[name("iy", i + 1, j + 1)] = p.y;
    }
  return v;
}

}  // namespace curvetp::etr
