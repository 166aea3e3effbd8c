#pragma once
// Compiles "some generic m-gon realizes this curve" into an existential
// sentence over the reals.
//
// Indices in variable names are 1-based: x_i, y_i are vertex coordinates,
// edge_k is the edge carrying the k-th crossing, X_i_j indicates that edges
// i and j cross, and ix_i_j, iy_i_j is the intersection of their lines.

#include "curvetp/crossing_code.hpp"
#include "curvetp/formula.hpp"
#include "curvetp/polygon_scan.hpp"

#include <map>
#include <set>
#include <tuple>
#include <utility>

namespace curvetp::etr {

struct CompileOptions {
  // Drop disjuncts that are false under genericity: equal or adjacent edge
  // pairs in the sign clauses, repeated edges in the order clauses.
  bool prune = true;
  // Join the consecutive-crossing order clauses with OR instead of AND.
  bool literal_order_disjunction = false;
  // Give the pair (1, m) a crossing indicator even though the two edges
  // share a vertex.
  bool include_wrap_pair = false;

  /// No pruning, OR-joined order clauses, wrap pair included.
  static CompileOptions literal() { return {false, true, true}; }
};

/// Builds the subformulas for a fixed vertex count. Polynomials and atoms are
/// cached, so formulas built by one instance share nodes.
class Compiler {
 public:
  explicit Compiler(int m, CompileOptions options = {});

  int m() const { return m_; }
  const CompileOptions& options() const { return options_; }

  Formula good_polygon();
  Formula num_crossings(int n);
  Formula well_formed(int n);
  Formula crossing_signs(const SignedCrossingCode& code);
  Formula crossing_order(const SignedCrossingCode& code);
  /// Conjunction of the five parts above plus the defining equations of
  /// every intersection point referenced so far.
  Formula coded_polygon(const SignedCrossingCode& code);

  /// Declarations for everything this instance has referenced: coordinates,
  /// edge_1..edge_2n, indicators, intersection points.
  std::vector<std::string> declarations(int n) const;

  // Polynomials over the coordinate variables, vertices 1-based.
  Poly delta(int i, int j, int k);
  Poly parallel_det(int i, int j);
  Poly concurrent_det(int i, int j, int k);
  Formula cross(int i, int j);
  Formula cross_signed(int i, int j, int sign);
  Formula ordered_p(int i, int j, int k);

 private:
  int m_;
  CompileOptions options_;
  std::vector<Poly> x_, y_;
  std::map<int, Poly> edge_vars_;
  std::map<std::pair<int, int>, Poly> indicators_;
  std::map<std::pair<int, int>, std::pair<Poly, Poly>> intersections_;
  std::map<std::tuple<int, int, int>, Poly> delta_cache_;
  std::map<std::tuple<int, int, int>, Formula> cross_cache_;
  std::map<std::pair<int, int>, Formula> edge_eq_cache_;
  std::map<std::tuple<int, int, int>, Formula> ordered_cache_;
  std::map<std::pair<int, int>, Formula> defining_cache_;
  Formula good_cache_;
  std::map<int, Formula> num_cache_, well_formed_cache_;

  int wrap(int i) const { return (i - 1 + m_) % m_ + 1; }
  Poly edge_var(int k);
  Formula edge_is(int k, int e);
  const std::pair<Poly, Poly>& intersection(int i, int j);
  Formula intersection_equations();
  bool adjacent_or_equal(int e, int f) const;
  void check_code(const SignedCrossingCode& code) const;
};

// Free-function entry points, one fresh Compiler each.
Formula good_polygon(int m);
Formula num_crossings(int m, int n, CompileOptions options = {});
Formula well_formed(int n, int m);
Formula crossing_signs(const SignedCrossingCode& code, int m, CompileOptions options = {});
Formula crossing_order(const SignedCrossingCode& code, int m, CompileOptions options = {});
Sentence coded_polygon(const SignedCrossingCode& code, int m, CompileOptions options = {});

/// Disjunction of coded_polygon over all codes equivalent to `code`, with
/// coordinates and edge variables shared. Throws Error(NotRealizable).
Sentence isotopic_to_polygon(const SignedCrossingCode& code, int m, CompileOptions options = {});

/// Values that satisfy coded_polygon for the code read off `rebased`: its
/// coordinates, the given edge code, true crossing indicators for every
/// pair, and every pairwise line intersection.
Assignment witness_assignment(const Polygon& rebased, const EdgeCode& edge);

}  // namespace curvetp::etr
