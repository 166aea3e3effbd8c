#pragma once
// Polygonal realizations of plane curves: a linear-size construction from the
// image graph, and a solver-driven search for the fewest vertices.

#include "curvetp/crossing_code.hpp"
#include "curvetp/etr_compiler.hpp"
#include "curvetp/polygon_scan.hpp"
#include "curvetp/solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace curvetp {

struct StraightenResult {
  Polygon polygon;
  int vertex_count = 0;
  bool verified = false;  // is_isotopic(polygon, code) held
};

/// Straight-line drawing of the twice-subdivided image graph (exact barycentric
/// embedding of a triangulation that contains it), toured through every
/// crossing and perturbed to genericity. At most 6n vertices; n == 0 gives a
/// triangle. Throws Error(NotRealizable) or Error(PerturbationFailed).
StraightenResult straighten_upperbound(const SignedCrossingCode& code);

enum class SearchOutcome { Sat, Unsat, Unknown };

const char* to_string(SearchOutcome outcome);

struct SearchStep {
  int m = 0;
  SearchOutcome outcome = SearchOutcome::Unknown;
  std::optional<Polygon> witness;  // set only for a verified Sat
  std::string detail;              // solver status, timing, or why a model was rejected
};

struct MinSearchReport {
  std::vector<SearchStep> steps;  // ascending m
  std::optional<int> best_m;      // smallest m with a verified witness
};

struct SearchOptions {
  int m_min = 3;
  int m_max = 3;
  bool stop_at_first_sat = true;
  int parallel = 1;  // concurrent solver processes
  etr::CompileOptions compile;
};

/// Emits the isotopy sentence for each m, runs the solver and re-verifies every
/// model exactly. Throws Error(NotRealizable) or Error(SolverUnavailable).
MinSearchReport min_polygon_search(const SignedCrossingCode& code, const SearchOptions& options,
                                   const SolverConfig& solver);

/// Polygon from a model's x_i, y_i values. Approximate values are rounded by
/// continued fractions with denominators up to 2^64; if that polygon fails
/// verification the unrounded values are tried. Throws Error(ModelParseFailure)
/// when a coordinate is missing.
std::optional<Polygon> witness_from_model(const Model& model, int m, const SignedCrossingCode& code);

}  // namespace curvetp
