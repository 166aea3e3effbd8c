#pragma once
// External SMT solver runs over SMT-LIB 2 files, and model parsing.

#include "curvetp/geometry.hpp"

#include <map>
#include <string>

namespace curvetp {

struct SolverConfig {
  // Shell words; the input file path is appended. Empty means $SOLVER_CMD,
  // else "z3 -smt2".
  std::string command;
  int timeout_seconds = 60;

  /// The command that will run. Throws Error(SolverUnavailable) if its
  /// program is not an executable file or found on PATH.
  std::string resolved_command() const;
  bool available() const;
};

enum class SolverStatus { Sat, Unsat, Unknown, Timeout, Failed };

const char* to_string(SolverStatus status);

struct SolverRun {
  SolverStatus status = SolverStatus::Failed;
  std::string output;  // stdout and stderr together
  double seconds = 0;
};

/// Writes `smt2` to a temporary file and runs the solver on it, killing it at
/// the timeout. Throws Error(SolverUnavailable).
SolverRun run_solver(const std::string& smt2, const SolverConfig& config);

struct ModelValue {
  Rational value;
  bool exact = true;  // false for truncated decimals such as 1.41421?
};

using Model = std::map<std::string, ModelValue>;

/// Real-valued define-fun entries of a get-model response. Values that are not
/// rational constants (algebraic root objects, for instance) are skipped.
/// Throws Error(ModelParseFailure) on malformed input.
Model parse_model(const std::string& output);

/// Best rational approximation with denominator at most `max_denominator`.
Rational round_continued_fraction(const Rational& x, const mpz_class& max_denominator);

}  // namespace curvetp
