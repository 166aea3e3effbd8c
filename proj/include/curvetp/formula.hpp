#pragma once
// Existential sentences over the reals: polynomial DAGs, boolean structure,
// exact evaluation and text serialization.
//
// Nodes are immutable and shared; a subformula built once may appear under
// many parents. Statistics and the infix dialect treat the sentence as the
// fully expanded tree, the SMT-LIB dialect names shared nodes once.

#include "curvetp/geometry.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace curvetp::etr {

struct PolyNode;
using Poly = std::shared_ptr<const PolyNode>;

struct PolyNode {
  enum class Kind { Const, Var, Add, Sub, Mul };
  Kind kind = Kind::Const;
  Rational value;       // Const
  std::string name;     // Var
  Poly lhs, rhs;        // Add / Sub / Mul
};

Poly constant(const Rational& value);
Poly constant(long value);
Poly variable(std::string name);
Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);

/// Formal degree (no cancellation is detected).
int degree(const Poly& p);

/// Comparison of a polynomial against zero.
enum class Cmp { Eq, Lt, Le, Ne, Gt, Ge };

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  enum class Kind { True, False, Atom, Not, And, Or };
  Kind kind = Kind::True;
  Cmp cmp = Cmp::Eq;
  Poly poly;
  std::vector<Formula> children;
};

Formula truth();
Formula falsity();
Formula atom(Poly p, Cmp cmp);
Formula negate(Formula f);
/// Empty input yields TRUE, a single child is returned unchanged.
Formula conjunction(std::vector<Formula> children);
/// Empty input yields FALSE, a single child is returned unchanged.
Formula disjunction(std::vector<Formula> children);

/// Existential prefix plus body.
struct Sentence {
  std::vector<std::string> variables;
  Formula body;
};

struct FormulaStats {
  std::uint64_t variables = 0;
  std::uint64_t atoms = 0;   // atom occurrences in the expanded tree
  std::uint64_t nodes = 0;   // boolean + polynomial nodes in the expanded tree
  int max_degree = 0;
};

FormulaStats stats(const Sentence& sentence);
std::uint64_t atom_count(const Formula& f);

/// Variable names occurring in `f`, in first-visit order.
std::vector<std::string> free_variables(const Formula& f);

using Assignment = std::unordered_map<std::string, Rational>;

/// Exact evaluation. Throws Error(MissingVariable).
bool evaluate(const Formula& f, const Assignment& values);
bool evaluate(const Sentence& s, const Assignment& values);
Rational evaluate(const Poly& p, const Assignment& values);

enum class Dialect { Smt2, Infix };

/// Deterministic text. Smt2: QF_NRA script with one assert, check-sat and
/// get-model. Infix: "exists v1, v2 : <formula>" with atoms written [p op 0].
std::string serialize(const Sentence& s, Dialect dialect);

/// Inverse of serialize(..., Dialect::Infix). Throws Error(ParseError).
Sentence parse_infix(std::string_view text);

}  // namespace curvetp::etr
