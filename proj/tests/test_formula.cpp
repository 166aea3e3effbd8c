#include "curvetp/error.hpp"
#include "curvetp/formula.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace curvetp;
using namespace curvetp::etr;
using namespace curvetp::testing;

namespace {

struct RandomFormula {
  std::mt19937_64& rng;
  std::vector<Poly> vars;

  Poly poly(int depth) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 4 : 1);
    switch (pick(rng)) {
      case 0: return constant(random_rational(rng, 5, 3));
      case 1: return vars[rng() % vars.size()];
      case 2: return poly(depth - 1) + poly(depth - 1);
      case 3: return poly(depth - 1) - poly(depth - 1);
      default: return poly(depth - 1) * poly(depth - 1);
    }
  }

  Formula formula(int depth) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 3 : 0);
    switch (pick(rng)) {
      case 0: return atom(poly(2), static_cast<Cmp>(rng() % 6));
      case 1: return negate(formula(depth - 1));
      case 2: return conjunction({formula(depth - 1), formula(depth - 1), formula(depth - 1)});
      default: return disjunction({formula(depth - 1), formula(depth - 1)});
    }
  }
};

Assignment random_assignment(std::mt19937_64& rng, const std::vector<std::string>& names) {
  Assignment a;
  for (const auto& n : names) a[n] = random_rational(rng, 3, 2);
  return a;
}

}  // namespace

TEST_CASE("builders collapse trivial connectives") {
  Formula a = atom(variable("x"), Cmp::Gt);
  CHECK(conjunction({}) == truth());
  CHECK(disjunction({}) == falsity());
  CHECK(conjunction({a}) == a);
  CHECK(disjunction({a}) == a);
  CHECK(degree(variable("x") * variable("y") * variable("x") + constant(3)) == 3);
}

TEST_CASE("exact evaluation") {
  Poly x = variable("x"), y = variable("y");
  Assignment v{{"x", q(1, 3)}, {"y", q(-2)}};
  CHECK(evaluate(x * y - constant(q(1, 3)), v) == q(-1));
  CHECK(evaluate(atom(x * constant(3) - constant(1), Cmp::Eq), v));
  CHECK_FALSE(evaluate(atom(y, Cmp::Ge), v));
  CHECK(evaluate(atom(y, Cmp::Ne), v));
  try {
    evaluate(atom(variable("z"), Cmp::Lt), v);
    FAIL("expected MissingVariable");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::MissingVariable);
  }
}

TEST_CASE("stats count the expanded tree") {
  Poly x = variable("x");
  Formula shared = atom(x * x, Cmp::Gt);  // 1 + 3 nodes
  Sentence s{{"x"}, conjunction({shared, shared, negate(shared)})};
  FormulaStats st = stats(s);
  CHECK(st.variables == 1);
  CHECK(st.atoms == 3);
  CHECK(st.nodes == 1 + 4 + 4 + 1 + 4);
  CHECK(st.max_degree == 2);
  CHECK(atom_count(s.body) == 3);
}

TEST_CASE("De Morgan and double negation on random assignments") {
  std::mt19937_64 rng(31);
  std::vector<std::string> names{"a", "b", "c"};
  RandomFormula gen{rng, {variable("a"), variable("b"), variable("c")}};
  for (int trial = 0; trial < 300; ++trial) {
    Formula f = gen.formula(3), g = gen.formula(3);
    Assignment v = random_assignment(rng, names);
    CHECK(evaluate(negate(conjunction({f, g})), v) == evaluate(disjunction({negate(f), negate(g)}), v));
    CHECK(evaluate(negate(disjunction({f, g})), v) == evaluate(conjunction({negate(f), negate(g)}), v));
    CHECK(evaluate(negate(negate(f)), v) == evaluate(f, v));
  }
}

TEST_CASE("infix round trip preserves stats and truth") {
  std::mt19937_64 rng(77);
  std::vector<std::string> names{"x_1", "y_1", "edge_2"};
  RandomFormula gen{rng, {variable("x_1"), variable("y_1"), variable("edge_2")}};
  for (int trial = 0; trial < 200; ++trial) {
    Sentence s{names, gen.formula(3)};
    std::string text = serialize(s, Dialect::Infix);
    Sentence back = parse_infix(text);
    FormulaStats a = stats(s), b = stats(back);
    CHECK(a.atoms == b.atoms);
    CHECK(a.nodes == b.nodes);
    CHECK(a.max_degree == b.max_degree);
    CHECK(back.variables == s.variables);
    CHECK(serialize(back, Dialect::Infix) == text);
    Assignment v = random_assignment(rng, names);
    CHECK(evaluate(back, v) == evaluate(s, v));
  }
  CHECK_THROWS_AS(parse_infix("exists x : ([x > 0] & [x < 0] | true)"), Error);
  CHECK_THROWS_AS(parse_infix("exists x : [x ~ 0]"), Error);
  CHECK_THROWS_AS(parse_infix("forall x : true"), Error);
  CHECK(evaluate(parse_infix("exists : true"), {}));
}

TEST_CASE("smt2 output") {
  Poly x = variable("x"), y = variable("y");
  Poly shared = x * y;
  Formula a = atom(shared - constant(q(-3, 4)), Cmp::Ne);
  Sentence s{{"x", "y"}, conjunction({a, atom(shared, Cmp::Lt), a})};
  std::string text = serialize(s, Dialect::Smt2);
  CHECK(text == serialize(s, Dialect::Smt2));
  CHECK(text.find("(set-logic QF_NRA)\n") == 0);
  CHECK(text.find("(declare-fun x () Real)\n(declare-fun y () Real)\n") != std::string::npos);
  CHECK(text.find("(define-fun p0 () Real (* x y))") != std::string::npos);
  CHECK(text.find("(define-fun b0 () Bool (not (= (- p0 (- (/ 3 4))) 0)))") != std::string::npos);
  CHECK(text.find("(assert (and b0 (< p0 0) b0))") != std::string::npos);
  CHECK(text.find("(check-sat)\n(get-model)\n") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '(') == std::count(text.begin(), text.end(), ')'));
}

TEST_CASE("free variables in first-visit order") {
  Formula f = conjunction({atom(variable("b") * variable("a"), Cmp::Lt), atom(variable("b"), Cmp::Eq)});
  CHECK(free_variables(f) == std::vector<std::string>{"b", "a"});
}
