#include "curvetp/error.hpp"
#include "curvetp/straighten.hpp"
#include "support.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <sys/stat.h>
#include <unistd.h>

using namespace curvetp;
using namespace curvetp::testing;

namespace {

// A throwaway executable that prints `answer` whatever it is given.
struct FakeSolver {
  std::filesystem::path path;

  explicit FakeSolver(const std::string& answer, const std::string& extra = "") {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("curvetp-fake-" + std::to_string(getpid()) + "-" + std::to_string(counter++) + ".sh");
    std::ofstream f(path);
    f << "#!/bin/sh\n" << extra << "cat <<'END'\n" << answer << "END\n";
    f.close();
    chmod(path.c_str(), 0700);
  }
  ~FakeSolver() { std::filesystem::remove(path); }

  SolverConfig config(int timeout = 10) const { return {path.string(), timeout}; }
};

std::string decimal(const Rational& v, bool approximate) {
  // Ten digits after the point, truncated toward zero.
  mpz_class scaled = v.get_num() * mpz_class(10000000000L) / v.get_den();
  std::string digits = mpz_class(abs(scaled)).get_str();
  while (digits.size() < 11) digits.insert(digits.begin(), '0');
  std::string text = digits.substr(0, digits.size() - 10) + "." + digits.substr(digits.size() - 10);
  if (approximate) text += "?";
  return scaled < 0 ? "(- " + text + ")" : text;
}

// get-model text for the bowtie, offset so that no coordinate is a short
// decimal.
std::string bowtie_model(bool approximate) {
  Polygon p = extract_leftmost(bowtie()).polygon;
  std::string out = "sat\n(\n";
  for (int i = 0; i < p.size(); ++i) {
    Rational x = p.vertices[i].x / 3 + Rational(1, 7), y = p.vertices[i].y / 3 - Rational(2, 9);
    out += "  (define-fun x_" + std::to_string(i + 1) + " () Real\n    " + decimal(x, approximate) + ")\n";
    out += "  (define-fun y_" + std::to_string(i + 1) + " () Real\n    " + decimal(y, approximate) + ")\n";
  }
  out += "  (define-fun X_1_3 () Real\n    1.0)\n)\n";
  return out;
}

}  // namespace

TEST_CASE("continued fraction rounding") {
  CHECK(round_continued_fraction(parse_rational("3.14159265358979"), 1000) == Rational(355, 113));
  CHECK(round_continued_fraction(parse_rational("0.3333333333"), 100) == Rational(1, 3));
  CHECK(round_continued_fraction(parse_rational("-0.3333333333"), 100) == Rational(-1, 3));
  CHECK(round_continued_fraction(Rational(5, 7), 100) == Rational(5, 7));
  CHECK(round_continued_fraction(Rational(22, 7), 6) == Rational(19, 6));
  // The result is never worse than any fraction with a smaller denominator.
  Rational x = parse_rational("2.718281828459045");
  Rational r = round_continued_fraction(x, 50);
  CHECK(r.get_den() <= 50);
  for (int d = 1; d <= 50; ++d) {
    mpz_class nearest = (x.get_num() * d + x.get_den() / 2) / x.get_den();
    CHECK(abs(r - x) <= abs(Rational(nearest, d) - x));
  }
}

TEST_CASE("model parsing") {
  Model m = parse_model(
      "sat\n(\n  (define-fun a () Real\n    (- 1.25))\n  (define-fun b () Real\n    (/ 1.0 3.0))\n"
      "  (define-fun c () Real\n    (- 0.3333333333?))\n  (define-fun r () Real\n    (root-obj (+ (^ x 2) (- 2)) 1))\n"
      "  (define-fun f ((z Real)) Real\n    z)\n  (define-fun k () Real\n    7)\n)\n");
  CHECK(m.size() == 4);
  CHECK(m.at("a").value == Rational(-5, 4));
  CHECK(m.at("a").exact);
  CHECK(m.at("b").value == Rational(1, 3));
  CHECK(m.at("c").value == parse_rational("-0.3333333333"));
  CHECK_FALSE(m.at("c").exact);
  CHECK(m.at("k").value == 7);
  CHECK(m.count("r") == 0);
  CHECK(parse_model("sat\n(model (define-fun a () Real 2.5))").at("a").value == Rational(5, 2));

  CHECK_THROWS_AS(parse_model("sat\n( (define-fun a () Real 1.0)"), Error);
  CHECK_THROWS_AS(parse_model("unsat\n"), Error);
}

TEST_CASE("witnesses are verified exactly") {
  for (bool approximate : {false, true}) {
    auto w = witness_from_model(parse_model(bowtie_model(approximate)), 4, figure_eight());
    REQUIRE(w);
    CHECK(is_isotopic(*w, figure_eight()));
  }
  Model m = parse_model(bowtie_model(true));
  // Collapsing a vertex onto its neighbor's abscissa breaks genericity.
  m["x_2"] = m["x_1"];
  CHECK_FALSE(witness_from_model(m, 4, figure_eight()));
  CHECK_THROWS_AS(witness_from_model(m, 5, figure_eight()), Error);
}

TEST_CASE("solver runs and statuses") {
  FakeSolver unsat("unsat\n");
  SolverRun run = run_solver("(check-sat)\n", unsat.config());
  CHECK(run.status == SolverStatus::Unsat);

  FakeSolver garbage("segfault\n");
  CHECK(run_solver("", garbage.config()).status == SolverStatus::Failed);

  FakeSolver slow("sat\n", "sleep 20\n");
  run = run_solver("", slow.config(1));
  CHECK(run.status == SolverStatus::Timeout);
  CHECK(run.seconds < 10);

  SolverConfig missing{"/nonexistent/solver --flag", 5};
  CHECK_FALSE(missing.available());
  try {
    run_solver("", missing);
    FAIL("expected SolverUnavailable");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::SolverUnavailable);
  }
}

TEST_CASE("search with scripted answers") {
  SearchOptions opt;
  opt.m_min = 3;
  opt.m_max = 5;

  FakeSolver no("unsat\n");
  MinSearchReport r = min_polygon_search(figure_eight(), opt, no.config());
  REQUIRE(r.steps.size() == 3);
  for (const auto& s : r.steps) CHECK(s.outcome == SearchOutcome::Unsat);
  CHECK_FALSE(r.best_m);

  // The bowtie model only fits m = 4. At m = 3 its first three vertices make
  // a triangle, which fails verification; at m = 5 a vertex is missing.
  FakeSolver yes(bowtie_model(true));
  opt.stop_at_first_sat = false;
  opt.parallel = 3;
  r = min_polygon_search(figure_eight(), opt, yes.config());
  REQUIRE(r.steps.size() == 3);
  CHECK(r.steps[0].m == 3);
  CHECK(r.steps[0].outcome == SearchOutcome::Unknown);
  CHECK(r.steps[1].outcome == SearchOutcome::Sat);
  REQUIRE(r.steps[1].witness);
  CHECK(is_isotopic(*r.steps[1].witness, figure_eight()));
  CHECK(r.steps[2].outcome == SearchOutcome::Unknown);
  CHECK(r.steps[2].detail.find("ModelParseFailure") != std::string::npos);
  CHECK(r.best_m == 4);

  opt.stop_at_first_sat = true;
  opt.parallel = 1;
  r = min_polygon_search(figure_eight(), opt, yes.config());
  CHECK(r.steps.size() == 2);
  CHECK(r.best_m == 4);

  CHECK_THROWS_AS(min_polygon_search(figure_eight(), opt, SolverConfig{"/nonexistent/solver", 5}), Error);
}

TEST_CASE("z3 on the figure-eight" * doctest::timeout(300)) {
  SolverConfig z3;
  if (!z3.available()) {
    MESSAGE("no solver on PATH; skipped");
    return;
  }
  SearchOptions opt;
  opt.m_max = 4;
  MinSearchReport r = min_polygon_search(figure_eight(), opt, z3);
  REQUIRE(r.steps.size() == 2);
  CHECK(r.steps[0].outcome == SearchOutcome::Unsat);
  CHECK(r.steps[1].outcome == SearchOutcome::Sat);
  REQUIRE(r.steps[1].witness);
  CHECK(is_isotopic(*r.steps[1].witness, figure_eight()));

  opt.m_max = 3;
  r = min_polygon_search(SignedCrossingCode{}, opt, z3);
  CHECK(r.best_m == 3);
}
