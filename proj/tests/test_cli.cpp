#include "curvetp/cli.hpp"
#include "curvetp/error.hpp"
#include "curvetp/io.hpp"
#include "curvetp/svg.hpp"
#include "support.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace curvetp;
using namespace curvetp::testing;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "curvetool");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(TEST_DATA_DIR) + "/" + name; }

size_t occurrences(const std::string& text, const std::string& what) {
  size_t count = 0;
  for (size_t p = text.find(what); p != std::string::npos; p = text.find(what, p + 1)) ++count;
  return count;
}

// Writes `text` to a fresh temporary file, removed on scope exit.
struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& text, const std::string& suffix = ".json") {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("curvetp-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) + suffix);
    std::ofstream(path) << text;
  }
  ~TempFile() { std::filesystem::remove(path); }
  std::string str() const { return path.string(); }
};

}  // namespace

TEST_CASE("json formats round trip") {
  io::Json j = io::curve_to_json(figure_eight());
  CHECK(io::dump(j) == "{\"n\":1,\"twin\":[2,1],\"sign\":[-1,1]}\n");
  CHECK(io::curve_from_json(io::parse_json(io::dump(j))) == figure_eight());

  Polygon p{{pt(0, 0), Point{Rational(3, 2), Rational(-1, 3)}, pt(1, 3)}};
  Polygon back = io::polygon_from_json(io::parse_json(io::dump(io::polygon_to_json(p))));
  CHECK(back.vertices == p.vertices);
  CHECK(io::dump(io::polygon_to_json(p)) == "{\"vertices\":[[\"0\",\"0\"],[\"3/2\",\"-1/3\"],[\"1\",\"3\"]]}\n");

  WiringDiagram w = ringel_diagram();
  CHECK(io::wiring_from_json(io::wiring_to_json(w)) == w);
  LineArrangement a{{{Rational(-1, 2), Rational(1, 8)}, {Rational(0), Rational(0)}}};
  LineArrangement a2 = io::lines_from_json(io::lines_to_json(a));
  CHECK(a2.lines[0].slope == a.lines[0].slope);
  CHECK(a2.lines[0].intercept == a.lines[0].intercept);

  CHECK_THROWS_AS(io::curve_from_json(io::parse_json("{\"n\":1,\"twin\":[2,3],\"sign\":[1,-1]}")), Error);
  CHECK_THROWS_AS(io::curve_from_json(io::parse_json("{\"n\":2,\"twin\":[2,1],\"sign\":[1,-1]}")), Error);
  CHECK_THROWS_AS(io::polygon_from_json(io::parse_json("{\"vertices\":[[\"1/0\",\"0\"]]}")), Error);
  CHECK_THROWS_AS(io::parse_json("{"), Error);
}

TEST_CASE("isotopic and exit codes") {
  Outcome r = run({"isotopic", "--polygon", data("bowtie.json"), "--curve", data("figure_eight.json")});
  CHECK(r.code == cli::Ok);
  CHECK(r.out == "{\"isotopic\":true}\n");

  TempFile other("{\"n\":1,\"twin\":[2,1],\"sign\":[1,-1]}");
  r = run({"isotopic", "--polygon", data("bowtie.json"), "--curve", other.str()});
  CHECK(r.code == cli::Negative);
  CHECK(r.out == "{\"isotopic\":false}\n");

  CHECK(run({"isotopic", "--polygon", data("missing.json"), "--curve", other.str()}).code == cli::InvalidInput);
  CHECK(run({"no-such-command"}).code == cli::InvalidInput);
  CHECK(run({}).code == cli::InvalidInput);
  CHECK(run({"--help"}).code == cli::Ok);

  TempFile broken("{\"n\":1,\"twin\":[1,1],\"sign\":[1,-1]}");
  r = run({"validate-code", "--curve", broken.str()});
  CHECK(r.code == cli::Negative);
  CHECK(r.out.find("\"valid\":false") != std::string::npos);
  CHECK(run({"emit", "--curve", broken.str(), "--m", "4"}).code == cli::InvalidInput);
  CHECK(run({"validate-code", "--curve", data("figure_eight.json")}).code == cli::Ok);

  TempFile square("{\"vertices\":[[\"0\",\"0\"],[\"1\",\"0\"],[\"1\",\"1\"],[\"0\",\"1\"]]}");
  r = run({"check-generic", "--polygon", square.str()});
  CHECK(r.code == cli::Negative);
  CHECK(r.out.find("\"equal_x\":[[1,4],[2,3]]") != std::string::npos);
  CHECK(run({"extract-codes", "--polygon", square.str()}).code == cli::InvalidInput);
  CHECK(run({"check-generic", "--polygon", data("bowtie.json")}).code == cli::Ok);
}

TEST_CASE("emit is byte-stable") {
  Outcome r = run({"emit", "--curve", data("figure_eight.json"), "--m", "4", "--dialect", "smt2"});
  REQUIRE(r.code == cli::Ok);
  CHECK(r.out == io::read_file(data("figure_eight_m4.smt2")));
  CHECK(run({"emit", "--curve", data("figure_eight.json"), "--m", "4", "--dialect", "smt2"}).out == r.out);

  Outcome infix = run({"emit", "--curve", data("figure_eight.json"), "--m", "4", "--dialect", "infix"});
  CHECK(infix.out.rfind("exists x_1, y_1,", 0) == 0);
  Outcome literal = run({"emit", "--curve", data("figure_eight.json"), "--m", "4", "--literal"});
  CHECK(literal.out != r.out);
  CHECK(run({"emit", "--curve", data("figure_eight.json"), "--m", "4", "--dialect", "latex"}).code ==
        cli::InvalidInput);

  Outcome st = run({"stats", "--curve", data("figure_eight.json"), "--m", "4"});
  CHECK(st.out.rfind("{\"m\":4,\"variables\":", 0) == 0);
  CHECK(st.out.find("\"max_degree\":4") != std::string::npos);

  TempFile target("", ".smt2");
  CHECK(run({"-o", target.str(), "emit", "--curve", data("figure_eight.json"), "--m", "4"}).code == cli::Ok);
  CHECK(io::read_file(target.str()) == r.out);
  TempFile after("", ".smt2");
  CHECK(run({"emit", "--curve", data("figure_eight.json"), "--m", "4", "-o", after.str()}).code == cli::Ok);
  CHECK(io::read_file(after.str()) == r.out);
}

TEST_CASE("reduction pipelines") {
  Outcome r = run({"reduce", "--ringel"});
  REQUIRE(r.code == cli::Ok);
  CHECK(io::curve_from_json(io::parse_json(r.out)).n() == 54);
  TempFile ringel(io::dump(io::wiring_to_json(ringel_diagram())));
  CHECK(run({"reduce", "--wiring", ringel.str()}).out == r.out);

  r = run({"reduce", "--wiring", data("wiring3.json")});
  CHECK(io::curve_from_json(io::parse_json(r.out)).n() == 9);
  TempFile even("{\"n\":2,\"swaps\":[1]}");
  CHECK(run({"reduce", "--wiring", even.str()}).code == cli::InvalidInput);
  CHECK(io::curve_from_json(io::parse_json(run({"reduce", "--wiring", even.str(), "--pad"}).out)).n() == 9);

  // The staple polygon of three lines realizes the looped curve of their wiring.
  Outcome staple = run({"staple", "--lines", data("lines3.json")});
  REQUIRE(staple.code == cli::Ok);
  Polygon p = io::polygon_from_json(io::parse_json(staple.out));
  CHECK(p.size() == 12);
  TempFile poly(staple.out), curve(run({"reduce", "--lines", data("lines3.json")}).out);
  CHECK(run({"isotopic", "--polygon", poly.str(), "--curve", curve.str()}).code == cli::Ok);

  Outcome s = run({"straighten", "--curve", curve.str()});
  CHECK(s.code == cli::Ok);
  CHECK(s.out.find("\"verified\":true") != std::string::npos);
  TempFile straight(s.out);
  CHECK(run({"isotopic", "--polygon", straight.str(), "--curve", curve.str()}).code == cli::Ok);
}

TEST_CASE("svg rendering") {
  std::string bow = render_svg(bowtie());
  CHECK(bow.rfind("<?xml", 0) == 0);
  CHECK(occurrences(bow, "class=\"crossing\"") == 1);
  // Both lobes of the figure-eight are monogons.
  CHECK(occurrences(bow, "class=\"loop\"") == 2);
  CHECK(render_svg(bowtie()) == bow);

  Polygon convex{{pt(0, 0), pt(4, 1), pt(5, 4), pt(1, 5)}};
  CHECK(occurrences(render_svg(convex), "class=\"crossing\"") == 0);
  CHECK(occurrences(render_svg(convex), "class=\"loop\"") == 0);

  SignedCrossingCode looped = curve_from_arrangement({3, {1, 2, 1}});
  std::string svg = render_svg(looped);
  CHECK(occurrences(svg, "class=\"loop\"") == 6);
  CHECK(occurrences(svg, "class=\"crossing\"") == 9);

  Outcome r = run({"render-svg", "--polygon", data("bowtie.json")});
  CHECK(r.code == cli::Ok);
  CHECK(r.out == bow);
  CHECK(run({"render-svg"}).code == cli::InvalidInput);
}

TEST_CASE("min-search without a solver reports the upper bound") {
  Outcome r = run({"min-search", "--curve", data("figure_eight.json"), "--m-max", "4", "--solver", "/nonexistent/z3"});
  CHECK(r.code == cli::Environment);
  CHECK(r.out.find("\"solver\":\"unavailable\"") != std::string::npos);
  CHECK(r.out.find("\"vertex_count\":6") != std::string::npos);
  CHECK(r.err.find("SolverUnavailable") != std::string::npos);
}
