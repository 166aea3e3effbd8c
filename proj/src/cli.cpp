#include "curvetp/cli.hpp"

#include "curvetp/error.hpp"
#include "curvetp/etr_compiler.hpp"
#include "curvetp/io.hpp"
#include "curvetp/straighten.hpp"
#include "curvetp/svg.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>

namespace curvetp::cli {

namespace {

using io::Json;

struct Result {
  std::string text;
  int code = Ok;
};

SignedCrossingCode load_curve(const std::string& path) {
  return io::curve_from_json(io::parse_json(io::read_file(path)));
}
Polygon load_polygon(const std::string& path) {
  return io::polygon_from_json(io::parse_json(io::read_file(path)));
}

// Codes are checked before any pipeline sees them.
SignedCrossingCode load_valid_curve(const std::string& path) {
  SignedCrossingCode code = load_curve(path);
  ValidationReport r = validate(code);
  if (!r.valid()) {
    bool only_realizability = structurally_valid(code);
    throw Error(only_realizability ? ErrorKind::NotRealizable : ErrorKind::InvalidCode, r.failures.front());
  }
  return code;
}

Json one_based(const std::vector<int>& v) {
  Json a = Json::array();
  for (int x : v) a.push_back(x + 1);
  return a;
}

template <class Tuples>
Json one_based_tuples(const Tuples& ts) {
  Json a = Json::array();
  for (const auto& t : ts) {
    Json row = Json::array();
    if constexpr (requires { t.first; }) {
      row.push_back(t.first + 1);
      row.push_back(t.second + 1);
    } else {
      for (int x : t) row.push_back(x + 1);
    }
    a.push_back(std::move(row));
  }
  return a;
}

Json extraction_to_json(const ExtractedCode& ex) {
  Json j;
  j["basepoint"] = ex.basepoint + 1;
  j["reversed"] = ex.reversed;
  j["curve"] = io::curve_to_json(ex.code);
  j["edge"] = one_based(ex.edge.entries);
  return j;
}

void write_atomically(const std::string& path, const std::string& text) {
  std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    f << text;
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SolverUnavailable:
    case ErrorKind::PerturbationFailed:
    case ErrorKind::ModelParseFailure:
      return Environment;
    default:
      return InvalidInput;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Plane curves, polygons and their existential-theory encodings", "curvetool"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string output;
  app.add_option("-o,--output", output, "Write the result to this file instead of stdout");

  std::string curve_path, polygon_path, wiring_path, lines_path, dialect = "smt2", solver_cmd, delta_text;
  int m = 0, m_min = 3, m_max = 0, timeout = 60, parallel = 1;
  bool no_prune = false, literal = false, leftmost = false, ringel = false, pad = false, all_m = false;
  double width = 800;
  std::function<Result()> action;

  auto curve_opt = [&](CLI::App* sub, bool required = true) {
    auto* o = sub->add_option("--curve", curve_path, "Curve file")->check(CLI::ExistingFile);
    if (required) o->required();
    return o;
  };
  auto polygon_opt = [&](CLI::App* sub, bool required = true) {
    auto* o = sub->add_option("--polygon", polygon_path, "Polygon file")->check(CLI::ExistingFile);
    if (required) o->required();
    return o;
  };
  auto compile_flags = [&](CLI::App* sub) {
    sub->add_flag("--no-prune", no_prune, "Keep clauses that genericity already rules out");
    sub->add_flag("--literal", literal, "Unpruned, OR-joined order clauses, wrap pair included");
  };
  auto compile_options = [&] {
    etr::CompileOptions o = literal ? etr::CompileOptions::literal() : etr::CompileOptions{};
    if (no_prune) o.prune = false;
    return o;
  };

  auto* sub = app.add_subcommand("validate-code", "Check the invariants of a curve code");
  curve_opt(sub);
  sub->callback([&] {
    action = [&] {
      SignedCrossingCode code = load_curve(curve_path);
      ValidationReport r = validate(code);
      Json j;
      j["valid"] = r.valid();
      j["checks"] = {{"lengths_match", r.lengths_match},     {"in_range", r.in_range},
                     {"involution", r.involution},           {"fixed_point_free", r.fixed_point_free},
                     {"parity", r.parity},                   {"sign_values", r.sign_values},
                     {"sign_antisymmetric", r.sign_antisymmetric}, {"realizable", r.realizable}};
      j["failures"] = r.failures;
      return Result{io::dump(j), r.valid() ? Ok : Negative};
    };
  });

  sub = app.add_subcommand("equiv-codes", "All codes of the same plane curve");
  curve_opt(sub);
  sub->callback([&] {
    action = [&] {
      Json codes = Json::array();
      for (const auto& c : equivalent_codes(load_valid_curve(curve_path))) codes.push_back(io::curve_to_json(c));
      Json j;
      j["codes"] = std::move(codes);
      return Result{io::dump(j)};
    };
  });

  sub = app.add_subcommand("check-generic", "Genericity report for a polygon");
  polygon_opt(sub);
  sub->callback([&] {
    action = [&] {
      GenericityReport r = check_generic(load_polygon(polygon_path));
      Json j;
      j["generic"] = r.generic();
      j["enough_vertices"] = r.enough_vertices;
      j["equal_x"] = one_based_tuples(r.equal_x);
      j["collinear_vertices"] = one_based_tuples(r.collinear_vertices);
      j["parallel_edges"] = one_based_tuples(r.parallel_edges);
      j["concurrent_edges"] = one_based_tuples(r.concurrent_edges);
      return Result{io::dump(j), r.generic() ? Ok : Negative};
    };
  });

  sub = app.add_subcommand("extract-codes", "Codes of a generic polygon, one per hull basepoint");
  polygon_opt(sub);
  sub->add_flag("--leftmost", leftmost, "Only the leftmost basepoint");
  sub->callback([&] {
    action = [&] {
      Polygon p = load_polygon(polygon_path);
      Json codes = Json::array();
      if (leftmost) {
        codes.push_back(extraction_to_json(extract_leftmost(p)));
      } else {
        for (const auto& ex : extract_codes(p)) codes.push_back(extraction_to_json(ex));
      }
      Json j;
      j["codes"] = std::move(codes);
      return Result{io::dump(j)};
    };
  });

  sub = app.add_subcommand("isotopic", "Is the polygon isotopic to the curve?");
  polygon_opt(sub);
  curve_opt(sub);
  sub->callback([&] {
    action = [&] {
      bool yes = is_isotopic(load_polygon(polygon_path), load_valid_curve(curve_path));
      Json j;
      j["isotopic"] = yes;
      return Result{io::dump(j), yes ? Ok : Negative};
    };
  });

  sub = app.add_subcommand("emit", "Existential sentence: some generic m-gon realizes the curve");
  curve_opt(sub);
  sub->add_option("--m", m, "Vertex count")->required()->check(CLI::Range(3, 1 << 20));
  sub->add_option("--dialect", dialect, "Output syntax")->check(CLI::IsMember({"smt2", "infix"}));
  compile_flags(sub);
  sub->callback([&] {
    action = [&] {
      etr::Sentence s = etr::isotopic_to_polygon(load_valid_curve(curve_path), m, compile_options());
      return Result{etr::serialize(s, dialect == "smt2" ? etr::Dialect::Smt2 : etr::Dialect::Infix)};
    };
  });

  sub = app.add_subcommand("stats", "Size of the emitted sentence");
  curve_opt(sub);
  sub->add_option("--m", m, "Vertex count")->required()->check(CLI::Range(3, 1 << 20));
  compile_flags(sub);
  sub->callback([&] {
    action = [&] {
      etr::FormulaStats st = etr::stats(etr::isotopic_to_polygon(load_valid_curve(curve_path), m, compile_options()));
      Json j;
      j["m"] = m;
      j["variables"] = st.variables;
      j["atoms"] = st.atoms;
      j["nodes"] = st.nodes;
      j["max_degree"] = st.max_degree;
      return Result{io::dump(j)};
    };
  });

  sub = app.add_subcommand("reduce", "Looped curve of a wiring diagram");
  auto* w_opt = sub->add_option("--wiring", wiring_path, "Wiring diagram file")->check(CLI::ExistingFile);
  auto* l_opt = sub->add_option("--lines", lines_path, "Line arrangement file")->check(CLI::ExistingFile);
  auto* r_opt = sub->add_flag("--ringel", ringel, "Use the built-in Ringel diagram");
  w_opt->excludes(l_opt)->excludes(r_opt);
  l_opt->excludes(r_opt);
  sub->add_flag("--pad", pad, "Add a wire when n is even");
  sub->callback([&] {
    action = [&] {
      WiringDiagram w;
      if (ringel) {
        w = ringel_diagram();
      } else if (!wiring_path.empty()) {
        w = io::wiring_from_json(io::parse_json(io::read_file(wiring_path)));
      } else if (!lines_path.empty()) {
        w = wiring_of_lines(io::lines_from_json(io::parse_json(io::read_file(lines_path))));
      } else {
        throw Error(ErrorKind::ParseError, "one of --wiring, --lines, --ringel is required");
      }
      if (pad) w = pad_to_odd(w);
      return Result{io::dump(io::curve_to_json(curve_from_arrangement(w)))};
    };
  });

  sub = app.add_subcommand("staple", "Stapled polygon of a line arrangement");
  sub->add_option("--lines", lines_path, "Line arrangement file")->required()->check(CLI::ExistingFile);
  sub->add_option("--delta", delta_text, "Initial staple offset (default 1/8)");
  sub->callback([&] {
    action = [&] {
      LineArrangement a = io::lines_from_json(io::parse_json(io::read_file(lines_path)));
      StapleResult r = delta_text.empty() ? find_staple_polygon(a) : find_staple_polygon(a, parse_rational(delta_text));
      Json j = io::polygon_to_json(r.polygon);
      j["delta"] = format_rational(r.delta);
      return Result{io::dump(j)};
    };
  });

  sub = app.add_subcommand("straighten", "Polygon with at most 6n vertices realizing the curve");
  curve_opt(sub);
  sub->callback([&] {
    action = [&] {
      StraightenResult r = straighten_upperbound(load_valid_curve(curve_path));
      Json j = io::polygon_to_json(r.polygon);
      j["vertex_count"] = r.vertex_count;
      j["verified"] = r.verified;
      return Result{io::dump(j), r.verified ? Ok : Environment};
    };
  });

  sub = app.add_subcommand("min-search", "Solver search for the fewest vertices");
  curve_opt(sub);
  sub->add_option("--m-max", m_max, "Largest vertex count to try")->required()->check(CLI::Range(3, 1 << 20));
  sub->add_option("--m-min", m_min, "Smallest vertex count to try")->check(CLI::Range(3, 1 << 20));
  sub->add_option("--timeout", timeout, "Seconds per solver call")->check(CLI::PositiveNumber);
  sub->add_option("--solver", solver_cmd, "Solver command; the input file is appended (default $SOLVER_CMD, z3)");
  sub->add_option("--parallel", parallel, "Concurrent solver processes")->check(CLI::PositiveNumber);
  sub->add_flag("--all", all_m, "Keep going after the first verified witness");
  compile_flags(sub);
  sub->callback([&] {
    action = [&] {
      SignedCrossingCode code = load_valid_curve(curve_path);
      SearchOptions opt;
      opt.m_min = m_min;
      opt.m_max = m_max;
      opt.parallel = parallel;
      opt.stop_at_first_sat = !all_m;
      opt.compile = compile_options();
      SolverConfig solver{solver_cmd, timeout};
      Json j;
      try {
        MinSearchReport r = min_polygon_search(code, opt, solver);
        Json steps = Json::array();
        for (const auto& s : r.steps) {
          Json step;
          step["m"] = s.m;
          step["outcome"] = to_string(s.outcome);
          step["detail"] = s.detail;
          if (s.witness) step["witness"] = io::polygon_to_json(*s.witness);
          steps.push_back(std::move(step));
        }
        j["steps"] = std::move(steps);
        j["best_m"] = r.best_m ? Json(*r.best_m) : Json(nullptr);
        return Result{io::dump(j), r.best_m ? Ok : Negative};
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::SolverUnavailable) throw;
        // Without a solver only the constructive bound is available.
        err << e.what() << "\n";
        StraightenResult up = straighten_upperbound(code);
        j["solver"] = "unavailable";
        j["upper_bound"] = io::polygon_to_json(up.polygon);
        j["upper_bound"]["vertex_count"] = up.vertex_count;
        return Result{io::dump(j), Environment};
      }
    };
  });

  sub = app.add_subcommand("render-svg", "SVG drawing of a polygon or of a curve");
  auto* pg = polygon_opt(sub, false);
  auto* cv = curve_opt(sub, false);
  pg->excludes(cv);
  sub->add_option("--width", width, "Drawing width in pixels")->check(CLI::Range(16.0, 1e5));
  sub->callback([&] {
    action = [&] {
      SvgOptions o;
      o.width = width;
      if (!polygon_path.empty()) return Result{render_svg(load_polygon(polygon_path), o)};
      if (!curve_path.empty()) return Result{render_svg(load_valid_curve(curve_path), o)};
      throw Error(ErrorKind::ParseError, "one of --polygon, --curve is required");
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? Ok : InvalidInput;
  }

  try {
    Result r = action();
    if (output.empty()) {
      out << r.text;
    } else {
      write_atomically(output, r.text);
    }
    return r.code;
  } catch (const Error& e) {
    err << "curvetool: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "curvetool: " << e.what() << "\n";
    return Environment;
  }
}

}  // namespace curvetp::cli
