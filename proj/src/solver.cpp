#include "curvetp/solver.hpp"

#include "curvetp/error.hpp"

#include <cctype>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include <fcntl.h>
#include <sys/wait.h>
#include <unistd.h>

namespace curvetp {

namespace {

const char* const kDefaultCommand = "z3 -smt2 pp.decimal=true pp.decimal_precision=50";

std::vector<std::string> split_words(const std::string& command) {
  std::istringstream in(command);
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

bool executable(const std::filesystem::path& p) {
  std::error_code ec;
  return std::filesystem::is_regular_file(p, ec) && access(p.c_str(), X_OK) == 0;
}

std::string find_program(const std::string& name) {
  if (name.find('/') != std::string::npos) return executable(name) ? name : "";
  const char* path = std::getenv("PATH");
  std::istringstream dirs(path ? path : "/usr/local/bin:/usr/bin:/bin");
  for (std::string dir; std::getline(dirs, dir, ':');) {
    if (dir.empty()) continue;
    auto candidate = std::filesystem::path(dir) / name;
    if (executable(candidate)) return candidate.string();
  }
  return "";
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    std::string pattern = (std::filesystem::temp_directory_path() / "curvetp-XXXXXX").string();
    if (!mkdtemp(pattern.data())) throw Error(ErrorKind::SolverUnavailable, "cannot create a temporary directory");
    path = pattern;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
};

}  // namespace

std::string SolverConfig::resolved_command() const {
  std::string cmd = command;
  if (cmd.empty()) {
    const char* env = std::getenv("SOLVER_CMD");
    cmd = env && *env ? env : kDefaultCommand;
  }
  auto words = split_words(cmd);
  if (words.empty()) throw Error(ErrorKind::SolverUnavailable, "empty solver command");
  if (find_program(words.front()).empty())
    throw Error(ErrorKind::SolverUnavailable, "solver program '" + words.front() + "' not found");
  return cmd;
}

bool SolverConfig::available() const {
  try {
    resolved_command();
    return true;
  } catch (const Error&) {
    return false;
  }
}

const char* to_string(SolverStatus status) {
  switch (status) {
    case SolverStatus::Sat: return "sat";
    case SolverStatus::Unsat: return "unsat";
    case SolverStatus::Unknown: return "unknown";
    case SolverStatus::Timeout: return "timeout";
    case SolverStatus::Failed: return "failed";
  }
  return "?";
}

SolverRun run_solver(const std::string& smt2, const SolverConfig& config) {
  auto words = split_words(config.resolved_command());
  words.front() = find_program(words.front());
  TempDir dir;
  auto input = dir.path / "query.smt2";
  auto output = dir.path / "answer.txt";
  {
    std::ofstream f(input);
    f << smt2;
    if (!f) throw Error(ErrorKind::SolverUnavailable, "cannot write " + input.string());
  }
  words.push_back(input.string());

  std::vector<char*> argv;
  for (auto& w : words) argv.push_back(w.data());
  argv.push_back(nullptr);

  auto start = std::chrono::steady_clock::now();
  pid_t pid = fork();
  if (pid < 0) throw Error(ErrorKind::SolverUnavailable, "fork failed");
  if (pid == 0) {
    setpgid(0, 0);
    int fd = open(output.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0600);
    if (fd < 0) _exit(127);
    dup2(fd, STDOUT_FILENO);
    dup2(fd, STDERR_FILENO);
    execv(argv[0], argv.data());
    _exit(127);
  }

  SolverRun run;
  auto deadline = start + std::chrono::seconds(config.timeout_seconds);
  int status = 0;
  bool timed_out = false;
  for (;;) {
    pid_t done = waitpid(pid, &status, WNOHANG);
    if (done == pid) break;
    if (std::chrono::steady_clock::now() >= deadline) {
      kill(-pid, SIGKILL);
      kill(pid, SIGKILL);
      waitpid(pid, &status, 0);
      timed_out = true;
      break;
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }
  run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::ifstream in(output);
  std::stringstream buf;
  buf << in.rdbuf();
  run.output = buf.str();
  if (timed_out) {
    run.status = SolverStatus::Timeout;
    return run;
  }
  if (WIFEXITED(status) && WEXITSTATUS(status) == 127 && run.output.empty())
    throw Error(ErrorKind::SolverUnavailable, "could not execute " + words.front());

  std::istringstream lines(run.output);
  std::string first;
  while (std::getline(lines, first) && first.find_first_not_of(" \t\r") == std::string::npos) {
  }
  first.erase(first.find_last_not_of(" \t\r") + 1);
  if (first == "sat") run.status = SolverStatus::Sat;
  else if (first == "unsat") run.status = SolverStatus::Unsat;
  else if (first == "unknown" || first == "timeout") run.status = SolverStatus::Unknown;
  else run.status = SolverStatus::Failed;
  return run;
}

namespace {

struct Sexp {
  std::string atom;
  std::vector<Sexp> list;
  bool is_list = false;
};

class SexpReader {
 public:
  explicit SexpReader(const std::string& text) : text_(text) {}

  Sexp read() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of model");
    Sexp s;
    if (text_[pos_] == '(') {
      ++pos_;
      s.is_list = true;
      for (;;) {
        skip();
        if (pos_ >= text_.size()) fail("unbalanced parentheses");
        if (text_[pos_] == ')') {
          ++pos_;
          return s;
        }
        s.list.push_back(read());
      }
    }
    if (text_[pos_] == ')') fail("unexpected ')'");
    size_t start = pos_;
    if (text_[pos_] == '|') {
      size_t close = text_.find('|', pos_ + 1);
      if (close == std::string::npos) fail("unterminated quoted symbol");
      pos_ = close + 1;
      s.atom = text_.substr(start + 1, close - start - 1);
      return s;
    }
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
           text_[pos_] != ')')
      ++pos_;
    s.atom = text_.substr(start, pos_ - start);
    return s;
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }
  [[noreturn]] void fail(const std::string& why) { throw Error(ErrorKind::ModelParseFailure, why); }

  const std::string& text_;
  size_t pos_ = 0;
};

// Rational value of a constant term; nullopt for anything else.
std::optional<ModelValue> constant_value(const Sexp& e) {
  if (!e.is_list) {
    std::string t = e.atom;
    bool approx = !t.empty() && t.back() == '?';
    if (approx) t.pop_back();
    if (t.empty() || !(std::isdigit(static_cast<unsigned char>(t[0])) || t[0] == '.')) return std::nullopt;
    try {
      return ModelValue{parse_rational(t), !approx};
    } catch (const Error&) {
      throw Error(ErrorKind::ModelParseFailure, "bad number '" + e.atom + "'");
    }
  }
  if (e.list.empty() || e.list[0].is_list) return std::nullopt;
  const std::string& op = e.list[0].atom;
  if (op == "-" && e.list.size() == 2) {
    auto v = constant_value(e.list[1]);
    if (v) v->value = -v->value;
    return v;
  }
  if ((op == "/" || op == "-" || op == "+" || op == "*") && e.list.size() == 3) {
    auto a = constant_value(e.list[1]), b = constant_value(e.list[2]);
    if (!a || !b) return std::nullopt;
    bool exact = a->exact && b->exact;
    if (op == "/") {
      if (b->value == 0) throw Error(ErrorKind::ModelParseFailure, "division by zero in model");
      return ModelValue{a->value / b->value, exact};
    }
    if (op == "-") return ModelValue{a->value - b->value, exact};
    if (op == "+") return ModelValue{a->value + b->value, exact};
    return ModelValue{a->value * b->value, exact};
  }
  return std::nullopt;
}

}  // namespace

Model parse_model(const std::string& output) {
  // The model is the first top-level list after the status line.
  size_t open = output.find('(');
  if (open == std::string::npos) throw Error(ErrorKind::ModelParseFailure, "no model in solver output");
  std::string text = output.substr(open);
  SexpReader reader(text);
  Sexp top = reader.read();
  std::vector<const Sexp*> entries;
  // Older solvers wrap the entries as (model ...).
  size_t first = !top.list.empty() && !top.list[0].is_list && top.list[0].atom == "model" ? 1 : 0;
  for (size_t i = first; i < top.list.size(); ++i) entries.push_back(&top.list[i]);

  Model model;
  for (const Sexp* e : entries) {
    if (!e->is_list || e->list.size() != 5 || e->list[0].is_list || e->list[0].atom != "define-fun") continue;
    const Sexp& args = e->list[2];
    const Sexp& sort = e->list[3];
    if (!args.is_list || !args.list.empty() || sort.is_list || sort.atom != "Real") continue;
    if (auto v = constant_value(e->list[4])) model[e->list[1].atom] = *v;
  }
  return model;
}

Rational round_continued_fraction(const Rational& x, const mpz_class& max_denominator) {
  if (x.get_den() <= max_denominator) return x;
  // Convergents h/k; the last one within the bound, compared against the best
  // semiconvergent.
  mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  mpz_class num = x.get_num(), den = x.get_den();
  for (;;) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_class k2 = a * k1 + k0;
    if (k2 > max_denominator) {
      mpz_class t = (max_denominator - k0) / k1;
      Rational semi(t * h1 + h0, t * k1 + k0), conv(h1, k1);
      semi.canonicalize();
      conv.canonicalize();
      return abs(semi - x) < abs(conv - x) ? semi : conv;
    }
    mpz_class h2 = a * h1 + h0;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    mpz_class r = num - a * den;
    num = den;
    den = r;
    if (den == 0) {
      Rational exact(h1, k1);
      exact.canonicalize();
      return exact;
    }
  }
}

}  // namespace curvetp
