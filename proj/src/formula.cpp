#include "curvetp/formula.hpp"

#include "curvetp/error.hpp"

#include <cctype>
#include <functional>
#include <sstream>
#include <unordered_set>

namespace curvetp::etr {

Poly constant(const Rational& value) {
  auto node = std::make_shared<PolyNode>();
  node->kind = PolyNode::Kind::Const;
  node->value = value;
  return node;
}

Poly constant(long value) { return constant(Rational(value)); }

Poly variable(std::string name) {
  auto node = std::make_shared<PolyNode>();
  node->kind = PolyNode::Kind::Var;
  node->name = std::move(name);
  return node;
}

namespace {

Poly binary(PolyNode::Kind kind, const Poly& a, const Poly& b) {
  auto node = std::make_shared<PolyNode>();
  node->kind = kind;
  node->lhs = a;
  node->rhs = b;
  return node;
}

Formula make(FormulaNode::Kind kind) {
  auto node = std::make_shared<FormulaNode>();
  node->kind = kind;
  return node;
}

}  // namespace

Poly operator+(const Poly& a, const Poly& b) { return binary(PolyNode::Kind::Add, a, b); }
Poly operator-(const Poly& a, const Poly& b) { return binary(PolyNode::Kind::Sub, a, b); }
Poly operator*(const Poly& a, const Poly& b) { return binary(PolyNode::Kind::Mul, a, b); }

int degree(const Poly& p) {
  switch (p->kind) {
    case PolyNode::Kind::Const: return 0;
    case PolyNode::Kind::Var: return 1;
    case PolyNode::Kind::Add:
    case PolyNode::Kind::Sub: return std::max(degree(p->lhs), degree(p->rhs));
    case PolyNode::Kind::Mul: return degree(p->lhs) + degree(p->rhs);
  }
  return 0;
}

Formula truth() {
  static const Formula node = make(FormulaNode::Kind::True);
  return node;
}

Formula falsity() {
  static const Formula node = make(FormulaNode::Kind::False);
  return node;
}

Formula atom(Poly p, Cmp cmp) {
  auto node = std::make_shared<FormulaNode>();
  node->kind = FormulaNode::Kind::Atom;
  node->poly = std::move(p);
  node->cmp = cmp;
  return node;
}

Formula negate(Formula f) {
  auto node = std::make_shared<FormulaNode>();
  node->kind = FormulaNode::Kind::Not;
  node->children.push_back(std::move(f));
  return node;
}

Formula conjunction(std::vector<Formula> children) {
  if (children.empty()) return truth();
  if (children.size() == 1) return children.front();
  auto node = std::make_shared<FormulaNode>();
  node->kind = FormulaNode::Kind::And;
  node->children = std::move(children);
  return node;
}

Formula disjunction(std::vector<Formula> children) {
  if (children.empty()) return falsity();
  if (children.size() == 1) return children.front();
  auto node = std::make_shared<FormulaNode>();
  node->kind = FormulaNode::Kind::Or;
  node->children = std::move(children);
  return node;
}

// ---------------------------------------------------------------------------
// Statistics

namespace {

struct TreeCounter {
  std::unordered_map<const PolyNode*, std::uint64_t> poly_nodes;
  std::unordered_map<const PolyNode*, int> poly_degree;
  std::unordered_map<const FormulaNode*, std::uint64_t> nodes;
  std::unordered_map<const FormulaNode*, std::uint64_t> atoms;
  std::unordered_map<const FormulaNode*, int> degree;

  std::uint64_t count(const Poly& p) {
    if (auto it = poly_nodes.find(p.get()); it != poly_nodes.end()) return it->second;
    std::uint64_t c = 1;
    if (p->lhs) c += count(p->lhs) + count(p->rhs);
    poly_nodes.emplace(p.get(), c);
    return c;
  }

  int deg(const Poly& p) {
    if (auto it = poly_degree.find(p.get()); it != poly_degree.end()) return it->second;
    int d = 0;
    switch (p->kind) {
      case PolyNode::Kind::Const: d = 0; break;
      case PolyNode::Kind::Var: d = 1; break;
      case PolyNode::Kind::Add:
      case PolyNode::Kind::Sub: d = std::max(deg(p->lhs), deg(p->rhs)); break;
      case PolyNode::Kind::Mul: d = deg(p->lhs) + deg(p->rhs); break;
    }
    poly_degree.emplace(p.get(), d);
    return d;
  }

  void visit(const Formula& f) {
    if (nodes.count(f.get())) return;
    std::uint64_t n = 1, a = 0;
    int d = 0;
    if (f->kind == FormulaNode::Kind::Atom) {
      n += count(f->poly);
      a = 1;
      d = deg(f->poly);
    }
    for (const auto& c : f->children) {
      visit(c);
      n += nodes[c.get()];
      a += atoms[c.get()];
      d = std::max(d, degree[c.get()]);
    }
    nodes[f.get()] = n;
    atoms[f.get()] = a;
    degree[f.get()] = d;
  }
};

void collect_variables(const Poly& p, std::unordered_set<const PolyNode*>& seen,
                       std::unordered_set<std::string>& names, std::vector<std::string>& out) {
  if (!seen.insert(p.get()).second) return;
  if (p->kind == PolyNode::Kind::Var) {
    if (names.insert(p->name).second) out.push_back(p->name);
    return;
  }
  if (p->lhs) {
    collect_variables(p->lhs, seen, names, out);
    collect_variables(p->rhs, seen, names, out);
  }
}

void collect_variables(const Formula& f, std::unordered_set<const void*>& seen_f,
                       std::unordered_set<const PolyNode*>& seen_p,
                       std::unordered_set<std::string>& names, std::vector<std::string>& out) {
  if (!seen_f.insert(f.get()).second) return;
  if (f->poly) collect_variables(f->poly, seen_p, names, out);
  for (const auto& c : f->children) collect_variables(c, seen_f, seen_p, names, out);
}

}  // namespace

FormulaStats stats(const Sentence& sentence) {
  TreeCounter counter;
  counter.visit(sentence.body);
  FormulaStats s;
  s.variables = sentence.variables.size();
  s.atoms = counter.atoms[sentence.body.get()];
  s.nodes = counter.nodes[sentence.body.get()];
  s.max_degree = counter.degree[sentence.body.get()];
  return s;
}

std::uint64_t atom_count(const Formula& f) {
  TreeCounter counter;
  counter.visit(f);
  return counter.atoms[f.get()];
}

std::vector<std::string> free_variables(const Formula& f) {
  std::unordered_set<const void*> seen_f;
  std::unordered_set<const PolyNode*> seen_p;
  std::unordered_set<std::string> names;
  std::vector<std::string> out;
  collect_variables(f, seen_f, seen_p, names, out);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

struct Evaluator {
  const Assignment& values;
  std::unordered_map<const PolyNode*, Rational> poly_cache;
  std::unordered_map<const FormulaNode*, bool> cache;

  const Rational& eval(const Poly& p) {
    if (auto it = poly_cache.find(p.get()); it != poly_cache.end()) return it->second;
    Rational r;
    switch (p->kind) {
      case PolyNode::Kind::Const: r = p->value; break;
      case PolyNode::Kind::Var: {
        auto it = values.find(p->name);
        if (it == values.end()) throw Error(ErrorKind::MissingVariable, p->name);
        r = it->second;
        break;
      }
      case PolyNode::Kind::Add: r = eval(p->lhs) + eval(p->rhs); break;
      case PolyNode::Kind::Sub: r = eval(p->lhs) - eval(p->rhs); break;
      case PolyNode::Kind::Mul: r = eval(p->lhs) * eval(p->rhs); break;
    }
    return poly_cache.emplace(p.get(), std::move(r)).first->second;
  }

  bool eval(const Formula& f) {
    if (auto it = cache.find(f.get()); it != cache.end()) return it->second;
    bool result = false;
    switch (f->kind) {
      case FormulaNode::Kind::True: result = true; break;
      case FormulaNode::Kind::False: result = false; break;
      case FormulaNode::Kind::Atom: {
        int s = sgn(eval(f->poly));
        switch (f->cmp) {
          case Cmp::Eq: result = s == 0; break;
          case Cmp::Lt: result = s < 0; break;
          case Cmp::Le: result = s <= 0; break;
          case Cmp::Ne: result = s != 0; break;
          case Cmp::Gt: result = s > 0; break;
          case Cmp::Ge: result = s >= 0; break;
        }
        break;
      }
      case FormulaNode::Kind::Not: result = !eval(f->children.front()); break;
      case FormulaNode::Kind::And:
        result = true;
        for (const auto& c : f->children)
          if (!eval(c)) {
            result = false;
            break;
          }
        break;
      case FormulaNode::Kind::Or:
        result = false;
        for (const auto& c : f->children)
          if (eval(c)) {
            result = true;
            break;
          }
        break;
    }
    cache.emplace(f.get(), result);
    return result;
  }
};

}  // namespace

bool evaluate(const Formula& f, const Assignment& values) {
  Evaluator ev{values, {}, {}};
  return ev.eval(f);
}

bool evaluate(const Sentence& s, const Assignment& values) {
  for (const auto& v : s.variables)
    if (!values.count(v)) throw Error(ErrorKind::MissingVariable, v);
  return evaluate(s.body, values);
}

Rational evaluate(const Poly& p, const Assignment& values) {
  Evaluator ev{values, {}, {}};
  return ev.eval(p);
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

const char* infix_cmp(Cmp cmp) {
  switch (cmp) {
    case Cmp::Eq: return "=";
    case Cmp::Lt: return "<";
    case Cmp::Le: return "<=";
    case Cmp::Ne: return "!=";
    case Cmp::Gt: return ">";
    case Cmp::Ge: return ">=";
  }
  return "?";
}

void write_infix(std::ostream& out, const Poly& p) {
  switch (p->kind) {
    case PolyNode::Kind::Const: out << format_rational(p->value); return;
    case PolyNode::Kind::Var: out << p->name; return;
    default: break;
  }
  const char* op = p->kind == PolyNode::Kind::Add ? " + " : p->kind == PolyNode::Kind::Sub ? " - " : " * ";
  out << '(';
  write_infix(out, p->lhs);
  out << op;
  write_infix(out, p->rhs);
  out << ')';
}

void write_infix(std::ostream& out, const Formula& f) {
  switch (f->kind) {
    case FormulaNode::Kind::True: out << "true"; return;
    case FormulaNode::Kind::False: out << "false"; return;
    case FormulaNode::Kind::Atom:
      out << '[';
      write_infix(out, f->poly);
      out << ' ' << infix_cmp(f->cmp) << " 0]";
      return;
    case FormulaNode::Kind::Not:
      out << '!';
      write_infix(out, f->children.front());
      return;
    case FormulaNode::Kind::And:
    case FormulaNode::Kind::Or: {
      const char* sep = f->kind == FormulaNode::Kind::And ? " & " : " | ";
      out << '(';
      for (size_t i = 0; i < f->children.size(); ++i) {
        if (i) out << sep;
        write_infix(out, f->children[i]);
      }
      out << ')';
      return;
    }
  }
}

void write_smt_constant(std::ostream& out, const Rational& v) {
  mpz_class num = abs(v.get_num());
  const bool negative = sgn(v) < 0;
  if (negative) out << "(- ";
  if (v.get_den() == 1) out << num.get_str();
  else out << "(/ " << num.get_str() << ' ' << v.get_den().get_str() << ')';
  if (negative) out << ')';
}

// Shared nodes (more than one parent in the DAG) become define-fun entries,
// emitted in post-order so every definition precedes its uses.
class SmtWriter {
 public:
  explicit SmtWriter(std::ostream& out) : out_(out) {}

  void write(const Sentence& s) {
    out_ << "(set-logic QF_NRA)\n";
    for (const auto& v : s.variables) out_ << "(declare-fun " << v << " () Real)\n";
    count_parents(s.body);
    define_shared(s.body);
    out_ << "(assert ";
    expr(out_, s.body);
    out_ << ")\n(check-sat)\n(get-model)\n";
  }

 private:
  std::ostream& out_;
  std::unordered_map<const void*, int> parents_;
  std::unordered_set<const void*> defined_walk_;
  std::unordered_map<const void*, std::string> names_;
  int next_poly_ = 0;
  int next_bool_ = 0;

  static bool leaf(const Poly& p) { return !p->lhs; }
  static bool leaf(const Formula& f) {
    return f->kind == FormulaNode::Kind::True || f->kind == FormulaNode::Kind::False;
  }

  void count_parents(const Poly& p) {
    if (parents_[p.get()]++ > 0 || leaf(p)) return;
    count_parents(p->lhs);
    count_parents(p->rhs);
  }

  void count_parents(const Formula& f) {
    if (parents_[f.get()]++ > 0) return;
    if (f->poly) count_parents(f->poly);
    for (const auto& c : f->children) count_parents(c);
  }

  void define_shared(const Poly& p) {
    if (leaf(p) || !defined_walk_.insert(p.get()).second) return;
    define_shared(p->lhs);
    define_shared(p->rhs);
    if (parents_[p.get()] > 1) {
      std::string name = "p" + std::to_string(next_poly_++);
      out_ << "(define-fun " << name << " () Real ";
      inline_expr(out_, p);
      out_ << ")\n";
      names_[p.get()] = std::move(name);
    }
  }

  void define_shared(const Formula& f) {
    if (leaf(f) || !defined_walk_.insert(f.get()).second) return;
    if (f->poly) define_shared(f->poly);
    for (const auto& c : f->children) define_shared(c);
    if (parents_[f.get()] > 1) {
      std::string name = "b" + std::to_string(next_bool_++);
      out_ << "(define-fun " << name << " () Bool ";
      inline_expr(out_, f);
      out_ << ")\n";
      names_[f.get()] = std::move(name);
    }
  }

  void expr(std::ostream& out, const Poly& p) {
    if (auto it = names_.find(p.get()); it != names_.end()) {
      out << it->second;
      return;
    }
    inline_expr(out, p);
  }

  void inline_expr(std::ostream& out, const Poly& p) {
    switch (p->kind) {
      case PolyNode::Kind::Const: write_smt_constant(out, p->value); return;
      case PolyNode::Kind::Var: out << p->name; return;
      default: break;
    }
    out << (p->kind == PolyNode::Kind::Add ? "(+ " : p->kind == PolyNode::Kind::Sub ? "(- " : "(* ");
    expr(out, p->lhs);
    out << ' ';
    expr(out, p->rhs);
    out << ')';
  }

  void expr(std::ostream& out, const Formula& f) {
    if (auto it = names_.find(f.get()); it != names_.end()) {
      out << it->second;
      return;
    }
    inline_expr(out, f);
  }

  void inline_expr(std::ostream& out, const Formula& f) {
    switch (f->kind) {
      case FormulaNode::Kind::True: out << "true"; return;
      case FormulaNode::Kind::False: out << "false"; return;
      case FormulaNode::Kind::Atom: {
        // != has no SMT-LIB operator; it is lowered to (not (= p 0)).
        const char* op = nullptr;
        switch (f->cmp) {
          case Cmp::Eq: op = "="; break;
          case Cmp::Lt: op = "<"; break;
          case Cmp::Le: op = "<="; break;
          case Cmp::Gt: op = ">"; break;
          case Cmp::Ge: op = ">="; break;
          case Cmp::Ne: op = nullptr; break;
        }
        out << (op ? "(" : "(not (=");
        if (op) out << op;
        out << ' ';
        expr(out, f->poly);
        out << (op ? " 0)" : " 0))");
        return;
      }
      case FormulaNode::Kind::Not:
        out << "(not ";
        expr(out, f->children.front());
        out << ')';
        return;
      case FormulaNode::Kind::And:
      case FormulaNode::Kind::Or:
        out << (f->kind == FormulaNode::Kind::And ? "(and" : "(or");
        for (const auto& c : f->children) {
          out << ' ';
          expr(out, c);
        }
        out << ')';
        return;
    }
  }
};

}  // namespace

std::string serialize(const Sentence& s, Dialect dialect) {
  std::ostringstream out;
  if (dialect == Dialect::Smt2) {
    SmtWriter(out).write(s);
  } else {
    out << "exists";
    for (size_t i = 0; i < s.variables.size(); ++i) out << (i ? ", " : " ") << s.variables[i];
    out << " :\n";
    write_infix(out, s.body);
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Infix parser

namespace {

class InfixParser {
 public:
  explicit InfixParser(std::string_view text) : text_(text) {}

  Sentence sentence() {
    Sentence s;
    expect_word("exists");
    skip_space();
    if (peek() != ':') {
      s.variables.push_back(identifier());
      while (skip_space(), peek() == ',') {
        ++pos_;
        s.variables.push_back(identifier());
      }
    }
    expect(':');
    s.body = formula();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return s;
  }

 private:
  std::string_view text_;
  size_t pos_ = 0;
  std::unordered_map<std::string, Poly> vars_;

  [[noreturn]] void fail(const std::string& what) {
    throw Error(ErrorKind::ParseError, what + " at offset " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void expect(char c) {
    skip_space();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  std::string identifier() {
    skip_space();
    size_t start = pos_;
    if (!std::isalpha(static_cast<unsigned char>(peek())) && peek() != '_') fail("expected identifier");
    while (ident_char(peek())) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect_word(std::string_view word) {
    if (identifier() != word) fail("expected '" + std::string(word) + "'");
  }

  Formula formula() {
    skip_space();
    char c = peek();
    if (c == '!') {
      ++pos_;
      return negate(formula());
    }
    if (c == '[') {
      ++pos_;
      Poly p = poly();
      skip_space();
      Cmp cmp = comparison();
      skip_space();
      if (peek() != '0') fail("expected 0");
      ++pos_;
      expect(']');
      return atom(p, cmp);
    }
    if (c == '(') {
      ++pos_;
      std::vector<Formula> children{formula()};
      char sep = 0;
      for (;;) {
        skip_space();
        char d = peek();
        if (d == ')') {
          ++pos_;
          break;
        }
        if (d != '&' && d != '|') fail("expected '&', '|' or ')'");
        if (sep && d != sep) fail("mixed connectives in one group");
        sep = d;
        ++pos_;
        children.push_back(formula());
      }
      if (children.size() < 2) fail("connective needs two operands");
      return sep == '&' ? conjunction(std::move(children)) : disjunction(std::move(children));
    }
    std::string word = identifier();
    if (word == "true") return truth();
    if (word == "false") return falsity();
    fail("unexpected '" + word + "'");
  }

  Cmp comparison() {
    char c = peek();
    char d = pos_ + 1 < text_.size() ? text_[pos_ + 1] : '\0';
    if (c == '<' && d == '=') return pos_ += 2, Cmp::Le;
    if (c == '>' && d == '=') return pos_ += 2, Cmp::Ge;
    if (c == '!' && d == '=') return pos_ += 2, Cmp::Ne;
    if (c == '<') return ++pos_, Cmp::Lt;
    if (c == '>') return ++pos_, Cmp::Gt;
    if (c == '=') return ++pos_, Cmp::Eq;
    fail("expected comparison");
  }

  Poly poly() {
    skip_space();
    char c = peek();
    if (c == '(') {
      ++pos_;
      Poly lhs = poly();
      skip_space();
      char op = peek();
      if (op != '+' && op != '-' && op != '*') fail("expected operator");
      ++pos_;
      Poly rhs = poly();
      expect(')');
      return op == '+' ? lhs + rhs : op == '-' ? lhs - rhs : lhs * rhs;
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      ++pos_;
      while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '/') ++pos_;
      return constant(parse_rational(text_.substr(start, pos_ - start)));
    }
    std::string name = identifier();
    auto it = vars_.find(name);
    if (it != vars_.end()) return it->second;
    Poly v = variable(name);
    vars_.emplace(name, v);
    return v;
  }
};

}  // namespace

Sentence parse_infix(std::string_view text) { return InfixParser(text).sentence(); }

}  // namespace curvetp::etr
