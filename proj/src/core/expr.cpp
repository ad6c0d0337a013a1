#include "core/expr.hpp"

#include <array>
#include <cctype>
#include <cstdio>
#include <cstdlib>

namespace fbh {

Expr Expr::number(double v) {
  // Constants are stored non-negative so printed trees reparse to the same
  // structure (the parser emits unary minus, never signed literals).
  if (std::signbit(v)) return -number(-v);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->cvalue = v;
  return Expr(n);
}

Expr Expr::number(const Rational& r) {
  if (r.sign() < 0) return -number(-r);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->cvalue = r.to_double();
  n->cexact = r;
  return Expr(n);
}

Expr Expr::number_exact(double value, const Rational& r) {
  if (std::signbit(value) || r.sign() < 0) throw Error("number_exact wants non-negative input");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->cvalue = value;
  n->cexact = r;
  return Expr(n);
}

Expr Expr::variable(const std::string& name) {
  if (!is_variable_name(name)) throw Error("not a variable name: " + name);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->name = name;
  return Expr(n);
}

Expr Expr::parameter(const std::string& name) {
  if (is_variable_name(name) || is_function_name(name))
    throw Error("reserved identifier used as parameter: " + name);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Parameter;
  n->name = name;
  return Expr(n);
}

Expr Expr::unary(UnaryFn fn, Expr child) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Unary;
  n->fn = fn;
  n->a = child.node_;
  return Expr(n);
}

Expr Expr::binary(BinOp op, Expr lhs, Expr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Binary;
  n->op = op;
  n->a = lhs.node_;
  n->b = rhs.node_;
  return Expr(n);
}

Expr Expr::pow(Expr base, const Rational& exponent) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Power;
  n->exponent = exponent;
  n->a = base.node_;
  return Expr(n);
}

void Expr::free_identifiers(std::set<std::string>& vars, std::set<std::string>& params) const {
  if (!node_) return;
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Variable: vars.insert(n.name); break;
    case Kind::Parameter: params.insert(n.name); break;
    default: break;
  }
  if (n.a) Expr(n.a).free_identifiers(vars, params);
  if (n.b) Expr(n.b).free_identifiers(vars, params);
}

bool is_function_name(const std::string& s) {
  static const std::array<const char*, 7> fns = {"exp", "ln", "sqrt", "sin", "cos", "atan", "abs"};
  for (auto f : fns)
    if (s == f) return true;
  return false;
}

bool is_variable_name(const std::string& s) {
  if (s == "z") return true;
  return s.size() == 2 && s[0] == 'x' && s[1] >= '1' && s[1] <= '9';
}

namespace {

Expr::UnaryFn function_by_name(const std::string& s) {
  if (s == "exp") return Expr::UnaryFn::Exp;
  if (s == "ln") return Expr::UnaryFn::Ln;
  if (s == "sqrt") return Expr::UnaryFn::Sqrt;
  if (s == "sin") return Expr::UnaryFn::Sin;
  if (s == "cos") return Expr::UnaryFn::Cos;
  if (s == "atan") return Expr::UnaryFn::Atan;
  return Expr::UnaryFn::Abs;
}

struct Parser {
  const std::string& text;
  std::size_t pos = 0;
  int depth = 0;
  static constexpr int kMaxDepth = 512;

  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser) : p(parser) {
      if (++p.depth > kMaxDepth)
        throw ParseError("expression nests too deeply", p.pos);
    }
    ~DepthGuard() { --p.depth; }
  };

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool eat(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", pos);
  }

  std::string read_number_lexeme(bool allow_exponent_notation) {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.'))
      ++pos;
    if (allow_exponent_notation && pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
      std::size_t mark = pos;
      ++pos;
      if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
      if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      } else {
        pos = mark;  // bare 'e' belongs to an identifier, not this number
      }
    }
    if (pos == start) throw ParseError("expected a number", pos);
    return text.substr(start, pos - start);
  }

  std::string read_ident() {
    skip_ws();
    std::size_t start = pos;
    if (pos >= text.size() || !(std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      throw ParseError("expected an identifier", pos);
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    return text.substr(start, pos - start);
  }

  Expr parse_expr() {
    DepthGuard guard(*this);
    Expr acc = parse_term();
    while (true) {
      char c = peek();
      if (c == '+') {
        ++pos;
        acc = acc + parse_term();
      } else if (c == '-') {
        ++pos;
        acc = acc - parse_term();
      } else {
        return acc;
      }
    }
  }

  Expr parse_term() {
    Expr acc = parse_factor();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++pos;
        acc = acc * parse_factor();
      } else if (c == '/') {
        ++pos;
        acc = acc / parse_factor();
      } else {
        return acc;
      }
    }
  }

  Expr parse_factor() {
    DepthGuard guard(*this);
    if (peek() == '-') {
      ++pos;
      return -parse_factor();
    }
    Expr a = parse_atom();
    if (peek() == '^') {
      ++pos;
      Rational e = parse_exponent();
      return Expr::pow(a, e);
    }
    return a;
  }

  Rational parse_exponent() {
    skip_ws();
    std::size_t at = pos;
    try {
      if (eat('(')) {
        std::string body;
        if (peek() == '-') {
          ++pos;
          body = "-";
        }
        body += read_number_lexeme(false);
        if (peek() == '/') {
          ++pos;
          body += "/" + read_number_lexeme(false);
        }
        expect(')');
        return Rational::parse(body);
      }
      return Rational::parse(read_number_lexeme(false));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(std::string("malformed rational exponent: ") + e.what(), at);
    }
  }

  Expr parse_atom() {
    char c = peek();
    if (c == '(') {
      ++pos;
      Expr e = parse_expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::string lex = read_number_lexeme(true);
      char* end = nullptr;
      double v = std::strtod(lex.c_str(), &end);
      if (end != lex.c_str() + lex.size()) throw ParseError("malformed number '" + lex + "'", pos);
      // finite decimals without e-notation stay exact
      if (lex.find('e') == std::string::npos && lex.find('E') == std::string::npos) {
        try {
          return Expr::number_exact(v, Rational::parse(lex));
        } catch (const Error&) {
          return Expr::number(v);
        }
      }
      return Expr::number(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t at = pos;
      std::string id = read_ident();
      if (peek() == '(') {
        if (!is_function_name(id))
          throw ParseError("unknown function '" + id + "'", at);
        ++pos;
        Expr arg = parse_expr();
        expect(')');
        return Expr::unary(function_by_name(id), arg);
      }
      if (is_function_name(id))
        throw ParseError("function '" + id + "' needs an argument list", at);
      if (is_variable_name(id)) return Expr::variable(id);
      return Expr::parameter(id);
    }
    throw ParseError("unexpected character", pos);
  }
};

const char* fn_name(Expr::UnaryFn f) {
  switch (f) {
    case Expr::UnaryFn::Neg: return "-";
    case Expr::UnaryFn::Exp: return "exp";
    case Expr::UnaryFn::Ln: return "ln";
    case Expr::UnaryFn::Sqrt: return "sqrt";
    case Expr::UnaryFn::Sin: return "sin";
    case Expr::UnaryFn::Cos: return "cos";
    case Expr::UnaryFn::Atan: return "atan";
    case Expr::UnaryFn::Abs: return "abs";
  }
  return "?";
}

std::string format_constant(const Expr::Node& n) {
  if (n.cexact && n.cexact->is_integer() && n.cexact->num() >= 0)
    return std::to_string(n.cexact->num());
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", n.cvalue);
  return buf;
}

// precedence: 0 add, 1 mul, 2 unary/power, 3 atom
void print_node(const Expr::Node& n, std::string& out, int parent_prec);

void print_child(const Expr::NodePtr& p, std::string& out, int prec) {
  print_node(*p, out, prec);
}

void print_node(const Expr::Node& n, std::string& out, int parent_prec) {
  switch (n.kind) {
    case Expr::Kind::Constant: {
      std::string s = format_constant(n);
      bool neg = !s.empty() && s[0] == '-';
      if (neg && parent_prec >= 2) out += "(" + s + ")";
      else out += s;
      return;
    }
    case Expr::Kind::Variable:
    case Expr::Kind::Parameter:
      out += n.name;
      return;
    case Expr::Kind::Unary: {
      if (n.fn == Expr::UnaryFn::Neg) {
        bool parens = parent_prec >= 2;
        if (parens) out += "(";
        out += "-";
        print_child(n.a, out, 2);
        if (parens) out += ")";
        return;
      }
      out += fn_name(n.fn);
      out += "(";
      print_child(n.a, out, 0);
      out += ")";
      return;
    }
    case Expr::Kind::Binary: {
      int prec = (n.op == Expr::BinOp::Add || n.op == Expr::BinOp::Sub) ? 0 : 1;
      bool parens = parent_prec > prec;
      if (parens) out += "(";
      print_child(n.a, out, prec);
      switch (n.op) {
        case Expr::BinOp::Add: out += "+"; break;
        case Expr::BinOp::Sub: out += "-"; break;
        case Expr::BinOp::Mul: out += "*"; break;
        case Expr::BinOp::Div: out += "/"; break;
      }
      print_child(n.b, out, prec + 1);
      if (parens) out += ")";
      return;
    }
    case Expr::Kind::Power: {
      bool parens = parent_prec >= 3;  // the grammar has no chained '^'
      if (parens) out += "(";
      print_child(n.a, out, 3);
      out += "^";
      if (n.exponent.is_integer() && n.exponent.num() >= 0) {
        out += n.exponent.str();
      } else {
        out += "(" + n.exponent.str() + ")";
      }
      if (parens) out += ")";
      return;
    }
  }
}

}  // namespace

Expr parse(const std::string& text) {
  if (text.empty()) throw ParseError("empty expression", 0);
  Parser p{text};
  Expr e = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) throw ParseError("trailing input", p.pos);
  return e;
}

std::string to_string(const Expr& e) {
  if (!e.valid()) return "";
  std::string out;
  print_node(e.node(), out, 0);
  return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (!a.valid() || !b.valid()) return a.valid() == b.valid();
  const auto& na = a.node();
  const auto& nb = b.node();
  if (na.kind != nb.kind) return false;
  switch (na.kind) {
    case Expr::Kind::Constant:
      return na.cvalue == nb.cvalue;
    case Expr::Kind::Variable:
    case Expr::Kind::Parameter:
      return na.name == nb.name;
    case Expr::Kind::Unary:
      return na.fn == nb.fn && structurally_equal(Expr(na.a), Expr(nb.a));
    case Expr::Kind::Binary:
      return na.op == nb.op && structurally_equal(Expr(na.a), Expr(nb.a)) &&
             structurally_equal(Expr(na.b), Expr(nb.b));
    case Expr::Kind::Power:
      return na.exponent == nb.exponent && structurally_equal(Expr(na.a), Expr(nb.a));
  }
  return false;
}

double evaluate_real(const Expr& e, const Bindings& b,
                     const std::map<std::string, double>& vars) {
  EvalEnv<double> env;
  env.bindings = &b;
  env.vars = vars;
  env.exemplar = 0.0;
  return evaluate(e, env);
}

}  // namespace fbh
