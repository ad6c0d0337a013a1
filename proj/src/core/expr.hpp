#ifndef FBH_CORE_EXPR_HPP
#define FBH_CORE_EXPR_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core/jet.hpp"
#include "core/rational.hpp"

namespace fbh {

// Immutable expression tree for conformal factors, immersion components and
// weight functions. Variables are x1..x9 and z; every other identifier is a
// late-bound parameter.
class Expr {
 public:
  enum class Kind { Constant, Variable, Parameter, Unary, Binary, Power };
  enum class UnaryFn { Neg, Exp, Ln, Sqrt, Sin, Cos, Atan, Abs };
  enum class BinOp { Add, Sub, Mul, Div };

  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  struct Node {
    Kind kind;
    double cvalue = 0.0;                 // Constant
    std::optional<Rational> cexact;      // Constant, when exact
    std::string name;                    // Variable / Parameter
    UnaryFn fn = UnaryFn::Neg;           // Unary
    BinOp op = BinOp::Add;               // Binary
    Rational exponent;                   // Power
    NodePtr a, b;
  };

  Expr() = default;
  explicit Expr(NodePtr n) : node_(std::move(n)) {}
  const Node& node() const { return *node_; }
  bool valid() const { return node_ != nullptr; }

  static Expr number(double v);
  static Expr number(const Rational& r);
  static Expr number_exact(double value, const Rational& r);
  static Expr variable(const std::string& name);
  static Expr parameter(const std::string& name);
  static Expr unary(UnaryFn fn, Expr child);
  static Expr binary(BinOp op, Expr lhs, Expr rhs);
  static Expr pow(Expr base, const Rational& exponent);

  Expr operator+(const Expr& o) const { return binary(BinOp::Add, *this, o); }
  Expr operator-(const Expr& o) const { return binary(BinOp::Sub, *this, o); }
  Expr operator*(const Expr& o) const { return binary(BinOp::Mul, *this, o); }
  Expr operator/(const Expr& o) const { return binary(BinOp::Div, *this, o); }
  Expr operator-() const { return unary(UnaryFn::Neg, *this); }

  void free_identifiers(std::set<std::string>& vars, std::set<std::string>& params) const;

 private:
  NodePtr node_;
};

bool is_function_name(const std::string& s);
bool is_variable_name(const std::string& s);

Expr parse(const std::string& text);
std::string to_string(const Expr& e);
bool structurally_equal(const Expr& a, const Expr& b);

// Late-bound values: parameters are plain reals, variables carry the scalar
// (double or jet) the tree is evaluated over.
struct Bindings {
  std::map<std::string, double> params;
};

template <class T>
struct EvalEnv {
  const Bindings* bindings = nullptr;
  std::map<std::string, T> vars;
  // exemplar scalar so constants know their jet space; for T = double the
  // value is irrelevant.
  T exemplar{};
};

namespace detail {

template <class T>
T eval_node(const Expr::Node& n, const EvalEnv<T>& env);

}

template <class T>
T evaluate(const Expr& e, const EvalEnv<T>& env) {
  if (!e.valid()) throw Error("evaluate on an empty expression");
  return detail::eval_node<T>(e.node(), env);
}

double evaluate_real(const Expr& e, const Bindings& b,
                     const std::map<std::string, double>& vars);

// ---- evaluator implementation --------------------------------------------

namespace detail {

template <class T>
T eval_node(const Expr::Node& n, const EvalEnv<T>& env) {
  using Ops = ScalarOps<T>;
  switch (n.kind) {
    case Expr::Kind::Constant:
      return Ops::from_double_like(env.exemplar, n.cvalue);
    case Expr::Kind::Variable: {
      auto it = env.vars.find(n.name);
      if (it == env.vars.end())
        throw Error("unbound variable '" + n.name + "'");
      return it->second;
    }
    case Expr::Kind::Parameter: {
      if (!env.bindings)
        throw Error("unbound parameter '" + n.name + "'");
      auto it = env.bindings->params.find(n.name);
      if (it == env.bindings->params.end())
        throw Error("unbound parameter '" + n.name + "'");
      return Ops::from_double_like(env.exemplar, it->second);
    }
    case Expr::Kind::Unary: {
      T c = eval_node<T>(*n.a, env);
      try {
        switch (n.fn) {
          case Expr::UnaryFn::Neg: return -c;
          case Expr::UnaryFn::Exp: return s_exp(c);
          case Expr::UnaryFn::Ln: return s_ln(c);
          case Expr::UnaryFn::Sqrt: return s_sqrt(c);
          case Expr::UnaryFn::Sin: return s_sin(c);
          case Expr::UnaryFn::Cos: return s_cos(c);
          case Expr::UnaryFn::Atan: return s_atan(c);
          case Expr::UnaryFn::Abs: return s_abs(c);
        }
      } catch (const DomainError& err) {
        throw DomainError(std::string(err.what()) + " in " + to_string(Expr(n.a)), err.value);
      }
      throw Error("unreachable unary");
    }
    case Expr::Kind::Binary: {
      T l = eval_node<T>(*n.a, env);
      T r = eval_node<T>(*n.b, env);
      try {
        switch (n.op) {
          case Expr::BinOp::Add: return l + r;
          case Expr::BinOp::Sub: return l - r;
          case Expr::BinOp::Mul: return l * r;
          case Expr::BinOp::Div: return s_div(l, r);
        }
      } catch (const SingularPointError& err) {
        throw SingularPointError(std::string(err.what()) + " in " + to_string(Expr(n.b)),
                                 err.value);
      } catch (const DomainError& err) {
        throw DomainError(std::string(err.what()) + " in " + to_string(Expr(n.b)), err.value);
      }
      throw Error("unreachable binary");
    }
    case Expr::Kind::Power: {
      T base = eval_node<T>(*n.a, env);
      try {
        return s_pow_rational(base, n.exponent);
      } catch (const DomainError& err) {
        throw DomainError(std::string(err.what()) + " in " + to_string(Expr(n.a)) + "^(" +
                              n.exponent.str() + ")",
                          err.value);
      }
    }
  }
  throw Error("unreachable kind");
}

}  // namespace detail

}  // namespace fbh

#endif
