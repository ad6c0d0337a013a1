#include <doctest.h>

#include <cmath>

#include "core/expr.hpp"
#include "core/sampling.hpp"

using namespace fbh;

TEST_CASE("grammar: 1/(c1*z+c2)") {
  Expr e = parse("1/(c1*z+c2)");
  const auto& n = e.node();
  REQUIRE(n.kind == Expr::Kind::Binary);
  CHECK(n.op == Expr::BinOp::Div);
  CHECK(n.a->kind == Expr::Kind::Constant);
  REQUIRE(n.b->kind == Expr::Kind::Binary);
  CHECK(n.b->op == Expr::BinOp::Add);
  CHECK(n.b->a->kind == Expr::Kind::Binary);
  CHECK(n.b->a->op == Expr::BinOp::Mul);
  CHECK(n.b->a->a->name == "c1");
  CHECK(n.b->a->b->name == "z");
  CHECK(n.b->b->name == "c2");
}

TEST_CASE("rational exponents parse exactly") {
  Expr e = parse("z^(-1)");
  REQUIRE(e.node().kind == Expr::Kind::Power);
  CHECK(e.node().exponent == Rational(-1));
  CHECK(e.node().a->name == "z");

  Expr f = parse("z^(3/13)");
  CHECK(f.node().exponent == Rational(3, 13));

  Expr g = parse("z^2");
  CHECK(g.node().exponent == Rational(2));

  Expr h = parse("z^(0.45)");
  CHECK(h.node().exponent == Rational(9, 20));
}

TEST_CASE("unbound parameter fails at evaluation, not parse") {
  Expr e = parse("2*r^3");
  std::set<std::string> vars, params;
  e.free_identifiers(vars, params);
  CHECK(params.count("r") == 1);
  Bindings empty;
  CHECK_THROWS_WITH_AS(evaluate_real(e, empty, {}), doctest::Contains("unbound parameter 'r'"),
                       Error);
}

TEST_CASE("evaluation examples") {
  Bindings b;
  CHECK(evaluate_real(parse("z^(-1)"), b, {{"z", 2.0}}) == doctest::Approx(0.5));

  b.params["C"] = 10.0;
  double v = evaluate_real(parse("(x1+x2+z+C)^(3/13)"), b,
                           {{"x1", 1.0}, {"x2", 1.0}, {"z", 1.0}});
  CHECK(v == doctest::Approx(std::pow(13.0, 3.0 / 13.0)));
}

TEST_CASE("geometric series jet of 1/(c1*z+c2)") {
  Bindings b;
  b.params["c1"] = 1.0;
  b.params["c2"] = 1.0;
  auto js = JetSpace::get(1, 3);
  EvalEnv<Jet> env;
  env.bindings = &b;
  env.exemplar = Jet::constant(js, 0.0);
  env.vars["z"] = Jet::seed_value(js, 0, 0.0);
  Jet r = evaluate(parse("1/(c1*z+c2)"), env);
  CHECK(r.coeff(0) == doctest::Approx(1.0));
  CHECK(r.coeff(1) == doctest::Approx(-1.0));
  CHECK(r.coeff(2) == doctest::Approx(1.0));
  CHECK(r.coeff(3) == doctest::Approx(-1.0));
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("1+"), ParseError);
  CHECK_THROWS_AS(parse("foo(z)"), ParseError);
  CHECK_THROWS_AS(parse("z^(1/2/3)"), ParseError);
  CHECK_THROWS_AS(parse("(z"), ParseError);
  CHECK_THROWS_AS(parse("z)"), ParseError);
  try {
    parse("1/(c1*z+@)");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.pos == 8);
  }
}

TEST_CASE("print-parse round trip is structurally exact") {
  const char* corpus[] = {
      "1/(c1*z+c2)",
      "z^(-1)",
      "z^(3/13)",
      "(x1+x2+z+C)^(3/13)",
      "exp(x1-x2)*atan(x1*x2)",
      "-z^2+3*z-1",
      "2*r^3",
      "sqrt(1+x1^2+x2^2)*ln(2+z)",
      "abs(z)*sin(z)/cos(z)",
      "1-2/(3-z)",
      "-(x1-x2)*(x1+x2)",
      "0.45*z^(0.45)",
      "1e-3*z+2.5e2",
  };
  for (const char* text : corpus) {
    Expr once = parse(text);
    std::string printed = to_string(once);
    Expr twice = parse(printed);
    CHECK_MESSAGE(structurally_equal(once, twice), text, " printed as ", printed);
    CHECK(to_string(twice) == printed);
  }
}

TEST_CASE("real evaluation equals the value slot of jet evaluation") {
  const char* corpus[] = {
      "1/(c1*z+c2)",
      "(x1+x2+z+C)^(3/13)",
      "exp(x1)*sin(x2)+sqrt(1+z^2)",
      "atan(x1*z)/(2+cos(x2))",
  };
  Bindings b;
  b.params["c1"] = 1.0;
  b.params["c2"] = 2.0;
  b.params["C"] = 10.0;
  auto js = JetSpace::get(3, 3);
  for (const char* text : corpus) {
    Expr e = parse(text);
    for (int rep = 0; rep < 10; ++rep) {
      Rng rng = stream_rng(5, rep);
      double x1 = rng.uniform(0.2, 1.5), x2 = rng.uniform(0.2, 1.5), z = rng.uniform(0.2, 1.5);
      double real = evaluate_real(e, b, {{"x1", x1}, {"x2", x2}, {"z", z}});
      EvalEnv<Jet> env;
      env.bindings = &b;
      env.exemplar = Jet::constant(js, 0.0);
      env.vars["x1"] = Jet::seed_value(js, 0, x1);
      env.vars["x2"] = Jet::seed_value(js, 1, x2);
      env.vars["z"] = Jet::seed_value(js, 2, z);
      Jet jv = evaluate(e, env);
      CHECK(std::abs(real - jv.value()) <= 1e-14 * std::max(1.0, std::abs(real)));
    }
  }
}

TEST_CASE("domain errors carry the offending subexpression") {
  Bindings b;
  CHECK_THROWS_WITH_AS(evaluate_real(parse("ln(z-2)"), b, {{"z", 1.0}}),
                       doctest::Contains("ln of non-positive"), DomainError);
  CHECK_THROWS_AS(evaluate_real(parse("abs(z)"), b, {{"z", 0.0}}), DomainError);
  CHECK_THROWS_AS(evaluate_real(parse("1/(z-1)"), b, {{"z", 1.0}}), SingularPointError);
  CHECK_THROWS_AS(evaluate_real(parse("(z-3)^(1/2)"), b, {{"z", 1.0}}), DomainError);
}

TEST_CASE("variable names are x1..x9 and z") {
  CHECK(is_variable_name("x1"));
  CHECK(is_variable_name("x9"));
  CHECK(is_variable_name("z"));
  CHECK(!is_variable_name("x0"));
  CHECK(!is_variable_name("x10"));
  CHECK(!is_variable_name("y"));
  Expr e = parse("x3*q");
  CHECK(e.node().a->kind == Expr::Kind::Variable);
  CHECK(e.node().b->kind == Expr::Kind::Parameter);
}

TEST_CASE("deeply nested input is rejected, not crashed on") {
  std::string deep(100000, '(');
  deep += "z";
  deep += std::string(100000, ')');
  CHECK_THROWS_AS(parse(deep), ParseError);
  // moderate nesting stays fine
  std::string ok(64, '(');
  ok += "z";
  ok += std::string(64, ')');
  CHECK_NOTHROW(parse(ok));
}
