#include <doctest.h>

#include "core/rational.hpp"

using namespace fbh;

TEST_CASE("rational normalization and arithmetic") {
  CHECK(Rational(6, 4) == Rational(3, 2));
  CHECK(Rational(-6, 4) == Rational(-3, 2));
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  CHECK(Rational(2, 3) / Rational(4, 3) == Rational(1, 2));
  CHECK(Rational(7, 3) > Rational(2));
  CHECK(Rational(-1, 3) < Rational(0));
  CHECK_THROWS_AS(Rational(1, 0), Error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), Error);
}

TEST_CASE("rational strings") {
  CHECK(Rational(3, 13).str() == "3/13");
  CHECK(Rational(-1).str() == "-1");
  CHECK(Rational(12, 17).str() == "12/17");
}

TEST_CASE("rational parse") {
  CHECK(Rational::parse("3/13") == Rational(3, 13));
  CHECK(Rational::parse("-1") == Rational(-1));
  CHECK(Rational::parse("0.45") == Rational(9, 20));
  CHECK(Rational::parse("2.5/0.5") == Rational(5));
  CHECK_THROWS_AS(Rational::parse("abc"), Error);
  CHECK_THROWS_AS(Rational::parse("1/2/3"), Error);
}

TEST_CASE("exact square roots") {
  CHECK(Rational(4, 9).sqrt_exact().value() == Rational(2, 3));
  CHECK(Rational(49).sqrt_exact().value() == Rational(7));
  CHECK(!Rational(2).sqrt_exact().has_value());
  CHECK(!Rational(-4).sqrt_exact().has_value());
}
