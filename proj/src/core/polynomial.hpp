#ifndef FBH_CORE_POLYNOMIAL_HPP
#define FBH_CORE_POLYNOMIAL_HPP

#include <vector>

#include "core/rational.hpp"

namespace fbh {

// Dense univariate polynomial over exact rationals; c[k] multiplies t^k.
struct Poly {
  std::vector<Rational> c;

  static Poly zero() { return Poly{}; }
  static Poly constant(const Rational& r) { return Poly{{r}}; }
  static Poly t() { return Poly{{Rational(0), Rational(1)}}; }
  // falling factorial t (t-1) ... (t-j+1); j = 0 gives 1
  static Poly falling(int j);

  int degree() const;
  bool is_zero() const { return degree() < 0; }
  Rational coeff(int k) const { return k < static_cast<int>(c.size()) ? c[k] : Rational(0); }
  Rational leading() const;
  void trim();

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const Rational& r) const;

  // exact division (throws on nonzero remainder)
  Poly divide_exact(const Poly& d) const;
  // divide by t^k, asserting the low coefficients vanish
  Poly strip_power(int k) const;

  Rational eval(const Rational& x) const;
};

}  // namespace fbh

#endif
