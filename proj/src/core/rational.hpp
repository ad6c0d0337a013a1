#ifndef FBH_CORE_RATIONAL_HPP
#define FBH_CORE_RATIONAL_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "core/errors.hpp"

namespace fbh {

// Exact rational on checked 64-bit integers. The quantities this has to
// carry (power-ansatz exponents, quadratic coefficients for m <= 12) are
// tiny; any overflow is a logic error, not a range problem, so we fail loud.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT implicit on purpose
  Rational(std::int64_t n, std::int64_t d);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  Rational operator-() const { return Rational(-num_, den_); }
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator<=(const Rational& o) const { return !(o < *this); }
  bool operator>=(const Rational& o) const { return !(*this < o); }

  Rational abs() const { return num_ < 0 ? -*this : *this; }

  // Exact square root, when the value is a perfect square of a rational.
  std::optional<Rational> sqrt_exact() const;

  // "123", "-4/7", "0.45" (finite decimals are exact).
  static Rational parse(const std::string& text);

 private:
  std::int64_t num_, den_;  // den_ > 0, gcd(|num_|, den_) == 1
  void normalize();
};

inline Rational operator*(std::int64_t a, const Rational& b) { return Rational(a) * b; }
inline Rational operator+(std::int64_t a, const Rational& b) { return Rational(a) + b; }
inline Rational operator-(std::int64_t a, const Rational& b) { return Rational(a) - b; }

}  // namespace fbh

#endif
