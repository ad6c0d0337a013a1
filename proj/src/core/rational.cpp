#include "core/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <numeric>

namespace fbh {

namespace {

std::int64_t checked(__int128 v, const char* what) {
  if (v > INT64_MAX || v < INT64_MIN)
    throw Error(std::string("rational overflow in ") + what);
  return static_cast<std::int64_t>(v);
}

}  // namespace

Rational::Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
  if (d == 0) throw Error("rational with zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator+(const Rational& o) const {
  std::int64_t dg = std::gcd(den_, o.den_);
  __int128 n = static_cast<__int128>(num_) * (o.den_ / dg) +
               static_cast<__int128>(o.num_) * (den_ / dg);
  __int128 d = static_cast<__int128>(den_ / dg) * o.den_;
  return Rational(checked(n, "add"), checked(d, "add"));
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
  // Cross-reduce before multiplying to keep intermediates small.
  Rational a(num_, o.den_);
  Rational b(o.num_, den_);
  __int128 n = static_cast<__int128>(a.num_) * b.num_;
  __int128 d = static_cast<__int128>(a.den_) * b.den_;
  return Rational(checked(n, "mul"), checked(d, "mul"));
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw Error("rational division by zero");
  return *this * Rational(o.den_, o.num_);
}

bool Rational::operator<(const Rational& o) const {
  return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
}

namespace {

std::optional<std::int64_t> isqrt_exact(std::int64_t v) {
  if (v < 0) return std::nullopt;
  if (v < 2) return v;
  std::int64_t lo = 1, hi = 3037000499LL;  // floor(sqrt(INT64_MAX))
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo + 1) / 2;
    if (mid <= v / mid)
      lo = mid;
    else
      hi = mid - 1;
  }
  if (lo * lo == v) return lo;
  return std::nullopt;
}

}  // namespace

std::optional<Rational> Rational::sqrt_exact() const {
  auto n = isqrt_exact(num_);
  auto d = isqrt_exact(den_);
  if (!n || !d) return std::nullopt;
  return Rational(*n, *d);
}

Rational Rational::parse(const std::string& text) {
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    neg = text[i] == '-';
    ++i;
  }
  auto read_decimal = [&](std::int64_t& num, std::int64_t& den) {
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
      throw Error("malformed rational literal: " + text);
    __int128 acc = 0;
    __int128 scale = 1;
    bool frac = false;
    for (; i < text.size(); ++i) {
      char c = text[i];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        acc = acc * 10 + (c - '0');
        if (frac) scale *= 10;
        if (acc > INT64_MAX || scale > INT64_MAX)
          throw Error("rational literal out of range: " + text);
      } else if (c == '.' && !frac) {
        frac = true;
      } else {
        break;
      }
    }
    num = static_cast<std::int64_t>(acc);
    den = static_cast<std::int64_t>(scale);
  };
  std::int64_t pn, pd;
  read_decimal(pn, pd);
  Rational r(pn, pd);
  if (i < text.size() && text[i] == '/') {
    ++i;
    bool dneg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      dneg = text[i] == '-';
      ++i;
    }
    std::int64_t qn, qd;
    read_decimal(qn, qd);
    Rational q(qn, qd);
    if (dneg) q = -q;
    r = r / q;
  }
  if (i != text.size()) throw Error("malformed rational literal: " + text);
  return neg ? -r : r;
}

}  // namespace fbh
