#include "core/polynomial.hpp"

namespace fbh {

Poly Poly::falling(int j) {
  Poly p = constant(Rational(1));
  for (int i = 0; i < j; ++i) p = p * (t() - constant(Rational(i)));
  return p;
}

int Poly::degree() const {
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k)
    if (!c[k].is_zero()) return k;
  return -1;
}

Rational Poly::leading() const {
  int d = degree();
  return d < 0 ? Rational(0) : c[d];
}

void Poly::trim() {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

Poly Poly::operator+(const Poly& o) const {
  Poly r;
  r.c.resize(std::max(c.size(), o.c.size()), Rational(0));
  for (std::size_t k = 0; k < r.c.size(); ++k)
    r.c[k] = coeff(static_cast<int>(k)) + o.coeff(static_cast<int>(k));
  r.trim();
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + o.scaled(Rational(-1)); }

Poly Poly::operator*(const Poly& o) const {
  if (c.empty() || o.c.empty()) return zero();
  Poly r;
  r.c.assign(c.size() + o.c.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
  r.trim();
  return r;
}

Poly Poly::scaled(const Rational& r) const {
  Poly p = *this;
  for (auto& v : p.c) v *= r;
  p.trim();
  return p;
}

Poly Poly::divide_exact(const Poly& d) const {
  if (d.is_zero()) throw Error("polynomial division by zero");
  Poly rem = *this;
  rem.trim();
  Poly q;
  int dd = d.degree();
  while (rem.degree() >= dd) {
    int k = rem.degree() - dd;
    Rational f = rem.leading() / d.leading();
    Poly shift;
    shift.c.assign(k + 1, Rational(0));
    shift.c[k] = f;
    q = q + shift;
    rem = rem - d * shift;
  }
  if (!rem.is_zero()) throw Error("polynomial division left a nonzero remainder");
  q.trim();
  return q;
}

Poly Poly::strip_power(int k) const {
  for (int i = 0; i < k; ++i)
    if (!coeff(i).is_zero()) throw Error("strip_power: low coefficient is nonzero");
  Poly r;
  if (static_cast<int>(c.size()) > k) r.c.assign(c.begin() + k, c.end());
  r.trim();
  return r;
}

Rational Poly::eval(const Rational& x) const {
  Rational acc(0);
  for (int k = degree(); k >= 0; --k) acc = acc * x + coeff(k);
  return acc;
}

}  // namespace fbh
