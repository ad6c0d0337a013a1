#ifndef FBH_CORE_JET_HPP
#define FBH_CORE_JET_HPP

#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "core/errors.hpp"
#include "core/rational.hpp"

namespace fbh {

// Exponent tuple of a partial derivative slot.
struct MultiIndex {
  std::vector<int> exponents;
  int degree() const {
    int d = 0;
    for (int e : exponents) d += e;
    return d;
  }
  bool operator==(const MultiIndex& o) const { return exponents == o.exponents; }
};

// Shared layout for all jets with the same (n_vars, order): the graded-lex
// ordered multi-index list, the reverse lookup, and the truncated-product
// pair table. Built once per (n_vars, order) and cached.
class JetSpace {
 public:
  static std::shared_ptr<const JetSpace> get(int n_vars, int order);

  int n_vars() const { return n_vars_; }
  int order() const { return order_; }
  int size() const { return static_cast<int>(index_.size()); }

  const MultiIndex& multi_index(int i) const { return index_[i]; }
  int degree(int i) const { return degree_[i]; }
  // -1 when alpha is out of range for this space.
  int position(const MultiIndex& alpha) const;

  struct Pair {
    std::int32_t a, b, target;
  };
  const std::vector<Pair>& pairs() const { return pairs_; }

  // position of the coefficient alpha + e_var, or -1 past the order cut.
  int bump(int i, int var) const { return bump_[i * n_vars_ + var]; }

  static constexpr int kMaxOrder = 6;
  static constexpr int kMaxVars = 16;

 private:
  JetSpace(int n_vars, int order);
  int n_vars_, order_;
  std::vector<MultiIndex> index_;
  std::vector<int> degree_;
  std::unordered_map<std::uint64_t, int> lookup_;
  std::vector<Pair> pairs_;
  std::vector<int> bump_;
  static std::uint64_t key(const MultiIndex& m);
};

namespace detail {

template <class T>
struct ScalarOps {
  static double leading(const T& v) { return v.leading_value(); }
  static T zero_like(const T& v) { return v.zero_like(); }
  static T one_like(const T& v) { return v.from_double_like(1.0); }
  static T from_double_like(const T& v, double x) { return v.from_double_like(x); }
};

template <>
struct ScalarOps<double> {
  static double leading(double v) { return v; }
  static double zero_like(double) { return 0.0; }
  static double one_like(double) { return 1.0; }
  static double from_double_like(double, double x) { return x; }
};

}  // namespace detail

// Truncated multivariate Taylor expansion: coefficient at alpha is
// d^alpha f / alpha! at the expansion point. T is double for ordinary use
// and can itself be a jet for nested (chart-in-ambient) differentiation.
template <class T>
class JetT {
 public:
  JetT() = default;
  JetT(std::shared_ptr<const JetSpace> space, T fill)
      : space_(std::move(space)), c_(space_->size(), fill) {}

  static JetT constant(std::shared_ptr<const JetSpace> space, T value) {
    JetT j(space, detail::ScalarOps<T>::zero_like(value));
    j.c_[0] = std::move(value);
    return j;
  }

  // Jet of the coordinate function x_var at the given value.
  static JetT seed_value(std::shared_ptr<const JetSpace> space, int var, T value) {
    if (var < 0 || var >= space->n_vars())
      throw Error("seed: var_index " + std::to_string(var) + " out of range for " +
                  std::to_string(space->n_vars()) + " variables");
    JetT j(space, detail::ScalarOps<T>::zero_like(value));
    T one = detail::ScalarOps<T>::one_like(value);
    j.c_[0] = std::move(value);
    if (space->order() >= 1) j.c_[1 + var] = std::move(one);
    return j;
  }

  const std::shared_ptr<const JetSpace>& space() const { return space_; }
  int n_vars() const { return space_->n_vars(); }
  int order() const { return space_->order(); }
  int size() const { return static_cast<int>(c_.size()); }

  const T& value() const { return c_[0]; }
  const T& coeff(int i) const { return c_[i]; }
  T& coeff(int i) { return c_[i]; }
  const T& coeff(const MultiIndex& alpha) const {
    int p = space_->position(alpha);
    if (p < 0) throw Error("coefficient index outside jet order");
    return c_[p];
  }

  double leading_value() const { return detail::ScalarOps<T>::leading(c_[0]); }
  JetT zero_like() const { return JetT(space_, detail::ScalarOps<T>::zero_like(c_[0])); }
  JetT from_double_like(double x) const {
    return constant(space_, detail::ScalarOps<T>::from_double_like(c_[0], x));
  }

  // d/dx_var, one order lower.
  JetT derivative(int var) const;

  // Same expansion cut to a lower order.
  JetT truncated(int new_order) const;

  JetT operator-() const {
    JetT r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  JetT operator+(const JetT& o) const {
    check_same(o);
    JetT r = *this;
    for (int i = 0; i < size(); ++i) r.c_[i] = r.c_[i] + o.c_[i];
    return r;
  }
  JetT operator-(const JetT& o) const {
    check_same(o);
    JetT r = *this;
    for (int i = 0; i < size(); ++i) r.c_[i] = r.c_[i] - o.c_[i];
    return r;
  }
  JetT operator*(const JetT& o) const;
  JetT operator/(const JetT& o) const;

  JetT operator+(double s) const {
    JetT r = *this;
    r.c_[0] = r.c_[0] + detail::ScalarOps<T>::from_double_like(r.c_[0], s);
    return r;
  }
  JetT operator-(double s) const { return *this + (-s); }
  JetT operator*(double s) const {
    JetT r = *this;
    T f = detail::ScalarOps<T>::from_double_like(r.c_[0], s);
    for (auto& v : r.c_) v = v * f;
    return r;
  }
  JetT operator/(double s) const { return *this * (1.0 / s); }

  // Composition with an analytic function given by its univariate Taylor
  // coefficients at value(): sum_k series[k] * (j - value())^k, truncated.
  JetT compose_series(const std::vector<T>& series) const;

 private:
  std::shared_ptr<const JetSpace> space_;
  std::vector<T> c_;
  void check_same(const JetT& o) const {
    if (space_ == o.space_) return;
    if (!space_ || !o.space_ || space_->n_vars() != o.space_->n_vars() ||
        space_->order() != o.space_->order())
      throw Error("jet arithmetic on mismatched (n_vars, order)");
  }
};

using Jet = JetT<double>;

template <class T>
JetT<T> operator*(double s, const JetT<T>& j) { return j * s; }
template <class T>
JetT<T> operator+(double s, const JetT<T>& j) { return j + s; }
template <class T>
JetT<T> operator-(double s, const JetT<T>& j) { return (-j) + s; }

// Generic scalar functions: work for double and for jets of any nesting.
inline double s_exp(double v) { return std::exp(v); }
inline double s_ln(double v) {
  if (!(v > 0)) throw DomainError("ln of non-positive value", v);
  return std::log(v);
}
inline double s_sqrt(double v) {
  if (!(v > 0)) throw DomainError("sqrt of non-positive value", v);
  return std::sqrt(v);
}
inline double s_sin(double v) { return std::sin(v); }
inline double s_cos(double v) { return std::cos(v); }
inline double s_atan(double v) { return std::atan(v); }
inline double s_abs(double v) {
  if (std::fabs(v) < 1e-12) throw DomainError("abs at a degenerate (near-zero) point", v);
  return std::fabs(v);
}
inline double s_recip(double v) {
  if (std::fabs(v) < 1e-300) throw SingularPointError("division by (near) zero", v);
  return 1.0 / v;
}
// Real power on a positive base; rational exactness lives in the AST, the
// numeric kernel only needs the double exponent.
inline double s_pow(double v, double e) {
  if (!(v > 0)) throw DomainError("power of non-positive base", v);
  return std::pow(v, e);
}
inline double s_div(double a, double b) { return a * s_recip(b); }
template <class T>
JetT<T> s_div(const JetT<T>& a, const JetT<T>& b) { return a / b; }
// Integer power, any base sign.
inline double s_powi(double v, long n) {
  if (n < 0) return s_recip(s_powi(v, -n));
  double r = 1.0, b = v;
  for (long k = n; k > 0; k >>= 1) {
    if (k & 1) r *= b;
    b *= b;
  }
  return r;
}

template <class T> JetT<T> s_exp(const JetT<T>& a);
template <class T> JetT<T> s_ln(const JetT<T>& a);
template <class T> JetT<T> s_sqrt(const JetT<T>& a);
template <class T> JetT<T> s_sin(const JetT<T>& a);
template <class T> JetT<T> s_cos(const JetT<T>& a);
template <class T> JetT<T> s_atan(const JetT<T>& a);
template <class T> JetT<T> s_abs(const JetT<T>& a);
template <class T> JetT<T> s_recip(const JetT<T>& a);
template <class T> JetT<T> s_pow(const JetT<T>& a, double e);
template <class T> JetT<T> s_powi(const JetT<T>& a, long n);

template <class T>
JetT<T> s_pow_rational(const JetT<T>& a, const Rational& r) {
  if (r.is_integer()) return s_powi(a, r.num());
  return s_pow(a, r.to_double());
}
inline double s_pow_rational(double v, const Rational& r) {
  if (r.is_integer()) return s_powi(v, r.num());
  return s_pow(v, r.to_double());
}

// Convenience double-jet entry points (order defaults to 3 everywhere the
// public contract is exercised).
Jet seed(std::span<const double> point, int var_index, int order);

void check_assert(bool cond, const char* msg);

// ---- template implementations -------------------------------------------

template <class T>
JetT<T> JetT<T>::derivative(int var) const {
  if (order() < 1) throw Error("derivative of an order-0 jet");
  auto dspace = JetSpace::get(n_vars(), order() - 1);
  JetT<T> r(dspace, detail::ScalarOps<T>::zero_like(c_[0]));
  for (int i = 0; i < dspace->size(); ++i) {
    MultiIndex alpha = dspace->multi_index(i);
    alpha.exponents[var] += 1;
    int src = space_->position(alpha);
    r.c_[i] = c_[src] * detail::ScalarOps<T>::from_double_like(c_[0], alpha.exponents[var]);
  }
  return r;
}

template <class T>
JetT<T> JetT<T>::truncated(int new_order) const {
  if (new_order == order()) return *this;
  if (new_order > order()) throw Error("truncated: cannot raise jet order");
  auto tspace = JetSpace::get(n_vars(), new_order);
  JetT<T> r(tspace, detail::ScalarOps<T>::zero_like(c_[0]));
  for (int i = 0; i < tspace->size(); ++i) {
    int src = space_->position(tspace->multi_index(i));
    r.c_[i] = c_[src];
  }
  return r;
}

template <class T>
JetT<T> JetT<T>::operator*(const JetT<T>& o) const {
  check_same(o);
  JetT<T> r = zero_like();
  for (const auto& p : space_->pairs())
    r.c_[p.target] = r.c_[p.target] + c_[p.a] * o.c_[p.b];
  return r;
}

template <class T>
JetT<T> JetT<T>::compose_series(const std::vector<T>& series) const {
  JetT<T> delta = *this;
  delta.c_[0] = detail::ScalarOps<T>::zero_like(c_[0]);
  int n = static_cast<int>(series.size()) - 1;
  JetT<T> r = constant(space_, series[n]);
  for (int k = n - 1; k >= 0; --k) {
    r = r * delta;
    r.c_[0] = r.c_[0] + series[k];
  }
  return r;
}

template <class T>
JetT<T> JetT<T>::operator/(const JetT<T>& o) const {
  check_same(o);
  return *this * s_recip(o);
}

template <class T>
JetT<T> s_recip(const JetT<T>& a) {
  if (std::fabs(a.leading_value()) < 1e-300)
    throw SingularPointError("division by a jet with (near) zero value", a.leading_value());
  const T& v = a.value();
  T iv = s_recip(v);
  std::vector<T> series(a.order() + 1, iv);
  for (int k = 1; k <= a.order(); ++k) series[k] = -(series[k - 1] * iv);
  return a.compose_series(series);
}

template <class T>
JetT<T> s_exp(const JetT<T>& a) {
  T e = s_exp(a.value());
  std::vector<T> series(a.order() + 1, e);
  double fact = 1.0;
  for (int k = 1; k <= a.order(); ++k) {
    fact *= k;
    series[k] = series[0] * detail::ScalarOps<T>::from_double_like(a.value(), 1.0 / fact);
  }
  return a.compose_series(series);
}

template <class T>
JetT<T> s_ln(const JetT<T>& a) {
  if (!(a.leading_value() > 0))
    throw DomainError("ln of non-positive jet value", a.leading_value());
  const T& v = a.value();
  T iv = s_recip(v);
  std::vector<T> series(a.order() + 1, s_ln(v));
  T p = iv;
  for (int k = 1; k <= a.order(); ++k) {
    double s = (k % 2 == 1) ? 1.0 : -1.0;
    series[k] = p * detail::ScalarOps<T>::from_double_like(v, s / k);
    p = p * iv;
  }
  return a.compose_series(series);
}

template <class T>
JetT<T> s_pow(const JetT<T>& a, double e) {
  if (!(a.leading_value() > 0))
    throw DomainError("power of non-positive jet value", a.leading_value());
  const T& v = a.value();
  std::vector<T> series(a.order() + 1, s_pow(v, e));
  double binom = 1.0;
  for (int k = 1; k <= a.order(); ++k) {
    binom *= (e - (k - 1)) / k;
    series[k] = s_pow(v, e - k) * detail::ScalarOps<T>::from_double_like(v, binom);
  }
  return a.compose_series(series);
}

template <class T>
JetT<T> s_powi(const JetT<T>& a, long n) {
  if (n < 0) return s_recip(s_powi(a, -n));
  JetT<T> r = a.from_double_like(1.0);
  JetT<T> b = a;
  for (long k = n; k > 0; k >>= 1) {
    if (k & 1) r = r * b;
    if (k > 1) b = b * b;
  }
  return r;
}

template <class T>
JetT<T> s_sqrt(const JetT<T>& a) {
  return s_pow(a, 0.5);
}

template <class T>
JetT<T> s_sin(const JetT<T>& a) {
  T sv = s_sin(a.value()), cv = s_cos(a.value());
  std::vector<T> series(a.order() + 1, sv);
  double fact = 1.0;
  for (int k = 1; k <= a.order(); ++k) {
    fact *= k;
    const T& base = (k % 2 == 1) ? cv : sv;
    double s = (k % 4 == 2 || k % 4 == 3) ? -1.0 : 1.0;
    series[k] = base * detail::ScalarOps<T>::from_double_like(sv, s / fact);
  }
  return a.compose_series(series);
}

template <class T>
JetT<T> s_cos(const JetT<T>& a) {
  T sv = s_sin(a.value()), cv = s_cos(a.value());
  std::vector<T> series(a.order() + 1, cv);
  double fact = 1.0;
  for (int k = 1; k <= a.order(); ++k) {
    fact *= k;
    const T& base = (k % 2 == 1) ? sv : cv;
    double s = (k % 4 == 1 || k % 4 == 2) ? -1.0 : 1.0;
    series[k] = base * detail::ScalarOps<T>::from_double_like(cv, s / fact);
  }
  return a.compose_series(series);
}

template <class T>
JetT<T> s_atan(const JetT<T>& a) {
  // d/ds atan(v+s) = 1 / (1 + (v+s)^2); series of the reciprocal of the
  // quadratic w(s) = (1+v^2) + 2vs + s^2, then integrate term by term.
  const T& v = a.value();
  T one = detail::ScalarOps<T>::one_like(v);
  T w0 = one + v * v;
  T iw0 = s_recip(w0);
  T w1 = v * detail::ScalarOps<T>::from_double_like(v, 2.0);
  int n = a.order();
  std::vector<T> rec(std::max(n, 1), iw0);
  for (int j = 1; j < n; ++j) {
    T acc = w1 * rec[j - 1];
    if (j >= 2) acc = acc + rec[j - 2];
    rec[j] = -(acc * iw0);
  }
  std::vector<T> series(n + 1, s_atan(v));
  for (int k = 1; k <= n; ++k)
    series[k] = rec[k - 1] * detail::ScalarOps<T>::from_double_like(v, 1.0 / k);
  return a.compose_series(series);
}

template <class T>
JetT<T> s_abs(const JetT<T>& a) {
  double lead = a.leading_value();
  if (std::fabs(lead) < 1e-12)
    throw DomainError("abs of a jet at a degenerate (near-zero) point", lead);
  return lead > 0 ? a : -a;
}

}  // namespace fbh

#endif
