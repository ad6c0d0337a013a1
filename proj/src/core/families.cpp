#include "core/families.hpp"

#include <cmath>

namespace fbh {

namespace {

double fact(int k) {
  double f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

double partial(const Jet& j, const std::vector<int>& exps) {
  MultiIndex mi{exps};
  double mult = 1;
  for (int e : exps) mult *= fact(e);
  return j.coeff(mi) * mult;
}

double partial1(const Jet& j, int a) {
  std::vector<int> e(j.n_vars(), 0);
  e[a] = 1;
  return partial(j, e);
}

double partial2(const Jet& j, int a, int b) {
  std::vector<int> e(j.n_vars(), 0);
  e[a] += 1;
  e[b] += 1;
  return partial(j, e);
}

double partial3(const Jet& j, int a, int b, int c) {
  std::vector<int> e(j.n_vars(), 0);
  e[a] += 1;
  e[b] += 1;
  e[c] += 1;
  return partial(j, e);
}

double floor1(double v) { return std::max(1.0, v); }

Expr chart_var(int i) { return Expr::variable("x" + std::to_string(i)); }

Expr plane_offset_expr(std::span<const double> a, int m) {
  Expr e = Expr::number(a[m]);
  for (int i = 0; i < m; ++i) e = e + Expr::number(a[i]) * chart_var(i + 1);
  return e;
}

}  // namespace

// ---- reduced equations -----------------------------------------------------

OdeResidual ode_residual(ReducedEq eq, const Expr& beta, std::span<const double> point,
                         const Bindings& bindings, int m) {
  OdeResidual out;
  switch (eq) {
    case ReducedEq::PQ1: {
      if (point.size() != 1) throw UsageError("PQ1 expects a univariate beta(z)");
      auto it = bindings.params.find("km2");
      if (it == bindings.params.end())
        throw UsageError("PQ1 needs the parameter km2 = k_m^2");
      double k2 = it->second;
      auto js = JetSpace::get(1, 3);
      EvalEnv<Jet> env;
      env.bindings = &bindings;
      env.exemplar = Jet::constant(js, 0.0);
      env.vars["z"] = Jet::seed_value(js, 0, point[0]);
      Jet bj = evaluate(beta, env);
      double b0 = bj.value(), b1 = bj.coeff(1), b2 = bj.coeff(2) * 2.0, b3 = bj.coeff(3) * 6.0;
      double t1 = m * (1 + k2) * b1 * b1 * b1 * b1;
      double t2 = 0.5 * ((m * m - 2 * m + 2) * (1 - k2) - 2 * m) * b0 * b1 * b1 * b2;
      double t3 = -0.5 * (m - 2) * (1 - k2) * b0 * b0 * b1 * b3;
      double t4 = -0.25 * (m - 2) * (m - 4) * (1 - k2) * b0 * b0 * b2 * b2;
      out.raw = t1 + t2 + t3 + t4;
      out.normalizer =
          floor1(std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(t4));
      return out;
    }
    case ReducedEq::pq01:
    case ReducedEq::pOP2: {
      if (point.size() != 1)
        throw UsageError("the separable operator expects a univariate expression");
      std::set<std::string> vars, params;
      beta.free_identifiers(vars, params);
      if (vars.size() != 1)
        throw UsageError("the separable operator expects exactly one free variable");
      auto js = JetSpace::get(1, 2);
      EvalEnv<Jet> env;
      env.bindings = &bindings;
      env.exemplar = Jet::constant(js, 0.0);
      env.vars[*vars.begin()] = Jet::seed_value(js, 0, point[0]);
      Jet uj = evaluate(beta, env);
      double u0 = uj.value(), u1 = uj.coeff(1), u2 = uj.coeff(2) * 2.0;
      double t1 = u0 * u2, t2 = -2.0 * u1 * u1;
      out.raw = t1 + t2;
      out.normalizer = floor1(std::abs(t1) + std::abs(t2));
      return out;
    }
    case ReducedEq::pc1:
    case ReducedEq::ppc1: {
      if (eq == ReducedEq::ppc1) m = 2;
      int n = m + 1;
      if (static_cast<int>(point.size()) != n)
        throw UsageError("pc1/ppc1 expects a point (x_1..x_m, z)");
      ConformalSpace tmp = ConformalSpace::make(n, beta, bindings);
      Jet bj = tmp.sigma_jet(point, 3);
      double b0 = bj.value();
      int zi = n - 1;
      double bz = partial1(bj, zi);
      double A = 0, sumA = 0;
      for (int i = 0; i < m; ++i) {
        double bi = partial1(bj, i);
        double bii = partial2(bj, i, i);
        A += b0 * bii - m * bi * bi;
        sumA += std::abs(b0 * bii) + std::abs(m * bi * bi);
      }
      double bzz = partial2(bj, zi, zi);
      double B = m * (b0 * bzz - 2.0 * bz * bz);
      if (eq == ReducedEq::ppc1) {
        // surface case: sum_i (b b_ii - 2 b_i^2) + 2 (b b_zz - 2 b_z^2)
        A = 0;
        sumA = 0;
        for (int i = 0; i < 2; ++i) {
          double bi = partial1(bj, i);
          double bii = partial2(bj, i, i);
          A += b0 * bii - 2.0 * bi * bi;
          sumA += std::abs(b0 * bii) + std::abs(2.0 * bi * bi);
        }
        B = 2.0 * (b0 * bzz - 2.0 * bz * bz);
        out.raw = A + B;
        out.normalizer = floor1(sumA + std::abs(B));
        return out;
      }
      if (std::abs(bz) < 1e-12)
        throw DomainError("pc1 residual needs beta_z != 0", bz);
      double C = 0, D = 0;
      for (int i = 0; i < m; ++i) {
        double bi = partial1(bj, i);
        double biz = partial2(bj, i, zi);
        double biiz = partial3(bj, i, i, zi);
        C += b0 * b0 * biiz - (m - 2) * b0 * bi * biz;
        D += b0 * b0 * biz * biz;
      }
      C *= (m - 2) / (2.0 * bz);
      D *= (m - 2) * (m - 4) / (4.0 * bz * bz);
      out.raw = A + B + C + D;
      out.normalizer = floor1(sumA + std::abs(B) + std::abs(C) + std::abs(D));
      return out;
    }
  }
  throw Error("unreachable reduced equation");
}

// ---- exact ansatz reduction ------------------------------------------------

namespace {

// a term of the substituted equation: rational coefficient and the
// derivative order of each beta factor in the product
struct AnsatzTerm {
  Rational coeff;
  std::vector<int> orders;
};

struct TermSum {
  Poly poly;
  Rational exp_t, exp_c;  // base exponent (exp_t * t + exp_c) shared by all terms
};

// Substitute beta = base^t: a factor beta^{(j)} becomes falling(j) * base^{t-j}.
// divisor removes the common beta_z power an equation group carries.
TermSum sum_terms(const std::vector<AnsatzTerm>& terms, const Rational& divide_orders_sum,
                  int divide_order_count, const Poly& divisor) {
  TermSum out;
  out.poly = Poly::zero();
  bool have_exp = false;
  for (const auto& term : terms) {
    Poly p = Poly::constant(term.coeff);
    Rational orders_sum(0);
    for (int o : term.orders) {
      p = p * Poly::falling(o);
      orders_sum += Rational(o);
    }
    Rational et = Rational(static_cast<std::int64_t>(term.orders.size())) -
                  Rational(divide_order_count);
    Rational ec = -(orders_sum - divide_orders_sum);
    if (!have_exp) {
      out.exp_t = et;
      out.exp_c = ec;
      have_exp = true;
    } else if (et != out.exp_t || ec != out.exp_c) {
      throw Error("ansatz reduction: terms carry different base exponents");
    }
    out.poly = out.poly + p;
  }
  out.poly = out.poly.divide_exact(divisor);
  return out;
}

AnsatzReduction finish_reduction(Poly total, const Rational& m, int strip, const Rational& exp_t,
                                 const Rational& exp_c) {
  AnsatzReduction out;
  total = total.strip_power(strip);  // drop the constant-beta root multiplicity
  if (total.degree() != 2) throw Error("ansatz reduction did not produce a quadratic");
  // canonical presentation: scale so the leading coefficient is m^2 + 4
  Rational target = m * m + Rational(4);
  Poly quad = total.scaled(target / total.leading());
  out.a = quad.coeff(2);
  out.b = quad.coeff(1);
  out.c = quad.coeff(0);
  out.derived = total;
  out.z_exp_tcoef = exp_t;
  out.z_exp_const = exp_c;
  Rational disc = out.b * out.b - Rational(4) * out.a * out.c;
  auto s = disc.sqrt_exact();
  if (!s) throw Error("ansatz reduction: discriminant is not a perfect square");
  Rational r1 = (-out.b - *s) / (Rational(2) * out.a);
  Rational r2 = (-out.b + *s) / (Rational(2) * out.a);
  out.roots = r1 <= r2 ? std::make_pair(r1, r2) : std::make_pair(r2, r1);
  return out;
}

}  // namespace

AnsatzReduction ansatz_reduce(AnsatzEq eq, const Rational& m) {
  if (m < Rational(2)) throw UsageError("ansatz reduction needs m >= 2");
  Rational one(1);
  Poly unit = Poly::constant(Rational(1));
  if (eq == AnsatzEq::PQ1Power) {
    Rational k2 = one / (m + 1);
    std::vector<AnsatzTerm> terms;
    // m (1 + k^2) beta'^4
    terms.push_back({m * (one + k2), {1, 1, 1, 1}});
    // ((m^2 - 2m + 2)(1 - k^2) - 2m)/2  beta beta'^2 beta''
    terms.push_back({((m * m - 2 * m + 2) * (one - k2) - 2 * m) / Rational(2), {0, 1, 1, 2}});
    // -(m-2)(1-k^2)/2  beta^2 beta' beta'''
    terms.push_back({-(m - 2) * (one - k2) / Rational(2), {0, 0, 1, 3}});
    // -(m-2)(m-4)(1-k^2)/4  beta^2 beta''^2
    terms.push_back({-(m - 2) * (m - 4) * (one - k2) / Rational(4), {0, 0, 2, 2}});
    TermSum s = sum_terms(terms, Rational(0), 0, unit);
    return finish_reduction(s.poly, m, /*strip=*/2, s.exp_t, s.exp_c);
  }
  // pc1 with beta = (sum x_i + z + C)^t; the i-sums contribute a factor m,
  // and the third and fourth groups are divided by the beta_z power they
  // carry (beta_z = P_1 base^{t-1} under the ansatz).
  Rational m2 = m - 2, m4 = m - 4;
  std::vector<AnsatzTerm> low = {
      {m, {0, 2}}, {-m * m, {1, 1}},   // sum_i (beta beta_ii - m beta_i^2)
      {m, {0, 2}}, {-2 * m, {1, 1}},   // m (beta beta_zz - 2 beta_z^2)
  };
  std::vector<AnsatzTerm> over_bz = {
      {m2 * m / Rational(2), {0, 0, 3}},            // (m-2)/2 beta^2 beta_iiz
      {-m2 * m2 * m / Rational(2), {0, 1, 2}},      // -(m-2)^2/2 beta beta_i beta_iz
  };
  std::vector<AnsatzTerm> over_bz2 = {
      {m2 * m4 * m / Rational(4), {0, 0, 2, 2}},    // (m-2)(m-4)/4 beta^2 beta_iz^2
  };
  TermSum s0 = sum_terms(low, Rational(0), 0, unit);
  TermSum s1 = sum_terms(over_bz, Rational(1), 1, Poly::falling(1));
  TermSum s2 = sum_terms(over_bz2, Rational(2), 2, Poly::falling(1) * Poly::falling(1));
  if (s0.exp_t != s1.exp_t || s0.exp_c != s1.exp_c || s0.exp_t != s2.exp_t ||
      s0.exp_c != s2.exp_c)
    throw Error("pc1 ansatz: exponent mismatch across term groups");
  return finish_reduction(s0.poly + s1.poly + s2.poly, m, 0, s0.exp_t, s0.exp_c);
}

std::string AnsatzReduction::equation_line() const {
  auto signed_str = [](const Rational& r) {
    return (r.sign() < 0 ? "" : "+") + r.str();
  };
  std::string line = a.str() + "t^2" + signed_str(b) + "t" + signed_str(c) + "=0; t=" +
                     roots.first.str() + ", t=" + roots.second.str();
  return line;
}

// ---- hyperplane reduction of the umbilical identity -------------------------

HyperplaneReduction hyperplane_reduction_residual(const ConformalSpace& space, const ImmersionChart& chart,
                         std::span<const double> x) {
  if (!chart.is_hyperplane)
    throw UsageError("the hyperplane reduction residual needs a hyperplane chart");
  const int m = chart.m;
  const int n = space.n;
  const auto& a = chart.plane_a;
  double suma2 = 0;
  for (int i = 0; i < m; ++i) suma2 += a[i] * a[i];
  double k = 1.0 / std::sqrt(1.0 + suma2);
  std::vector<double> xi0(n, 0.0);
  for (int i = 0; i < m; ++i) xi0[i] = -a[i] * k;
  xi0[n - 1] = k;

  std::vector<double> p = chart.map_point(x);
  Jet sj = space.sigma_jet(p, 3);
  double b0 = sj.value();

  // H = xi0(beta) as an ambient function, kept to second order
  Jet Hj = sj.derivative(n - 1).truncated(2) * k;
  for (int i = 0; i < m; ++i) Hj = Hj - sj.derivative(i).truncated(2) * (a[i] * k);
  double Hv = Hj.value();
  if (std::abs(Hv) < 1e-12)
    throw DomainError("the hyperplane reduction residual needs H != 0", Hv);
  Jet absH = s_abs(Hj);

  // left side: the Ricci closed form in Euclidean partials of beta
  double A1 = 0, A3num = 0;
  for (int i = 0; i < m; ++i) {
    double bi = partial1(sj, i);
    A1 += b0 * partial2(sj, i, i) - m * bi * bi;
  }
  double bz = partial1(sj, n - 1);
  double bzz = partial2(sj, n - 1, n - 1);
  double A2 = b0 * bzz - m * bz * bz;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) A3num += a[i] * a[j] * b0 * partial2(sj, i, j);
  for (int i = 0; i < m; ++i) A3num -= 2.0 * a[i] * b0 * partial2(sj, i, n - 1);
  A3num += b0 * bzz;
  double A3 = (m - 1) * A3num / (1.0 + suma2);

  // right side pieces
  double lap_absH = 0, xi0_absH = 0, xi0xi0_absH = 0, gradb_absH = 0;
  double grad_H_sq = 0, xi0_H = 0;
  for (int aa = 0; aa < n; ++aa) {
    double dH = partial1(Hj, aa);
    double dAbs = partial1(absH, aa);
    lap_absH += partial2(absH, aa, aa);
    xi0_absH += xi0[aa] * dAbs;
    gradb_absH += partial1(sj, aa) * dAbs;
    grad_H_sq += dH * dH;
    xi0_H += xi0[aa] * dH;
    for (int bb = 0; bb < n; ++bb) xi0xi0_absH += xi0[aa] * xi0[bb] * partial2(absH, aa, bb);
  }
  double B1 = m * Hv * Hv;
  double brace = b0 * b0 * lap_absH +
                 (m - 2) * b0 * (Hv * xi0_absH - gradb_absH) - b0 * b0 * xi0xi0_absH;
  double B2 = -0.5 * (m - 2) / std::abs(Hv) * brace;
  double B3 = -0.25 * (m - 2) * (m - 4) / (Hv * Hv) * b0 * b0 * (grad_H_sq - xi0_H * xi0_H);

  HyperplaneReduction out;
  out.H = Hv;
  out.raw = (A1 + A2 + A3) - (B1 + B2 + B3);
  out.normalizer = floor1(std::abs(A1) + std::abs(A2) + std::abs(A3) + std::abs(B1) +
                          std::abs(B2) + std::abs(B3));
  out.ric_closed_form = A1 + A2 + A3;
  // the intrinsic Laplacian and gradient of |H| in ambient form
  out.lap_g_absH = b0 * b0 * lap_absH - (m - 2) * b0 * gradb_absH + m * Hv * b0 * xi0_absH -
                   b0 * b0 * xi0xi0_absH - 2.0 * b0 * Hv * xi0_absH;
  out.grad_g_absH_sq = b0 * b0 * grad_H_sq - b0 * b0 * xi0_H * xi0_H;
  return out;
}

// ---- catalog ----------------------------------------------------------------

std::vector<std::string> family_names() {
  return {"tr1",         "tr4",          "pqe1_i",     "pqe1_ii",
          "pc2_i",       "pc2_ii",       "tr6_sphere_slice", "cylinder_cs",
          "flat_plane",  "sphere_slice_biharmonic",    "m4_biharmonic"};
}

namespace {

struct ParamReader {
  std::map<std::string, double> user;
  std::map<std::string, double> resolved;

  double get(const std::string& name, double defval) {
    auto it = user.find(name);
    double v = it != user.end() ? it->second : defval;
    resolved[name] = v;
    return v;
  }
  double get_positive(const std::string& name, double defval) {
    double v = get(name, defval);
    if (!(v > 0)) throw ConstraintError("parameter " + name + " must be positive");
    return v;
  }
};

std::vector<double> plane_coeffs(ParamReader& pr, int m, double ai_default, double off_default) {
  std::vector<double> a(m + 1, 0.0);
  for (int i = 0; i < m; ++i) a[i] = pr.get("a" + std::to_string(i + 1), ai_default);
  a[m] = pr.get("a" + std::to_string(m + 1), off_default);
  return a;
}

Rational power_root(int m) { return Rational(m * m - 2 * m, m * m + 4); }

Expr sum_xi(int m) {
  Expr e = chart_var(1);
  for (int i = 2; i <= m; ++i) e = e + chart_var(i);
  return e;
}

}  // namespace

FamilySpec catalog(const std::string& name, int m, const std::map<std::string, double>& params) {
  ParamReader pr{params, {}};
  FamilySpec fs;
  fs.name = name;
  fs.m = m;
  if (m < 1 || m > 9) throw ConstraintError("family catalog supports 1 <= m <= 9");
  const Expr z = Expr::variable("z");

  if (name == "flat_plane") {
    auto a = plane_coeffs(pr, m, 0.0, 1.0);
    fs.space = ConformalSpace::flat(m + 1);
    fs.chart = ImmersionChart::hyperplane(m, a);
    fs.f = Expr::number(1.0);
    fs.expected = VerdictKind::TotallyGeodesic;
    fs.default_box = Box::cube(m, -2.0, 2.0);
  } else if (name == "tr1") {
    if (m != 2) throw ConstraintError("tr1 is a surface family (m = 2)");
    pr.get_positive("c", 1.0);
    pr.get_positive("c1", 1.0);
    pr.get_positive("c2", 1.0);
    auto a = plane_coeffs(pr, 2, 1.0, 2.0);
    for (int i = 0; i < 3; ++i)
      if (!(a[i] > 0)) throw ConstraintError("tr1 needs positive a1, a2, a3");
    Expr sigma = Expr::number(1.0) / (Expr::parameter("c1") * z + Expr::parameter("c2"));
    fs.space = ConformalSpace::make(m + 1, sigma, {}, {z, Expr::parameter("c1") * z + Expr::parameter("c2")});
    fs.chart = ImmersionChart::hyperplane(2, a);
    double suma2 = a[0] * a[0] + a[1] * a[1];
    Expr zsub = plane_offset_expr(a, 2);
    fs.f = Expr::parameter("c") * Expr::number(std::sqrt(1.0 + suma2)) /
           Expr::parameter("c1") *
           Expr::pow(Expr::parameter("c1") * zsub + Expr::parameter("c2"), Rational(2));
    fs.expected = VerdictKind::FBiharmonicProper;
    fs.default_box = Box::cube(2, -2.0, 2.0);
  } else if (name == "tr4") {
    if (m != 2) throw ConstraintError("tr4 is a surface family (m = 2)");
    pr.get_positive("c", 1.0);
    pr.get_positive("c1", 1.0);
    pr.get_positive("c2", 1.0);
    pr.get_positive("c3", 1.0);
    pr.get_positive("c4", 1.0);
    double a3 = pr.get_positive("a3", 1.0);
    Expr px = Expr::parameter("c1") * Expr::variable("x1") + Expr::parameter("c2");
    Expr qz = Expr::parameter("c3") * z + Expr::parameter("c4");
    Expr sigma = Expr::number(1.0) / (px * qz);
    fs.space = ConformalSpace::make(m + 1, sigma, {}, {z, px, qz});
    std::vector<double> a = {0.0, 0.0, a3};
    fs.chart = ImmersionChart::hyperplane(2, a);
    // the admissible weight c/|d sigma/dz| restricted to the slice z = a3
    Expr c3a3c4 = Expr::parameter("c3") * Expr::number(a3) + Expr::parameter("c4");
    fs.f = Expr::parameter("c") * Expr::pow(c3a3c4, Rational(2)) / Expr::parameter("c3") *
           (Expr::parameter("c1") * chart_var(1) + Expr::parameter("c2"));
    fs.expected = VerdictKind::FBiharmonicProper;
    fs.default_box = Box::cube(2, -0.5, 2.5);
  } else if (name == "pqe1_i" || name == "pqe1_ii") {
    bool second = name == "pqe1_ii";
    if (second && (m < 3 || m == 4))
      throw ConstraintError("pqe1_ii needs m >= 3, m != 4");
    if (!second && (m < 2 || m == 4)) throw ConstraintError("pqe1_i needs m >= 2, m != 4");
    pr.get_positive("c", 1.0);
    auto a = plane_coeffs(pr, m, 1.0, 1.0);
    double suma2 = 0;
    for (int i = 0; i < m; ++i) suma2 += a[i] * a[i];
    if (std::abs(suma2 - m) > 1e-12)
      throw ConstraintError("pqe1 needs sum a_i^2 = m");
    Rational t = second ? power_root(m) : Rational(-1);
    Expr sigma = Expr::pow(z, t);
    fs.space = ConformalSpace::make(m + 1, sigma, {}, {z});
    fs.chart = ImmersionChart::hyperplane(m, a);
    Expr zsub = plane_offset_expr(a, m);
    if (!second) {
      double lead = std::pow(m + 1.0, (4.0 - m) / 4.0);
      fs.f = Expr::parameter("c") * Expr::number(lead) * Expr::pow(zsub, Rational(4 - m));
    } else {
      double tt = t.to_double();
      double lead = std::pow(tt * tt / (m + 1.0), (m - 4.0) / 4.0);
      Rational e = Rational((4 - m) * (m + 2), m * m + 4);
      fs.f = Expr::parameter("c") * Expr::number(lead) * Expr::pow(zsub, e);
    }
    fs.expected = VerdictKind::FBiharmonicProper;
    fs.default_box = Box::cube(m, -2.0, 2.0);
  } else if (name == "pc2_i" || name == "pc2_ii") {
    bool second = name == "pc2_ii";
    if (second && (m < 3 || m == 4)) throw ConstraintError("pc2_ii needs m >= 3, m != 4");
    if (!second && (m < 2 || m == 4)) throw ConstraintError("pc2_i needs m >= 2, m != 4");
    pr.get_positive("c", 1.0);
    double C = pr.get("C", 0.25);
    if (C < 0) throw ConstraintError("pc2 needs C >= 0");
    double off = pr.get_positive("a" + std::to_string(m + 1), 0.25);
    Rational t = second ? power_root(m) : Rational(-1);
    Expr s_amb = sum_xi(m) + z + Expr::parameter("C");
    Expr sigma = Expr::pow(s_amb, t);
    std::vector<Expr> guards = {s_amb, z};
    for (int i = 1; i <= m; ++i) guards.push_back(chart_var(i));
    Bindings sp;
    sp.params["C"] = C;
    fs.space = ConformalSpace::make(m + 1, sigma, sp, guards);
    std::vector<double> a(m + 1, 0.0);
    a[m] = off;
    fs.chart = ImmersionChart::hyperplane(m, a);
    Expr s_chart = sum_xi(m) + Expr::number(off) + Expr::parameter("C");
    if (!second) {
      fs.f = Expr::parameter("c") * Expr::pow(s_chart, Rational(4 - m));
    } else {
      double lead = std::pow(t.to_double(), (m - 4.0) / 2.0);
      Rational e = Rational((4 - m) * (m + 2), m * m + 4);
      fs.f = Expr::parameter("c") * Expr::number(lead) * Expr::pow(s_chart, e);
    }
    fs.expected = VerdictKind::FBiharmonicProper;
    // keep sum x_i + z + C order one for every m, where the residual signal lives
    fs.default_box = Box::cube(m, 0.05, 0.05 + 1.8 / m);
  } else if (name == "tr6_sphere_slice") {
    if (m != 2) throw ConstraintError("tr6_sphere_slice is a surface family (m = 2)");
    double k = pr.get("k", 6.0);
    if (k < 6.0) throw ConstraintError("tr6 needs k >= 6");
    Expr x = Expr::variable("x1");
    Expr y = Expr::variable("x2");
    Expr r2 = Expr::number(1.0) + Expr::pow(x, Rational(2)) + Expr::pow(y, Rational(2));
    Expr r = Expr::unary(Expr::UnaryFn::Sqrt, r2);
    Expr z2 = Expr::pow(z, Rational(2));
    Expr den = Expr::parameter("k") * r * r2 * (r2 + z2) - Expr::number(2.0) * r * z -
               Expr::number(2.0) * (r2 + z2) * Expr::unary(Expr::UnaryFn::Atan, z / r);
    Expr beta = Expr::number(2.0) * r * r2 / den;
    Expr sigma = beta * (r2 + z2) / Expr::number(2.0);
    fs.space = ConformalSpace::make(3, sigma, {}, {den});
    std::vector<double> a = {0.0, 0.0, 0.0};
    fs.chart = ImmersionChart::hyperplane(2, a);
    Expr fr2 = Expr::number(1.0) + Expr::pow(chart_var(1), Rational(2)) +
               Expr::pow(chart_var(2), Rational(2));
    fs.f = Expr::pow(Expr::parameter("k"), Rational(2)) * Expr::pow(fr2, Rational(2)) /
           Expr::number(4.0);
    fs.expected = VerdictKind::FBiharmonicProper;
    fs.default_box = Box::cube(2, -0.7, 0.7);
  } else if (name == "cylinder_cs") {
    if (m != 2) throw ConstraintError("cylinder_cs is a surface family (m = 2)");
    pr.get_positive("R", 1.0);
    fs.space = ConformalSpace::flat(3);
    Expr u = chart_var(1) / Expr::parameter("R");
    std::vector<Expr> comps = {Expr::parameter("R") * Expr::unary(Expr::UnaryFn::Sin, u),
                               Expr::parameter("R") * Expr::unary(Expr::UnaryFn::Cos, u),
                               chart_var(2)};
    fs.chart = ImmersionChart::general(2, comps);
    Expr w = chart_var(2) / Expr::parameter("R");
    fs.f = (Expr::unary(Expr::UnaryFn::Exp, w) + Expr::unary(Expr::UnaryFn::Exp, -w)) /
           Expr::number(2.0);
    fs.expected = VerdictKind::FBiharmonicProper;
    fs.default_box = Box::cube(2, -2.0, 2.0);
  } else if (name == "sphere_slice_biharmonic") {
    if (m != 2) throw ConstraintError("sphere_slice_biharmonic is a surface family (m = 2)");
    double z0 = pr.get("z0", 1.0);
    Expr sigma = (Expr::number(1.0) + Expr::pow(Expr::variable("x1"), Rational(2)) +
                  Expr::pow(Expr::variable("x2"), Rational(2)) + Expr::pow(z, Rational(2))) /
                 Expr::number(2.0);
    fs.space = ConformalSpace::make(3, sigma);
    std::vector<double> a = {0.0, 0.0, z0};
    fs.chart = ImmersionChart::hyperplane(2, a);
    fs.f = Expr::number(1.0);
    if (std::abs(z0) < 1e-12)
      fs.expected = VerdictKind::TotallyGeodesic;
    else if (std::abs(std::abs(z0) - 1.0) < 1e-12)
      fs.expected = VerdictKind::BiharmonicProper;
    else
      fs.expected = VerdictKind::NotFBiharmonic;
    fs.default_box = Box::cube(2, -2.0, 2.0);
  } else if (name == "m4_biharmonic") {
    if (m != 4) throw ConstraintError("m4_biharmonic lives in dimension m = 4");
    auto a = plane_coeffs(pr, 4, 1.0, 1.0);
    double suma2 = 0;
    for (int i = 0; i < 4; ++i) suma2 += a[i] * a[i];
    if (std::abs(suma2 - 4.0) > 1e-12)
      throw ConstraintError("m4_biharmonic needs sum a_i^2 = 4");
    fs.space = ConformalSpace::make(5, Expr::pow(z, Rational(2, 5)), {}, {z});
    fs.chart = ImmersionChart::hyperplane(4, a);
    fs.f = Expr::number(1.0);
    fs.expected = VerdictKind::BiharmonicProper;
    fs.default_box = Box::cube(4, -2.0, 2.0);
  } else {
    throw UsageError("unknown family '" + name + "'");
  }

  // every family parameter doubles as an expression binding
  Bindings all;
  for (const auto& [key, val] : pr.resolved) all.params[key] = val;
  for (const auto& [key, val] : fs.space.params.params) all.params[key] = val;
  fs.space.params = all;
  fs.chart.params = all;
  fs.resolved_params = pr.resolved;
  for (const auto& [key, val] : fs.space.params.params) fs.resolved_params[key] = val;
  return fs;
}

}  // namespace fbh
