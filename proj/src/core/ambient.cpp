#include "core/ambient.hpp"

#include <cmath>

namespace fbh {

std::map<std::string, double> ambient_var_map(int n, std::span<const double> p) {
  std::map<std::string, double> vars;
  for (int i = 0; i + 1 < n; ++i) vars["x" + std::to_string(i + 1)] = p[i];
  if (n <= 9) vars["x" + std::to_string(n)] = p[n - 1];
  vars["z"] = p[n - 1];
  return vars;
}

EvalEnv<Jet> ambient_jet_env(const ConformalSpace& space, std::span<const double> p, int order) {
  auto js = JetSpace::get(space.n, order);
  EvalEnv<Jet> env;
  env.bindings = &space.params;
  env.exemplar = Jet::constant(js, 0.0);
  for (int i = 0; i < space.n; ++i) {
    Jet s = Jet::seed_value(js, i, p[i]);
    if (i + 1 < space.n) env.vars["x" + std::to_string(i + 1)] = s;
    if (i + 1 == space.n) {
      env.vars["z"] = s;
      if (space.n <= 9) env.vars["x" + std::to_string(space.n)] = s;
    }
  }
  return env;
}

Jet ConformalSpace::sigma_jet(std::span<const double> p, int order) const {
  auto env = ambient_jet_env(*this, p, order);
  return evaluate(sigma, env);
}

double ConformalSpace::sigma_at(std::span<const double> p) const {
  return evaluate_real(sigma, params, ambient_var_map(n, p));
}

bool ConformalSpace::admissible(std::span<const double> p) const {
  try {
    auto vars = ambient_var_map(n, p);
    for (const auto& g : domain_guards)
      if (!(evaluate_real(g, params, vars) > 0)) return false;
    double s = evaluate_real(sigma, params, vars);
    return s > 1e-8 && std::isfinite(s);
  } catch (const Error&) {
    return false;
  }
}

ConformalSpace ConformalSpace::flat(int n) {
  return make(n, Expr::number(1.0));
}

ConformalSpace ConformalSpace::make(int n, Expr sigma, Bindings params,
                                    std::vector<Expr> guards) {
  ConformalSpace s;
  s.n = n;
  s.sigma = std::move(sigma);
  s.params = std::move(params);
  s.domain_guards = std::move(guards);
  return s;
}

double CurvatureData::h(std::span<const double> u, std::span<const double> v) const {
  double s = 0;
  for (int i = 0; i < n; ++i) s += u[i] * v[i];
  return h_scale * s;
}

CurvatureData curvature_at(const ConformalSpace& space, std::span<const double> p) {
  const int n = space.n;
  Jet sj = space.sigma_jet(p, 3);
  double sv = sj.value();
  if (!(sv > 0)) throw DomainError("conformal factor not positive at sample point", sv);

  // psi = -ln sigma, so h = e^{2 psi} h_0 and
  // Gamma^k_{ij} = d^k_i psi_j + d^k_j psi_i - d_ij psi_k.
  Jet psi = -s_ln(sj);
  std::vector<double> dpsi(n), d2psi(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    MultiIndex mi{std::vector<int>(n, 0)};
    mi.exponents[i] = 1;
    dpsi[i] = psi.coeff(mi);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      MultiIndex mi{std::vector<int>(n, 0)};
      mi.exponents[i] += 1;
      mi.exponents[j] += 1;
      double c = psi.coeff(mi);
      d2psi[static_cast<std::size_t>(i) * n + j] = (i == j) ? 2.0 * c : c;
    }

  CurvatureData out;
  out.n = n;
  out.point.assign(p.begin(), p.end());
  out.sigma = sv;
  out.h_scale = 1.0 / (sv * sv);
  out.christoffel.assign(static_cast<std::size_t>(n) * n * n, 0.0);
  auto G = [&](int k, int i, int j) -> double& {
    return out.christoffel[(static_cast<std::size_t>(k) * n + i) * n + j];
  };
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        G(k, i, j) = (k == i ? dpsi[j] : 0.0) + (k == j ? dpsi[i] : 0.0) -
                     (i == j ? dpsi[k] : 0.0);

  // dGamma^l_{jk} / dx_i from second derivatives of psi
  auto dG = [&](int i, int l, int j, int k) {
    auto pp = [&](int a, int b) { return d2psi[static_cast<std::size_t>(a) * n + b]; };
    return (l == j ? pp(k, i) : 0.0) + (l == k ? pp(j, i) : 0.0) - (j == k ? pp(l, i) : 0.0);
  };

  // R^l_{ijk}: component of R(d_i, d_j) d_k, R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y]
  std::vector<double> rup(static_cast<std::size_t>(n) * n * n * n);
  auto RU = [&](int l, int i, int j, int k) -> double& {
    return rup[((static_cast<std::size_t>(l) * n + i) * n + j) * n + k];
  };
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double v = dG(i, l, j, k) - dG(j, l, i, k);
          for (int a = 0; a < n; ++a)
            v += G(l, i, a) * G(a, j, k) - G(l, j, a) * G(a, i, k);
          RU(l, i, j, k) = v;
        }

  out.riemann.assign(static_cast<std::size_t>(n) * n * n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          out.riemann[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l] =
              out.h_scale * RU(l, i, j, k);

  out.ricci.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double v = 0;
      for (int a = 0; a < n; ++a) v += RU(a, a, j, k);
      out.ricci[static_cast<std::size_t>(j) * n + k] = v;
    }
  return out;
}

double sectional_from(const CurvatureData& c, std::span<const double> Xin,
                      std::span<const double> Yin) {
  const int n = c.n;
  std::vector<double> X(Xin.begin(), Xin.end()), Y(Yin.begin(), Yin.end());
  double nx = std::sqrt(c.h(X, X));
  if (nx < 1e-150) throw DegeneratePlaneError("sectional: X vanishes");
  for (auto& v : X) v /= nx;
  double xy = c.h(X, Y);
  for (int i = 0; i < n; ++i) Y[i] -= xy * X[i];
  double ny2 = c.h(Y, Y);
  double nyin2 = c.h(Yin, Yin);
  if (ny2 < 1e-12 * std::max(1e-300, nyin2))
    throw DegeneratePlaneError("sectional: X and Y do not span a 2-plane");
  double ny = std::sqrt(ny2);
  for (auto& v : Y) v /= ny;
  // K = h(R(X,Y)Y, X) for h-orthonormal X, Y
  double K = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          K += X[i] * Y[j] * Y[k] * X[l] * c.riem(i, j, k, l);
  return K;
}

double sectional(const ConformalSpace& space, std::span<const double> p,
                 std::span<const double> X, std::span<const double> Y) {
  return sectional_from(curvature_at(space, p), X, Y);
}

double sectional_conformal_frame(const ConformalSpace& space, std::span<const double> p,
                                 std::span<const double> Xf, std::span<const double> Yf) {
  const int n = space.n;
  Jet sj = space.sigma_jet(p, 2);
  double s = sj.value();
  double K = 0;
  for (int i = 0; i < n; ++i) {
    MultiIndex mi{std::vector<int>(n, 0)};
    mi.exponents[i] = 1;
    double si = sj.coeff(mi);
    K -= si * si;
    for (int j = 0; j < n; ++j) {
      MultiIndex mij{std::vector<int>(n, 0)};
      mij.exponents[i] += 1;
      mij.exponents[j] += 1;
      double sij = sj.coeff(mij) * (i == j ? 2.0 : 1.0);
      K += (Xf[i] * Xf[j] + Yf[i] * Yf[j]) * s * sij;
    }
  }
  return K;
}

double ricci_normal_umbilical(const ConformalSpace& space, std::span<const double> xi0,
                              std::span<const double> p) {
  const int n = space.n;
  const int m = n - 1;
  Jet sj = space.sigma_jet(p, 2);
  double s = sj.value();
  if (!(s > 0)) throw DomainError("conformal factor not positive at sample point", s);
  double lap = 0, grad2 = 0, hess_xi = 0;
  for (int i = 0; i < n; ++i) {
    MultiIndex mi{std::vector<int>(n, 0)};
    mi.exponents[i] = 1;
    double si = sj.coeff(mi);
    grad2 += si * si;
    for (int j = 0; j < n; ++j) {
      MultiIndex mij{std::vector<int>(n, 0)};
      mij.exponents[i] += 1;
      mij.exponents[j] += 1;
      double sij = sj.coeff(mij) * (i == j ? 2.0 : 1.0);
      if (i == j) lap += sij;
      hess_xi += xi0[i] * xi0[j] * sij;
    }
  }
  return s * lap - m * grad2 + (m - 1) * s * hess_xi;
}

}  // namespace fbh
