#include "core/hypersurface.hpp"

#include <cmath>

namespace fbh {

namespace {

constexpr int kChartOrder = 2;  // enough for Laplacians of fH and |H| powers

double first_coeff(const Jet& j, int var) {
  return j.coeff(1 + var);  // graded-lex puts first-order slots right after the value
}

double second_coeff(const Jet& j, int a, int b) {
  MultiIndex mi{std::vector<int>(j.n_vars(), 0)};
  mi.exponents[a] += 1;
  mi.exponents[b] += 1;
  return j.coeff(mi) * (a == b ? 2.0 : 1.0);
}

}  // namespace

ImmersionChart ImmersionChart::hyperplane(int m, std::span<const double> a) {
  if (static_cast<int>(a.size()) != m + 1)
    throw ConstraintError("hyperplane needs m+1 coefficients a_1..a_{m+1}");
  ImmersionChart c;
  c.m = m;
  c.is_hyperplane = true;
  c.plane_a.assign(a.begin(), a.end());
  for (int i = 0; i < m; ++i) c.components.push_back(Expr::variable("x" + std::to_string(i + 1)));
  Expr last = Expr::number(a[m]);
  for (int i = 0; i < m; ++i)
    last = last + Expr::number(a[i]) * Expr::variable("x" + std::to_string(i + 1));
  c.components.push_back(last);
  return c;
}

ImmersionChart ImmersionChart::general(int m, std::vector<Expr> components, Bindings params) {
  if (static_cast<int>(components.size()) != m + 1)
    throw ConstraintError("immersion needs m+1 component expressions");
  ImmersionChart c;
  c.m = m;
  c.components = std::move(components);
  c.params = std::move(params);
  return c;
}

std::vector<double> ImmersionChart::map_point(std::span<const double> x) const {
  std::map<std::string, double> vars;
  for (int i = 0; i < m; ++i) vars["x" + std::to_string(i + 1)] = x[i];
  std::vector<double> p;
  p.reserve(components.size());
  for (const auto& e : components) p.push_back(evaluate_real(e, params, vars));
  return p;
}

Bindings merged_bindings(const ConformalSpace& space, const ImmersionChart& chart) {
  Bindings b = space.params;
  for (const auto& [k, v] : chart.params.params) b.params[k] = v;
  return b;
}

EvalEnv<Jet> chart_jet_env(const ImmersionChart& chart, const Bindings& merged,
                           std::span<const double> x, int order) {
  auto js = JetSpace::get(chart.m, order);
  EvalEnv<Jet> env;
  env.bindings = &merged;
  env.exemplar = Jet::constant(js, 0.0);
  for (int i = 0; i < chart.m; ++i)
    env.vars["x" + std::to_string(i + 1)] = Jet::seed_value(js, i, x[i]);
  return env;
}

ChartFrame chart_frame_at(const ConformalSpace& space, const ImmersionChart& chart,
                          std::span<const double> x) {
  const int m = chart.m;
  const int n = space.n;
  if (n != m + 1) throw Error("chart dimension does not match ambient space");
  Bindings merged = merged_bindings(space, chart);

  ChartFrame fr;
  fr.m = m;
  fr.n = n;
  fr.x.assign(x.begin(), x.end());

  auto jsC = JetSpace::get(m, kChartOrder);
  Jet zeroC = Jet::constant(jsC, 0.0);

  // phi at two orders above the chart order: its second chart derivatives
  // must themselves be order-kChartOrder jets.
  auto hi_env = chart_jet_env(chart, merged, x, kChartOrder + 2);
  std::vector<Jet> phi_hi;
  phi_hi.reserve(n);
  for (const auto& comp : chart.components) phi_hi.push_back(evaluate(comp, hi_env));

  fr.p.resize(n);
  for (int a = 0; a < n; ++a) fr.p[a] = phi_hi[a].value();

  fr.T.assign(static_cast<std::size_t>(n) * m, zeroC);
  fr.d2phi.assign(static_cast<std::size_t>(n) * m * m, zeroC);
  for (int a = 0; a < n; ++a) {
    for (int i = 0; i < m; ++i) {
      Jet d = phi_hi[a].derivative(i);
      fr.T[static_cast<std::size_t>(a) * m + i] = d.truncated(kChartOrder);
      for (int j = i; j < m; ++j) {
        Jet dd = d.derivative(j);
        fr.d2phi[(static_cast<std::size_t>(a) * m + i) * m + j] = dd;
        fr.d2phi[(static_cast<std::size_t>(a) * m + j) * m + i] = dd;
      }
    }
  }
  auto T = [&](int a, int i) -> const Jet& { return fr.T[static_cast<std::size_t>(a) * m + i]; };

  // sigma and its ambient partials along the chart: nested jets, outer
  // order 1 in the ambient variables, inner chart jets.
  using NJet = JetT<Jet>;
  auto jsO = JetSpace::get(n, 1);
  EvalEnv<NJet> nenv;
  nenv.bindings = &merged;
  nenv.exemplar = NJet::constant(jsO, zeroC);
  for (int a = 0; a < n; ++a) {
    NJet sv = NJet::seed_value(jsO, a, phi_hi[a].truncated(kChartOrder));
    if (a + 1 < n) nenv.vars["x" + std::to_string(a + 1)] = sv;
    if (a + 1 == n) {
      nenv.vars["z"] = sv;
      if (n <= 9) nenv.vars["x" + std::to_string(n)] = sv;
    }
  }
  NJet snest = evaluate(space.sigma, nenv);
  fr.sigma = snest.coeff(0);
  if (!(fr.sigma.value() > 0))
    throw DomainError("conformal factor not positive along the chart", fr.sigma.value());
  fr.psi.assign(n, zeroC);
  for (int a = 0; a < n; ++a) fr.psi[a] = -(snest.coeff(1 + a) / fr.sigma);

  // Euclidean normal by cofactors of the Jacobian: the unique direction with
  // det(T_1 .. T_m, nu0) > 0.
  fr.nu0.assign(n, zeroC);
  for (int r = 0; r < n; ++r) {
    Mat<Jet> minor(m, m, zeroC);
    int rr = 0;
    for (int a = 0; a < n; ++a) {
      if (a == r) continue;
      for (int i = 0; i < m; ++i) minor.at(rr, i) = T(a, i);
      ++rr;
    }
    Jet d = determinant(minor);
    double sign = ((r + m) % 2 == 0) ? 1.0 : -1.0;
    fr.nu0[r] = d * sign;
  }
  if (chart.flip_normal)
    for (auto& c : fr.nu0) c = -c;

  Jet gram = zeroC;
  for (int a = 0; a < n; ++a) gram = gram + fr.nu0[a] * fr.nu0[a];
  if (!(gram.value() > 1e-10))
    throw RankError("immersion chart loses rank at the sample point");
  fr.nu0_norm = s_sqrt(gram);
  fr.xi0.assign(n, zeroC);
  for (int a = 0; a < n; ++a) fr.xi0[a] = fr.nu0[a] / fr.nu0_norm;

  // induced metric
  Jet s2 = fr.sigma * fr.sigma;
  fr.g = Mat<Jet>(m, m, zeroC);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      Jet e = zeroC;
      for (int a = 0; a < n; ++a) e = e + T(a, i) * T(a, j);
      Jet gij = e / s2;
      fr.g.at(i, j) = gij;
      fr.g.at(j, i) = gij;
    }
  fr.g_inv = inverse(fr.g);

  // II_ij = sigma^{-1} <W_ij, nu0> / |nu0| with
  // W_ij = d2phi_ij + Gamma(T_i, T_j) and the conformal Christoffels
  // Gamma^k(U, V) = U^k psi(V) + V^k psi(U) - <U,V> psi_k.
  std::vector<Jet> P(m, zeroC);  // psi(T_i)
  for (int i = 0; i < m; ++i) {
    Jet acc = zeroC;
    for (int a = 0; a < n; ++a) acc = acc + fr.psi[a] * T(a, i);
    P[i] = acc;
  }
  fr.II = Mat<Jet>(m, m, zeroC);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      Jet euc = zeroC;
      for (int a = 0; a < n; ++a) euc = euc + T(a, i) * T(a, j);
      Jet dot = zeroC;
      for (int a = 0; a < n; ++a) {
        Jet w = fr.d2phi[(static_cast<std::size_t>(a) * m + i) * m + j] + T(a, i) * P[j] +
                T(a, j) * P[i] - euc * fr.psi[a];
        dot = dot + w * fr.nu0[a];
      }
      Jet II_ij = dot / (fr.sigma * fr.nu0_norm);
      fr.II.at(i, j) = II_ij;
      fr.II.at(j, i) = II_ij;
    }

  fr.A = mat_mul(fr.g_inv, fr.II);
  fr.H = zeroC;
  for (int i = 0; i < m; ++i) fr.H = fr.H + fr.A.at(i, i);
  fr.H = fr.H / static_cast<double>(m);
  fr.normA2 = zeroC;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) fr.normA2 = fr.normA2 + fr.A.at(i, j) * fr.A.at(j, i);
  return fr;
}

double ChartFrame::g_norm(std::span<const double> v) const {
  double s = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) s += g.at(i, j).value() * v[i] * v[j];
  return std::sqrt(std::max(0.0, s));
}

std::vector<double> ChartFrame::grad(const Jet& u) const {
  std::vector<double> out(m, 0.0);
  for (int k = 0; k < m; ++k)
    for (int j = 0; j < m; ++j) out[k] += g_inv.at(k, j).value() * first_coeff(u, j);
  return out;
}

double ChartFrame::laplacian(const Jet& u) const {
  // Gamma(g)^k_{ij} from first derivatives of the metric jets
  double lap = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double hess = second_coeff(u, i, j);
      double corr = 0;
      for (int k = 0; k < m; ++k) {
        double gam = 0;
        for (int l = 0; l < m; ++l) {
          double dg = first_coeff(g.at(j, l), i) + first_coeff(g.at(i, l), j) -
                      first_coeff(g.at(i, j), l);
          gam += 0.5 * g_inv.at(k, l).value() * dg;
        }
        corr += gam * first_coeff(u, k);
      }
      lap += g_inv.at(i, j).value() * (hess - corr);
    }
  return lap;
}

std::vector<double> ChartFrame::apply_shape(std::span<const double> v) const {
  std::vector<double> out(m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out[i] += A.at(i, j).value() * v[j];
  return out;
}

PointGeometry geometry_at(const ConformalSpace& space, const ImmersionChart& chart,
                          std::span<const double> x) {
  ChartFrame fr = chart_frame_at(space, chart, x);
  const int m = fr.m;
  const int n = fr.n;
  PointGeometry pg;
  pg.x = fr.x;
  pg.p = fr.p;
  pg.sigma = fr.sigma.value();
  pg.g = Mat<double>(m, m, 0.0);
  pg.g_inv = Mat<double>(m, m, 0.0);
  pg.second_ff = Mat<double>(m, m, 0.0);
  pg.shape = Mat<double>(m, m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      pg.g.at(i, j) = fr.g.at(i, j).value();
      pg.g_inv.at(i, j) = fr.g_inv.at(i, j).value();
      pg.second_ff.at(i, j) = fr.II.at(i, j).value();
      pg.shape.at(i, j) = fr.A.at(i, j).value();
    }
  pg.xi0.resize(n);
  pg.xi.resize(n);
  for (int a = 0; a < n; ++a) {
    pg.xi0[a] = fr.xi0[a].value();
    pg.xi[a] = fr.sigma.value() * pg.xi0[a];
  }
  pg.H = fr.H.value();
  pg.normA2 = fr.normA2.value();
  pg.principal = generalized_sym_eigenvalues(pg.second_ff, pg.g);
  double dev = 0;
  for (double l : pg.principal) dev = std::max(dev, std::fabs(l - pg.H));
  pg.umbilic = dev < 1e-9 * (1.0 + std::fabs(pg.H));
  return pg;
}

SurfaceScalar surface_scalar_calculus(const ConformalSpace& space, const ImmersionChart& chart,
                                      const Expr& u, std::span<const double> x) {
  ChartFrame fr = chart_frame_at(space, chart, x);
  Bindings merged = merged_bindings(space, chart);
  auto env = chart_jet_env(chart, merged, x, kChartOrder);
  Jet uj = evaluate(u, env);
  SurfaceScalar out;
  out.grad = fr.grad(uj);
  out.laplacian = fr.laplacian(uj);
  return out;
}

RicciProjection ricci_projections_from(const CurvatureData& curv, const ChartFrame& fr) {
  const int m = fr.m;
  const int n = fr.n;
  RicciProjection out;
  std::vector<double> xi(n);
  for (int a = 0; a < n; ++a) xi[a] = fr.sigma.value() * fr.xi0[a].value();
  double rnn = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) rnn += curv.ric(a, b) * xi[a] * xi[b];
  out.ric_nn = rnn;
  std::vector<double> omega(m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        omega[i] += curv.ric(a, b) * xi[a] * fr.T[static_cast<std::size_t>(b) * m + i].value();
  out.ric_tangent.assign(m, 0.0);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i) out.ric_tangent[k] += fr.g_inv.at(k, i).value() * omega[i];
  return out;
}

RicciProjection ricci_projections(const ConformalSpace& space, const ImmersionChart& chart,
                                  std::span<const double> x) {
  ChartFrame fr = chart_frame_at(space, chart, x);
  CurvatureData curv = curvature_at(space, fr.p);
  return ricci_projections_from(curv, fr);
}

}  // namespace fbh
