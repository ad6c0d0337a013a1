#include "core/residual.hpp"

#include <cmath>

namespace fbh {

const char* verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::TotallyGeodesic: return "totally_geodesic";
    case VerdictKind::MinimalNotGeodesic: return "minimal_not_geodesic";
    case VerdictKind::BiharmonicProper: return "biharmonic_proper";
    case VerdictKind::FBiharmonicProper: return "f_biharmonic_proper";
    case VerdictKind::NotFBiharmonic: return "not_f_biharmonic";
  }
  return "?";
}

std::optional<VerdictKind> verdict_by_name(const std::string& s) {
  for (VerdictKind k :
       {VerdictKind::TotallyGeodesic, VerdictKind::MinimalNotGeodesic,
        VerdictKind::BiharmonicProper, VerdictKind::FBiharmonicProper,
        VerdictKind::NotFBiharmonic})
    if (s == verdict_name(k)) return k;
  return std::nullopt;
}

namespace {

double floor1(double v) { return std::max(1.0, v); }

}  // namespace

ResidualReport residual_at(const ConformalSpace& space, const ImmersionChart& chart, const Expr& f,
                           std::span<const double> x) {
  const int m = chart.m;
  ChartFrame fr = chart_frame_at(space, chart, x);
  CurvatureData curv = curvature_at(space, fr.p);
  RicciProjection rp = ricci_projections_from(curv, fr);

  Bindings merged = merged_bindings(space, chart);
  auto env = chart_jet_env(chart, merged, x, 2);
  Jet fj = evaluate(f, env);
  if (!(fj.value() > 0))
    throw DomainError("weight function f must be positive on the hypersurface", fj.value());

  ResidualReport r;
  r.x.assign(x.begin(), x.end());
  r.H = fr.H.value();
  r.normA2 = fr.normA2.value();
  r.ric_nn = rp.ric_nn;
  r.f_value = fj.value();

  const double Hv = r.H;
  const double fHv = fj.value() * Hv;

  // first line of the f-biharmonic system
  Jet fH = fj * fr.H;
  double lap_fH = fr.laplacian(fH);
  r.r1_f = lap_fH - fHv * (r.normA2 - r.ric_nn);
  r.n1 = floor1(std::abs(lap_fH) + std::abs(fHv) * r.normA2 + std::abs(fHv * r.ric_nn));

  // second line
  std::vector<double> grad_fH = fr.grad(fH);
  std::vector<double> A_grad_fH = fr.apply_shape(grad_fH);
  std::vector<double> gradH = fr.grad(fr.H);
  r.r2_f.assign(m, 0.0);
  for (int i = 0; i < m; ++i)
    r.r2_f[i] = A_grad_fH[i] + fHv * (0.5 * m * gradH[i] - rp.ric_tangent[i]);
  r.r2_f_norm = fr.g_norm(r.r2_f);
  r.n2 = floor1(fr.g_norm(A_grad_fH) + std::abs(fHv) * (0.5 * m * fr.g_norm(gradH) +
                                                        fr.g_norm(rp.ric_tangent)));

  // biharmonic system exactly as in the hypersurface characterization
  double lapH = fr.laplacian(fr.H);
  r.r1_bi = lapH - Hv * r.normA2 + Hv * r.ric_nn;
  r.n1_bi = floor1(std::abs(lapH) + std::abs(Hv) * r.normA2 + std::abs(Hv * r.ric_nn));
  std::vector<double> gradH2 = fr.grad(fr.H * fr.H);
  std::vector<double> A_gradH = fr.apply_shape(gradH);
  r.r2_bi.assign(m, 0.0);
  for (int i = 0; i < m; ++i)
    r.r2_bi[i] = 2.0 * A_gradH[i] + 0.5 * m * gradH2[i] - 2.0 * Hv * rp.ric_tangent[i];
  r.r2_bi_norm = fr.g_norm(r.r2_bi);
  r.n2_bi = floor1(2.0 * fr.g_norm(A_gradH) + 0.5 * m * fr.g_norm(gradH2) +
                   2.0 * std::abs(Hv) * fr.g_norm(rp.ric_tangent));

  // f-nonconstancy witness, invariant under scaling f by a constant
  std::vector<double> gradf = fr.grad(fj);
  r.grad_lnf_norm = fr.g_norm(gradf) / fj.value();

  // umbilicity (value level)
  Mat<double> gv(m, m, 0.0), IIv(m, m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      gv.at(i, j) = fr.g.at(i, j).value();
      IIv.at(i, j) = fr.II.at(i, j).value();
    }
  auto lambda = generalized_sym_eigenvalues(IIv, gv);
  for (double l : lambda) r.umb_dev = std::max(r.umb_dev, std::abs(l - Hv));
  r.umbilic = r.umb_dev < 1e-9 * (1.0 + std::abs(Hv));
  return r;
}

Verdict classify_reports(std::span<const ResidualReport> reports, const Tols& tols) {
  Verdict v;
  v.points = static_cast<int>(reports.size());
  if (reports.empty()) throw UsageError("classify: no admissible sample points");
  for (int i = 0; i < v.points; ++i) {
    const auto& r = reports[i];
    double fres = r.max_f_residual();
    if (fres > v.max_f_residual) {
      v.max_f_residual = fres;
      v.worst_index = i;
      v.worst_term = r.nr1_f() >= r.nr2_f() ? "r1_f" : "r2_f";
    }
    v.max_bi_residual = std::max(v.max_bi_residual, r.max_bi_residual());
    v.max_absH = std::max(v.max_absH, std::abs(r.H));
    v.max_normA2 = std::max(v.max_normA2, r.normA2);
    v.f_nonconstant = v.f_nonconstant || r.grad_lnf_norm > tols.nonconstant;
  }
  if (v.max_normA2 < tols.verify * tols.verify)
    v.kind = VerdictKind::TotallyGeodesic;
  else if (v.max_absH < tols.verify)
    v.kind = VerdictKind::MinimalNotGeodesic;
  else if (v.max_bi_residual < tols.verify)
    v.kind = VerdictKind::BiharmonicProper;
  else if (v.max_f_residual < tols.verify && v.f_nonconstant)
    v.kind = VerdictKind::FBiharmonicProper;
  else
    v.kind = VerdictKind::NotFBiharmonic;
  return v;
}

Verdict classify(const ConformalSpace& space, const ImmersionChart& chart, const Expr& f,
                 const SampleSpec& sampler, const Tols& tols, int jobs,
                 std::vector<ResidualReport>* reports_out) {
  auto points = sample_chart_points(space, chart, sampler.box, sampler.count, sampler.seed);
  std::vector<ResidualReport> reports(points.size());
  parallel_for(jobs, static_cast<int>(points.size()),
               [&](int i) { reports[i] = residual_at(space, chart, f, points[i]); });
  Verdict v = classify_reports(reports, tols);
  if (reports_out) *reports_out = std::move(reports);
  return v;
}

UmbilicalCheck umbilical_theory_check(const ConformalSpace& space, const ImmersionChart& chart,
                                      const Expr& f, std::span<const double> x) {
  const int m = chart.m;
  ChartFrame fr = chart_frame_at(space, chart, x);
  CurvatureData curv = curvature_at(space, fr.p);
  RicciProjection rp = ricci_projections_from(curv, fr);

  double Hv = fr.H.value();
  if (std::abs(Hv) < 1e-12)
    throw DomainError("umbilical identity check needs H != 0", Hv);
  Mat<double> gv(m, m, 0.0), IIv(m, m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      gv.at(i, j) = fr.g.at(i, j).value();
      IIv.at(i, j) = fr.II.at(i, j).value();
    }
  double dev = 0;
  for (double l : generalized_sym_eigenvalues(IIv, gv)) dev = std::max(dev, std::abs(l - Hv));
  if (dev >= 1e-9 * (1.0 + std::abs(Hv)))
    throw Error("umbilical identity check at a non-umbilic point");

  Bindings merged = merged_bindings(space, chart);
  auto env = chart_jet_env(chart, merged, x, 2);
  Jet fj = evaluate(f, env);
  if (!(fj.value() > 0))
    throw DomainError("weight function f must be positive on the hypersurface", fj.value());

  UmbilicalCheck out;
  out.ric_nn = rp.ric_nn;

  Jet absH = s_abs(fr.H);

  // (a) f |H|^{(4-m)/2} constant
  Jet F = fj * s_pow_rational(absH, Rational(4 - m, 2));
  out.f_form_residual = fr.g_norm(fr.grad(F)) / F.value();

  // (b) Ric(xi,xi) - m H^2 + |H|^{(2-m)/2} Delta(|H|^{(m-2)/2})
  Jet w = s_pow_rational(absH, Rational(m - 2, 2));
  double lapw = fr.laplacian(w);
  double scale = s_pow_rational(absH.value(), Rational(2 - m, 2));
  double fs2 = rp.ric_nn - m * Hv * Hv + scale * lapw;
  out.curvature_identity_residual =
      std::abs(fs2) / std::max(1.0, std::abs(rp.ric_nn) + m * Hv * Hv + std::abs(scale * lapw));

  // (c) (m-1) grad H = (Ric xi)^T
  std::vector<double> gradH = fr.grad(fr.H);
  std::vector<double> cod(m, 0.0);
  for (int i = 0; i < m; ++i) cod[i] = (m - 1) * gradH[i] - rp.ric_tangent[i];
  out.codazzi_residual = fr.g_norm(cod) /
                      std::max(1.0, (m - 1) * fr.g_norm(gradH) + fr.g_norm(rp.ric_tangent));

  // (d) subharmonicity margin, meaningful when Ric(xi,xi) <= 0
  double pos = m * s_pow_rational(absH.value(), Rational(m + 2, 2));
  out.margin_applicable = rp.ric_nn <= 0;
  out.subharmonic_margin = (lapw - pos) / std::max(1.0, std::abs(lapw) + pos);
  return out;
}

}  // namespace fbh
