// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Covers the jet/finite-difference oracle, curvature calibration and
// negativity, the exact ansatz reduction, every catalog family, the
// umbilical identities, falsification margins, the hyperplane-reduction
// equivalence, and report determinism.

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "core/engine.hpp"
#include "core/fd_oracle.hpp"
#include "core/report.hpp"

using namespace fbh;

namespace {

struct Harness {
  int failures = 0;
  void criterion(int number, const std::string& title, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool pass = false;
    try {
      pass = body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %2d: %s — %s%s%s\n", number, pass ? "PASS" : "FAIL", title.c_str(),
                detail.empty() ? "" : " | ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
  }
};

std::string sphere_sigma(int n) {
  std::string s = "(1";
  for (int i = 1; i < n; ++i) s += "+x" + std::to_string(i) + "^2";
  s += "+z^2)/2";
  return s;
}

std::string affine_power(int m, const Rational& t, const std::string& C) {
  std::string s = "(x1";
  for (int i = 2; i <= m; ++i) s += "+x" + std::to_string(i);
  s += "+z+" + C + ")^(" + t.str() + ")";
  return s;
}

struct FamilyCase {
  const char* name;
  int m;
  std::map<std::string, double> params;
};

const std::vector<FamilyCase>& criterion5_families() {
  static const std::vector<FamilyCase> cases = {
      {"tr1", 2, {}},
      {"tr4", 2, {}},
      {"pqe1_i", 3, {}},
      {"pqe1_i", 5, {}},
      {"pqe1_ii", 3, {}},
      {"pqe1_ii", 5, {}},
      {"pqe1_ii", 6, {}},
      {"pqe1_ii", 8, {}},
      {"pc2_i", 3, {}},
      {"pc2_i", 5, {}},
      {"pc2_ii", 3, {}},
      {"pc2_ii", 5, {}},
      {"pc2_ii", 8, {}},
      {"tr6_sphere_slice", 2, {{"k", 6.0}}},
      {"tr6_sphere_slice", 2, {{"k", 10.0}}},
  };
  return cases;
}

double family_tol(const FamilyCase& c) {
  return std::string(c.name) == "tr6_sphere_slice" ? 1e-6 : 1e-8;
}

// sigma with the power-law exponent bumped by +1/20, for falsification
ConformalSpace perturbed_space(const FamilySpec& fs) {
  const auto& n = fs.space.sigma.node();
  if (n.kind == Expr::Kind::Power) {
    Expr bumped = Expr::pow(Expr(n.a), n.exponent + Rational(1, 20));
    return ConformalSpace::make(fs.space.n, bumped, fs.space.params, fs.space.domain_guards);
  }
  if (n.kind == Expr::Kind::Binary && n.op == Expr::BinOp::Div) {
    // 1/(...) families: replace by (...)^(-19/20)
    Expr bumped = Expr::pow(Expr(n.b), Rational(-19, 20));
    return ConformalSpace::make(fs.space.n, bumped, fs.space.params, fs.space.domain_guards);
  }
  throw Error("no power-law form to perturb");
}

}  // namespace

int main() {
  Harness h;

  h.criterion(1, "jet derivatives of orders 1-3 match the finite-difference oracle", [](std::string& detail) {
    struct Entry {
      std::string text;
      int n_vars;
      double lo, hi;
    };
    std::vector<Entry> corpus = {
        {"z^2+3*z", 1, 0.6, 2.5},        {"z^3-z", 1, -1.5, 1.5},
        {"z^(2/5)", 1, 0.8, 3.0},        {"z^(-1)", 1, 0.8, 2.5},
        {"z^(3/13)", 1, 0.8, 3.0},       {"z^(-3/7)", 1, 1.0, 3.0},
        {"exp(z)", 1, -1.0, 1.0},        {"exp(-z^2)", 1, -1.0, 1.0},
        {"ln(z)", 1, 0.8, 3.0},          {"ln(1+z^2)", 1, 0.5, 2.0},
        {"sqrt(z)", 1, 0.8, 3.0},        {"sqrt(1+z^2)", 1, -1.5, 1.5},
        {"sin(z)", 1, -1.5, 1.5},        {"cos(z)", 1, -1.5, 1.5},
        {"atan(z)", 1, -1.5, 1.5},       {"atan(z/2)*sin(z)", 1, -1.5, 1.5},
        {"abs(z)*z^2", 1, 0.5, 2.0},     {"exp(z)*sin(z)", 1, -1.0, 1.0},
        {"cos(z)/(2+sin(z))", 1, -1.5, 1.5}, {"1/(1+z^2)", 1, -1.5, 1.5},
        {"z^(5/2)", 1, 0.8, 2.5},        {"(1+z^2)^(3/13)", 1, -1.0, 1.0},
        {"exp(sin(z))", 1, -1.0, 1.0},   {"ln(2+cos(z))", 1, -1.5, 1.5},
        {"1/(x1*x2+3)", 2, 0.5, 1.8},    {"exp(x1-x2)*atan(x1*x2)", 2, 0.5, 1.5},
        {"sqrt(x1^2+x2^2+1)", 2, -1.0, 1.0}, {"sin(x1)*cos(x2)", 2, -1.2, 1.2},
        {"(x1+x2+z+10)^(3/13)", 3, -1.0, 1.0}, {"sqrt(x1^2+x2^2+1)*ln(2+z)", 3, 0.5, 1.5},
        {"sin(x1)*cos(x2)*exp(z/3)", 3, -1.2, 1.2}, {"atan(x1*z)/(2+x2^2)", 3, 0.4, 1.4},
    };
    Bindings none;
    long checked = 0;
    double worst = 0;
    for (std::size_t ci = 0; ci < corpus.size(); ++ci) {
      const auto& entry = corpus[ci];
      Expr e = parse(entry.text);
      auto js = JetSpace::get(entry.n_vars, 3);
      for (int rep = 0; rep < 20; ++rep) {
        Rng rng = stream_rng(1000 + ci, rep);
        std::vector<double> p(entry.n_vars);
        for (auto& c : p) c = rng.uniform(entry.lo, entry.hi);
        EvalEnv<Jet> env;
        env.bindings = &none;
        env.exemplar = Jet::constant(js, 0.0);
        for (int i = 0; i < entry.n_vars; ++i) {
          Jet s = Jet::seed_value(js, i, p[i]);
          if (i + 1 < entry.n_vars) env.vars["x" + std::to_string(i + 1)] = s;
          if (i + 1 == entry.n_vars) {
            env.vars["z"] = s;
            env.vars["x" + std::to_string(entry.n_vars)] = s;
          }
        }
        Jet val;
        try {
          val = evaluate(e, env);
        } catch (const DomainError&) {
          continue;
        }
        for (int idx = 1; idx < js->size(); ++idx) {
          const MultiIndex& alpha = js->multi_index(idx);
          int order = alpha.degree();
          double mult = 1;
          for (int ee : alpha.exponents)
            for (int q = 2; q <= ee; ++q) mult *= q;
          double jd = val.coeff(idx) * mult;
          double steps[4] = {0, 1e-5, 2e-4, 1e-3};
          double scale = 1.0;
          for (int i = 0; i < entry.n_vars; ++i)
            if (alpha.exponents[i] > 0) scale = std::max(scale, std::abs(p[i]));
          double fd = fd_oracle(e, none, p, alpha, steps[order] * scale);
          double tol = order <= 2 ? 1e-6 : 1e-4;
          double rel = std::abs(jd - fd) / std::max({1.0, std::abs(jd), std::abs(fd)});
          worst = std::max(worst, rel / tol);
          if (rel > tol) {
            detail = entry.text + " alpha order " + std::to_string(order) + " rel " +
                     fmt_double(rel);
            return false;
          }
          ++checked;
        }
      }
    }
    detail = std::to_string(corpus.size()) + " expressions, " + std::to_string(checked) +
             " derivative checks, worst tolerance fraction " + fmt_double(worst);
    return true;
  });

  h.criterion(2, "constant-curvature calibration at 200 samples (n = 3, 4, 5)", [](std::string& detail) {
    double worst = 0;
    for (int n : {3, 4, 5}) {
      struct Case {
        std::string sigma;
        double K;
      };
      const Case cases[] = {{"1", 0.0}, {"z", -1.0}, {sphere_sigma(n), 1.0}};
      for (const auto& c : cases) {
        ConformalSpace space = ConformalSpace::make(n, parse(c.sigma), {}, {parse("z")});
        auto pts = sample_ambient_points(space, Box::cube(n, 0.5, 2.5), 200, 21 * n);
        auto planes = sample_planes(n, 200, 21 * n);
        for (int i = 0; i < 200; ++i) {
          double K;
          try {
            K = sectional(space, pts[i], planes[i].first, planes[i].second);
          } catch (const DegeneratePlaneError&) {
            continue;
          }
          worst = std::max(worst, std::abs(K - c.K));
          if (std::abs(K - c.K) > 1e-8) {
            detail = "sigma=" + c.sigma + " n=" + std::to_string(n) + " K=" + fmt_double(K);
            return false;
          }
        }
      }
    }
    detail = "max |K - K0| = " + fmt_double(worst);
    return true;
  });

  h.criterion(3, "strictly negative sectional curvature of both model families (1000 samples each)", [](std::string& detail) {
    double closest = -1e300;
    for (int m : {3, 5, 6, 8}) {
      Rational t(m * m - 2 * m, m * m + 4);
      int n = m + 1;
      const std::string sigmas[2] = {"z^(" + t.str() + ")", affine_power(m, t, "1")};
      for (const auto& text : sigmas) {
        ConformalSpace space = ConformalSpace::make(n, parse(text), {}, {parse("z")});
        auto pts = sample_ambient_points(space, Box::cube(n, 0.5, 2.5), 1000, 5 + m);
        auto planes = sample_planes(n, 1000, 5 + m);
        for (int i = 0; i < 1000; ++i) {
          double K;
          try {
            K = sectional(space, pts[i], planes[i].first, planes[i].second);
          } catch (const DegeneratePlaneError&) {
            continue;
          }
          closest = std::max(closest, K);
          if (!(K < 0)) {
            detail = "sigma=" + text + " K=" + fmt_double(K);
            return false;
          }
        }
      }
    }
    detail = "largest sampled K = " + fmt_double(closest);
    return true;
  });

  h.criterion(4, "exact ansatz roots for 3 <= m <= 12 and the m=2 factorization", [](std::string& detail) {
    for (int m = 3; m <= 12; ++m) {
      for (AnsatzEq eq : {AnsatzEq::PQ1Power, AnsatzEq::Pc1AffinePower}) {
        auto r = ansatz_reduce(eq, Rational(m));
        if (!(r.roots.first == Rational(-1) &&
              r.roots.second == Rational(m * m - 2 * m, m * m + 4))) {
          detail = "m=" + std::to_string(m) + " roots " + r.roots.first.str() + ", " +
                   r.roots.second.str();
          return false;
        }
      }
    }
    // m=2: PQ1 = -(1+k^2) beta'^2 pq01 on random smooth positive profiles
    const char* betas[] = {"1/(c1*z+c2)", "z^(3/13)", "2+z^2", "exp(p*z)"};
    double worst = 0;
    for (int rep = 0; rep < 200; ++rep) {
      Rng rng = stream_rng(404, rep);
      Bindings bb;
      bb.params["c1"] = rng.uniform(0.2, 2.0);
      bb.params["c2"] = rng.uniform(0.2, 2.0);
      bb.params["p"] = rng.uniform(-1.0, 1.0);
      double km2 = rng.uniform(0.05, 0.95);
      bb.params["km2"] = km2;
      Expr beta = parse(betas[rep % 4]);
      double z = rng.uniform(0.4, 2.5);
      auto pq1 = ode_residual(ReducedEq::PQ1, beta, std::vector<double>{z}, bb, 2);
      auto pq01 = ode_residual(ReducedEq::pq01, beta, std::vector<double>{z}, bb, 2);
      auto js = JetSpace::get(1, 2);
      EvalEnv<Jet> env;
      env.bindings = &bb;
      env.exemplar = Jet::constant(js, 0.0);
      env.vars["z"] = Jet::seed_value(js, 0, z);
      double b1 = evaluate(beta, env).coeff(1);
      double lhs = pq1.raw;
      double rhs = -(1.0 + km2) * b1 * b1 * pq01.raw;
      double rel = std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
      worst = std::max(worst, rel);
      if (rel > 1e-10) {
        detail = std::string(betas[rep % 4]) + " at z=" + fmt_double(z) + " rel " +
                 fmt_double(rel);
        return false;
      }
    }
    detail = "roots exact; m=2 proportionality worst rel " + fmt_double(worst);
    return true;
  });

  h.criterion(5, "proper f-biharmonic verification of every family instance (100 points)", [](std::string& detail) {
    std::ostringstream note;
    for (const auto& c : criterion5_families()) {
      FamilySpec fs = catalog(c.name, c.m, c.params);
      SampleSpec ss{100, 2024, fs.default_box};
      Verdict v = classify(fs.space, fs.chart, fs.f, ss, Tols{});
      double tol = family_tol(c);
      bool ok = v.kind == VerdictKind::FBiharmonicProper && v.max_f_residual < tol &&
                v.max_bi_residual > 1e-3 && v.f_nonconstant;
      if (!ok) {
        detail = std::string(c.name) + " m=" + std::to_string(c.m) + ": verdict " +
                 verdict_name(v.kind) + " maxf " + fmt_double(v.max_f_residual) + " maxbi " +
                 fmt_double(v.max_bi_residual);
        return false;
      }
    }
    note << criterion5_families().size() << " family instances verified";
    detail = note.str();
    return true;
  });

  h.criterion(6, "m=4 boundary: sigma = z^(2/5) with f = 1 is properly biharmonic", [](std::string& detail) {
    FamilySpec fs = catalog("m4_biharmonic", 4, {});
    SampleSpec ss{100, 33, fs.default_box};
    std::vector<ResidualReport> reps;
    Verdict v = classify(fs.space, fs.chart, fs.f, ss, Tols{}, 1, &reps);
    double hmin = 1e300, hmax = -1e300;
    for (const auto& r : reps) {
      hmin = std::min(hmin, std::abs(r.H));
      hmax = std::max(hmax, r.H);
    }
    bool ok = v.kind == VerdictKind::BiharmonicProper && v.max_bi_residual < 1e-8 &&
              hmin > 0 && (hmax - hmin) > 1e-3;  // H nonconstant, never zero
    detail = "verdict " + std::string(verdict_name(v.kind)) + ", max residual " +
             fmt_double(v.max_bi_residual) + ", |H| in [" + fmt_double(hmin) + ", " +
             fmt_double(hmax) + "]";
    return ok;
  });

  h.criterion(7, "cylinder f = cosh(x2/R) and the round-sphere slice suite", [](std::string& detail) {
    for (double R : {0.5, 1.0, 2.0}) {
      FamilySpec fs = catalog("cylinder_cs", 2, {{"R", R}});
      SampleSpec ss{60, 12, fs.default_box};
      std::vector<ResidualReport> reps;
      Verdict v = classify(fs.space, fs.chart, fs.f, ss, Tols{}, 1, &reps);
      if (v.kind != VerdictKind::FBiharmonicProper || v.max_f_residual > 1e-10) {
        detail = "R=" + fmt_double(R) + " verdict " + verdict_name(v.kind) + " maxf " +
                 fmt_double(v.max_f_residual);
        return false;
      }
      for (const auto& r : reps) {
        if (std::abs(r.H - 1.0 / (2.0 * R)) > 1e-10 ||
            std::abs(std::abs(r.r1_bi) - r.H / (R * R)) > 1e-10) {
          detail = "R=" + fmt_double(R) + " H=" + fmt_double(r.H) + " r1_bi=" +
                   fmt_double(r.r1_bi);
          return false;
        }
      }
    }
    struct Slice {
      double z0;
      VerdictKind want;
    };
    const Slice slices[] = {{0.0, VerdictKind::TotallyGeodesic},
                            {1.0, VerdictKind::BiharmonicProper},
                            {0.5, VerdictKind::NotFBiharmonic}};
    for (const auto& s : slices) {
      FamilySpec fs = catalog("sphere_slice_biharmonic", 2, {{"z0", s.z0}});
      SampleSpec ss{60, 12, fs.default_box};
      Verdict v = classify(fs.space, fs.chart, fs.f, ss, Tols{});
      if (v.kind != s.want) {
        detail = "slice z0=" + fmt_double(s.z0) + " verdict " + verdict_name(v.kind);
        return false;
      }
    }
    detail = "cylinders R in {0.5, 1, 2} and slices z0 in {0, 1, 0.5}";
    return true;
  });

  h.criterion(8, "umbilical identities and the subharmonicity margin on family points", [](std::string& detail) {
    int margin_points = 0;
    for (const auto& c : criterion5_families()) {
      FamilySpec fs = catalog(c.name, c.m, c.params);
      // the same seeded stream criterion 5 samples from
      auto pts = sample_chart_points(fs.space, fs.chart, fs.default_box, 100, 2024);
      const double tol = 1e-8;
      for (const auto& x : pts) {
        auto uc = umbilical_theory_check(fs.space, fs.chart, fs.f, x);
        if (uc.codazzi_residual > tol || uc.f_form_residual > tol || uc.curvature_identity_residual > tol) {
          detail = std::string(c.name) + " m=" + std::to_string(c.m) + " codazzi " +
                   fmt_double(uc.codazzi_residual) + " f-form " +
                   fmt_double(uc.f_form_residual) + " fs2 " + fmt_double(uc.curvature_identity_residual);
          return false;
        }
        if (uc.margin_applicable) {
          ++margin_points;
          if (uc.subharmonic_margin < -1e-10) {
            detail = std::string(c.name) + " margin " + fmt_double(uc.subharmonic_margin);
            return false;
          }
        }
      }
    }
    detail = "identities < tol on all points; margin checked at " +
             std::to_string(margin_points) + " nonpositive-Ricci points";
    return margin_points > 0;
  });

  h.criterion(9, "falsifiability: perturbed exponents and perturbed f are rejected", [](std::string& detail) {
    // (a) exponent + 0.05 on every power-law family
    std::vector<FamilyCase> power_families = criterion5_families();
    power_families.push_back({"m4_biharmonic", 4, {}});
    for (const auto& c : power_families) {
      if (std::string(c.name) == "tr6_sphere_slice") continue;  // no single power to bump
      FamilySpec fs = catalog(c.name, c.m, c.params);
      ConformalSpace bumped = perturbed_space(fs);
      SampleSpec ss{60, 77, fs.default_box};
      Verdict v = classify(bumped, fs.chart, fs.f, ss, Tols{});
      if (v.kind != VerdictKind::NotFBiharmonic || v.max_f_residual < 1e-3) {
        detail = std::string(c.name) + " m=" + std::to_string(c.m) +
                 " exponent bump kept residual " + fmt_double(v.max_f_residual);
        return false;
      }
    }
    // (b) f multiplied by (1 + 0.1 x1) on every criterion-5 family + cylinder.
    // The attainable margin for tr6 is 0.4/k^3 (only the A(grad fH) term
    // survives on that slice), so the 1e-3 bound is tested at k = 6 and the
    // k = 10 instance must still flip the verdict with residual far above
    // the verification tolerance.
    std::vector<FamilyCase> all = criterion5_families();
    all.push_back({"cylinder_cs", 2, {}});
    for (const auto& c : all) {
      FamilySpec fs = catalog(c.name, c.m, c.params);
      Expr fbad = fs.f * (Expr::number(1.0) + Expr::number(0.1) * Expr::variable("x1"));
      SampleSpec ss{60, 78, fs.default_box};
      Verdict v = classify(fs.space, fs.chart, fbad, ss, Tols{});
      bool high_k_tr6 =
          std::string(c.name) == "tr6_sphere_slice" && c.params.count("k") && c.params.at("k") > 6.0;
      double margin = high_k_tr6 ? 1e-6 : 1e-3;
      if (v.kind != VerdictKind::NotFBiharmonic || v.max_f_residual < margin) {
        detail = std::string(c.name) + " m=" + std::to_string(c.m) +
                 " f-perturbation kept residual " + fmt_double(v.max_f_residual);
        return false;
      }
    }
    detail = "every perturbation rejected; margins above 1e-3 (tr6 k=10: verdict flip)";
    return true;
  });

  h.criterion(10, "hyperplane reduction and the full system agree on every sample", [](std::string& detail) {
    for (const auto& c : criterion5_families()) {
      if (std::string(c.name) == "cylinder_cs") continue;
      FamilySpec fs = catalog(c.name, c.m, c.params);
      double tol = family_tol(c);
      auto pts = sample_chart_points(fs.space, fs.chart, fs.default_box, 100, 555);
      for (const auto& x : pts) {
        double p = hyperplane_reduction_residual(fs.space, fs.chart, x).normalized();
        auto r = residual_at(fs.space, fs.chart, fs.f, x);
        if (!(p < tol && r.max_f_residual() < tol)) {
          detail = std::string(c.name) + " m=" + std::to_string(c.m) + " reduction " +
                   fmt_double(p) + " full " + fmt_double(r.max_f_residual());
          return false;
        }
      }
    }
    // the perturbed side: both must blow up together
    for (const char* name : {"pqe1_ii", "pc2_ii"}) {
      FamilySpec fs = catalog(name, 5, {});
      ConformalSpace bumped = perturbed_space(fs);
      auto pts = sample_chart_points(bumped, fs.chart, fs.default_box, 100, 556);
      for (const auto& x : pts) {
        double p = hyperplane_reduction_residual(bumped, fs.chart, x).normalized();
        auto r = residual_at(bumped, fs.chart, fs.f, x);
        if (!(p > 1e-3 && r.max_f_residual() > 1e-3)) {
          detail = std::string(name) + " perturbed: reduction " + fmt_double(p) + " full " +
                   fmt_double(r.max_f_residual());
          return false;
        }
      }
    }
    detail = "vanishing and non-vanishing agree on 100 points per family";
    return true;
  });

  h.criterion(11, "repeated runs emit byte-identical JSON", [](std::string& detail) {
    RunConfig cfg;
    cfg.command = "verify";
    cfg.family = "pqe1_ii";
    cfg.m = 5;
    cfg.samples = 50;
    cfg.seed = 7;
    cfg.format = "json";
    RunResult a = run(cfg);
    RunResult b = run(cfg);
    cfg.jobs = 3;
    RunResult c = run(cfg);
    if (a.report != b.report || a.report != c.report) {
      detail = "reports differ across runs";
      return false;
    }
    if (a.exit_code != kPass) {
      detail = "verify run failed";
      return false;
    }
    detail = std::to_string(a.report.size()) + " bytes, stable across repeats and --jobs";
    return true;
  });

  if (h.failures == 0) {
    std::printf("acceptance: all 11 criteria PASS\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) FAILED\n", h.failures);
  return 1;
}
