#include <doctest.h>

#include <cmath>

#include "core/families.hpp"
#include "core/hypersurface.hpp"
#include "core/sampling.hpp"

using namespace fbh;

TEST_CASE("flat hyperplanes are totally geodesic") {
  ConformalSpace flat = ConformalSpace::flat(4);
  std::vector<double> a = {0.7, -0.2, 1.1, 3.0};
  ImmersionChart chart = ImmersionChart::hyperplane(3, a);
  PointGeometry pg = geometry_at(flat, chart, std::vector<double>{0.4, -1.0, 0.2});
  CHECK(pg.H == doctest::Approx(0.0));
  CHECK(pg.normA2 == doctest::Approx(0.0));
  for (double l : pg.principal) CHECK(std::abs(l) < 1e-14);
  CHECK(pg.umbilic);
}

TEST_CASE("horosphere slice of hyperbolic space: all principal curvatures 1") {
  ConformalSpace hyp = ConformalSpace::make(3, parse("z"), {}, {parse("z")});
  std::vector<double> a = {0.0, 0.0, 1.7};
  ImmersionChart chart = ImmersionChart::hyperplane(2, a);
  PointGeometry pg = geometry_at(hyp, chart, std::vector<double>{0.3, -0.8});
  CHECK(pg.H == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pg.principal[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(pg.principal[1] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(pg.umbilic);
}

TEST_CASE("cylinder principal curvatures for several radii") {
  ConformalSpace flat = ConformalSpace::flat(3);
  for (double R : {0.5, 1.0, 2.0}) {
    Bindings params;
    params.params["R"] = R;
    std::vector<Expr> comps = {parse("R*sin(x1/R)"), parse("R*cos(x1/R)"), parse("x2")};
    ImmersionChart cyl = ImmersionChart::general(2, comps, params);
    PointGeometry pg = geometry_at(flat, cyl, std::vector<double>{0.4, 1.1});
    CHECK(std::abs(pg.principal[0] - 1.0 / R) < 1e-10);
    CHECK(std::abs(pg.principal[1]) < 1e-10);
    CHECK(pg.H == doctest::Approx(1.0 / (2.0 * R)).epsilon(1e-12));
    CHECK(!pg.umbilic);
  }
}

TEST_CASE("normal is h-unit and h-orthogonal to the pushforwards") {
  FamilySpec fs = catalog("pqe1_ii", 5, {});
  auto pts = sample_chart_points(fs.space, fs.chart, fs.default_box, 10, 77);
  for (const auto& x : pts) {
    ChartFrame fr = chart_frame_at(fs.space, fs.chart, x);
    double s = fr.sigma.value();
    double hxx = 0;
    for (int a = 0; a < fr.n; ++a) {
      double xi_a = s * fr.xi0[a].value();
      hxx += xi_a * xi_a / (s * s);
    }
    CHECK(std::abs(hxx - 1.0) < 1e-12);
    for (int i = 0; i < fr.m; ++i) {
      double dot_i = 0;
      for (int a = 0; a < fr.n; ++a)
        dot_i += (s * fr.xi0[a].value()) * fr.T[a * fr.m + i].value() / (s * s);
      CHECK(std::abs(dot_i) < 1e-12);
    }
  }
}

TEST_CASE("hyperplane mean curvature matches the closed form") {
  FamilySpec fs = catalog("pqe1_i", 3, {});
  auto pts = sample_chart_points(fs.space, fs.chart, fs.default_box, 10, 13);
  const auto& a = fs.chart.plane_a;
  double k = 1.0 / std::sqrt(1.0 + 3.0);
  for (const auto& x : pts) {
    PointGeometry pg = geometry_at(fs.space, fs.chart, x);
    Jet sj = fs.space.sigma_jet(pg.p, 1);
    double H_closed = sj.coeff(4) * k;  // d sigma / dz
    for (int i = 0; i < 3; ++i) H_closed -= a[i] * sj.coeff(1 + i) * k;
    CHECK(pg.H == doctest::Approx(H_closed).epsilon(1e-12));
    CHECK(pg.umbilic);
  }
}

TEST_CASE("orientation flip negates H and the shape operator") {
  FamilySpec fs = catalog("tr1", 2, {});
  ImmersionChart flipped = fs.chart;
  flipped.flip_normal = true;
  std::vector<double> x = {0.4, -0.3};
  PointGeometry pg = geometry_at(fs.space, fs.chart, x);
  PointGeometry pf = geometry_at(fs.space, flipped, x);
  CHECK(pf.H == doctest::Approx(-pg.H).epsilon(1e-14));
  CHECK(pf.normA2 == doctest::Approx(pg.normA2).epsilon(1e-12));
}

TEST_CASE("surface scalar calculus") {
  ConformalSpace flat = ConformalSpace::flat(3);
  std::vector<double> a0 = {0.0, 0.0, 1.0};
  ImmersionChart plane = ImmersionChart::hyperplane(2, a0);

  SUBCASE("constants have zero gradient and Laplacian") {
    auto sc = surface_scalar_calculus(flat, plane, parse("7"), std::vector<double>{0.2, 0.4});
    CHECK(sc.laplacian == doctest::Approx(0.0));
    CHECK(std::abs(sc.grad[0]) < 1e-15);
    CHECK(std::abs(sc.grad[1]) < 1e-15);
  }

  SUBCASE("Euclidean Laplacian of x1^2 + x2^2") {
    auto sc = surface_scalar_calculus(flat, plane, parse("x1^2+x2^2"),
                                      std::vector<double>{0.2, 0.4});
    CHECK(sc.laplacian == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(sc.grad[0] == doctest::Approx(0.4));
    CHECK(sc.grad[1] == doctest::Approx(0.8));
  }

  SUBCASE("the z=1 slice of sigma=z is intrinsically flat") {
    ConformalSpace hyp = ConformalSpace::make(3, parse("z"), {}, {parse("z")});
    auto sc = surface_scalar_calculus(hyp, plane, parse("x1^2"),
                                      std::vector<double>{-0.7, 0.9});
    CHECK(sc.laplacian == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("ricci projections") {
  SUBCASE("flat space: both projections vanish") {
    ConformalSpace flat = ConformalSpace::flat(3);
    std::vector<double> a = {0.5, -0.5, 2.0};
    ImmersionChart plane = ImmersionChart::hyperplane(2, a);
    auto rp = ricci_projections(flat, plane, std::vector<double>{0.3, 0.6});
    CHECK(std::abs(rp.ric_nn) < 1e-14);
    CHECK(std::abs(rp.ric_tangent[0]) < 1e-14);
    CHECK(std::abs(rp.ric_tangent[1]) < 1e-14);
  }

  SUBCASE("Codazzi: (m-1) grad H equals the tangential Ricci on umbilical families") {
    for (const char* name : {"tr1", "pqe1_ii"}) {
      int m = std::string(name) == "tr1" ? 2 : 3;
      FamilySpec fs = catalog(name, m, {});
      auto pts = sample_chart_points(fs.space, fs.chart, fs.default_box, 8, 21);
      for (const auto& x : pts) {
        ChartFrame fr = chart_frame_at(fs.space, fs.chart, x);
        auto rp = ricci_projections(fs.space, fs.chart, x);
        auto gradH = fr.grad(fr.H);
        std::vector<double> diff(m);
        for (int i = 0; i < m; ++i) diff[i] = (m - 1) * gradH[i] - rp.ric_tangent[i];
        double scale = std::max(1.0, (m - 1) * fr.g_norm(gradH) + fr.g_norm(rp.ric_tangent));
        CHECK(fr.g_norm(diff) / scale < 1e-8);
      }
    }
  }

  SUBCASE("normal Ricci matches the closed form on the z^(3/13) family") {
    FamilySpec fs = catalog("pqe1_ii", 3, {});
    auto pts = sample_chart_points(fs.space, fs.chart, fs.default_box, 8, 31);
    for (const auto& x : pts) {
      auto rp = ricci_projections(fs.space, fs.chart, x);
      PointGeometry pg = geometry_at(fs.space, fs.chart, x);
      double closed = ricci_normal_umbilical(fs.space, pg.xi0, pg.p);
      CHECK(std::abs(rp.ric_nn - closed) <= 1e-9 * std::max(1.0, std::abs(closed)));
    }
  }
}

TEST_CASE("ambient-expressed intrinsic operators match the chart pipeline") {
  // Delta_g |H| and |grad_g |H||^2 computed from Euclidean partials vs the
  // chart-jet route, on umbilical hyperplane families.
  for (const char* name : {"pqe1_i", "pqe1_ii", "pc2_ii"}) {
    int m = 3;
    FamilySpec fs = catalog(name, m, {});
    auto pts = sample_chart_points(fs.space, fs.chart, fs.default_box, 6, 57);
    for (const auto& x : pts) {
      HyperplaneReduction pr = hyperplane_reduction_residual(fs.space, fs.chart, x);
      ChartFrame fr = chart_frame_at(fs.space, fs.chart, x);
      Jet absH = s_abs(fr.H);
      double lap_chart = fr.laplacian(absH);
      auto g = fr.grad(absH);
      double grad2_chart = 0;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) grad2_chart += fr.g.at(i, j).value() * g[i] * g[j];
      CHECK(std::abs(pr.lap_g_absH - lap_chart) <=
            1e-8 * std::max(1.0, std::abs(lap_chart)));
      CHECK(std::abs(pr.grad_g_absH_sq - grad2_chart) <=
            1e-8 * std::max(1.0, std::abs(grad2_chart)));
    }
  }
}

TEST_CASE("rank deficiency is detected") {
  ConformalSpace flat = ConformalSpace::flat(3);
  std::vector<Expr> comps = {parse("x1^2"), parse("x1^2"), parse("x2")};
  ImmersionChart bad = ImmersionChart::general(2, comps);
  CHECK_THROWS_AS(geometry_at(flat, bad, std::vector<double>{0.0, 0.5}), RankError);
  // away from x1 = 0 the chart is an immersion again
  CHECK_NOTHROW(geometry_at(flat, bad, std::vector<double>{0.8, 0.5}));
}

TEST_CASE("chart/ambient dimension mismatch") {
  ConformalSpace flat = ConformalSpace::flat(4);
  std::vector<double> a = {0.0, 0.0, 1.0};
  ImmersionChart plane = ImmersionChart::hyperplane(2, a);
  CHECK_THROWS_AS(geometry_at(flat, plane, std::vector<double>{0.1, 0.1}), Error);
}
