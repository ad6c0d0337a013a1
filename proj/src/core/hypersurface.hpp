#ifndef FBH_CORE_HYPERSURFACE_HPP
#define FBH_CORE_HYPERSURFACE_HPP

#include <span>
#include <vector>

#include "core/ambient.hpp"
#include "core/expr.hpp"
#include "core/linalg.hpp"

namespace fbh {

// Immersion phi: R^m -> R^{m+1} given componentwise in chart variables
// x1..xm. Hyperplane charts (x, sum a_i x_i + a_{m+1}) keep their
// coefficients around for the closed-form cross-checks.
struct ImmersionChart {
  int m = 0;
  std::vector<Expr> components;  // m+1 expressions
  bool is_hyperplane = false;
  std::vector<double> plane_a;   // a_1..a_{m+1} when hyperplane
  Bindings params;
  bool flip_normal = false;      // orientation override (testing hook)

  static ImmersionChart hyperplane(int m, std::span<const double> a);
  static ImmersionChart general(int m, std::vector<Expr> components, Bindings params = {});

  std::vector<double> map_point(std::span<const double> x) const;
};

// Everything the residual equations need at one chart point, kept as
// order-2 jets in the chart variables so second intrinsic derivatives
// (Laplacians of fH and friends) come out of the same pipeline.
struct ChartFrame {
  int m = 0, n = 0;
  std::vector<double> x, p;
  Jet sigma;                // sigma(phi(x)) as a chart jet
  std::vector<Jet> T;       // T[a*m + i] = d phi^a / d x_i
  std::vector<Jet> d2phi;   // d2phi[(a*m + i)*m + j]
  std::vector<Jet> psi;     // psi_a(phi(x)), psi = -ln sigma (ambient partials)
  std::vector<Jet> nu0;     // unnormalized Euclidean normal (cofactors)
  Jet nu0_norm;
  std::vector<Jet> xi0;     // Euclidean-unit normal direction
  Mat<Jet> g, g_inv;
  Mat<Jet> II;              // h(bar nabla_{T_i} T_j, xi)
  Mat<Jet> A;               // g^{-1} II
  Jet H;                    // trace(A)/m
  Jet normA2;               // trace(A A)

  // value-level helpers
  double g_norm(std::span<const double> v) const;        // |v|_g, chart components
  std::vector<double> grad(const Jet& u) const;          // g^{ij} d_j u
  double laplacian(const Jet& u) const;                  // trace_g Hess, Levi-Civita of g
  std::vector<double> apply_shape(std::span<const double> v) const;  // A v
};

ChartFrame chart_frame_at(const ConformalSpace& space, const ImmersionChart& chart,
                          std::span<const double> x);

// Value-level extrinsic package (what reports carry).
struct PointGeometry {
  std::vector<double> x, p;
  Mat<double> g, g_inv;
  std::vector<double> xi, xi0;
  Mat<double> second_ff;
  Mat<double> shape;
  double H = 0, normA2 = 0;
  std::vector<double> principal;  // descending
  bool umbilic = false;
  double sigma = 0;
};

PointGeometry geometry_at(const ConformalSpace& space, const ImmersionChart& chart,
                          std::span<const double> x);

struct SurfaceScalar {
  std::vector<double> grad;  // chart components of grad_g u
  double laplacian = 0;
};

SurfaceScalar surface_scalar_calculus(const ConformalSpace& space, const ImmersionChart& chart,
                                      const Expr& u, std::span<const double> x);

struct RicciProjection {
  double ric_nn = 0;                // Ric(xi, xi)
  std::vector<double> ric_tangent;  // chart components of (Ric xi)^T
};

RicciProjection ricci_projections(const ConformalSpace& space, const ImmersionChart& chart,
                                  std::span<const double> x);
RicciProjection ricci_projections_from(const CurvatureData& curv, const ChartFrame& fr);

// Chart-variable jet environment (x1..xm seeded at x).
EvalEnv<Jet> chart_jet_env(const ImmersionChart& chart, const Bindings& merged,
                           std::span<const double> x, int order);
Bindings merged_bindings(const ConformalSpace& space, const ImmersionChart& chart);

}  // namespace fbh

#endif
