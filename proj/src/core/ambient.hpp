#ifndef FBH_CORE_AMBIENT_HPP
#define FBH_CORE_AMBIENT_HPP

#include <span>
#include <vector>

#include "core/expr.hpp"
#include "core/jet.hpp"
#include "core/linalg.hpp"

namespace fbh {

// The conformally flat ambient (R^n, h = sigma^{-2} h_0), h_0 Euclidean.
// Coordinates are x1..x_{n-1} and z (z doubles as x_n in expressions).
struct ConformalSpace {
  int n = 0;
  Expr sigma;
  std::vector<Expr> domain_guards;  // admissible points keep these > 0
  Bindings params;

  // jets of sigma in the ambient variables at p
  Jet sigma_jet(std::span<const double> p, int order) const;
  double sigma_at(std::span<const double> p) const;
  // guards positive, sigma > 1e-8, and no evaluation domain error
  bool admissible(std::span<const double> p) const;

  static ConformalSpace flat(int n);
  static ConformalSpace make(int n, Expr sigma, Bindings params = {},
                             std::vector<Expr> guards = {});
};

// Value-level curvature package at one point, all indices lowered w.r.t. h.
struct CurvatureData {
  int n = 0;
  std::vector<double> point;
  double sigma = 0;
  double h_scale = 0;  // h_ij = h_scale * delta_ij, h_scale = sigma^{-2}
  std::vector<double> christoffel;  // Gamma^k_{ij}, index (k*n+i)*n+j
  std::vector<double> riemann;      // R_{ijkl} = h(R(d_i,d_j)d_k, d_l)
  std::vector<double> ricci;        // Ric_{ij}

  double gamma(int k, int i, int j) const {
    return christoffel[(static_cast<std::size_t>(k) * n + i) * n + j];
  }
  double riem(int i, int j, int k, int l) const {
    return riemann[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l];
  }
  double ric(int i, int j) const { return ricci[static_cast<std::size_t>(i) * n + j]; }

  double h(std::span<const double> u, std::span<const double> v) const;
};

CurvatureData curvature_at(const ConformalSpace& space, std::span<const double> p);

// Sectional curvature of span{X, Y}; inputs are ambient coordinate vectors,
// orthonormalized internally w.r.t. h.
double sectional(const ConformalSpace& space, std::span<const double> p,
                 std::span<const double> X, std::span<const double> Y);
double sectional_from(const CurvatureData& c, std::span<const double> X,
                      std::span<const double> Y);

// Closed-form sectional curvature of the conformally flat metric for X, Y
// given as h-orthonormal components in the frame e_i = sigma * d_i:
//   K = sum_{ij} (X_i X_j + Y_i Y_j) sigma sigma_{ij} - sum_i sigma_i^2.
double sectional_conformal_frame(const ConformalSpace& space, std::span<const double> p,
                                 std::span<const double> Xf, std::span<const double> Yf);

// Ric(xi, xi) for xi = sigma * xi0 with |xi0|_0 = 1, via the closed form
//   sigma L0 sigma - m |grad_0 sigma|^2 + (m-1) sigma Hess_0(sigma)(xi0, xi0),
// m = n - 1, all operators Euclidean.
double ricci_normal_umbilical(const ConformalSpace& space, std::span<const double> xi0,
                              std::span<const double> p);

// Ambient-variable evaluation environment helpers.
EvalEnv<Jet> ambient_jet_env(const ConformalSpace& space, std::span<const double> p, int order);
std::map<std::string, double> ambient_var_map(int n, std::span<const double> p);

}  // namespace fbh

#endif
