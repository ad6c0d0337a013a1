#ifndef FBH_CORE_FAMILIES_HPP
#define FBH_CORE_FAMILIES_HPP

#include <map>
#include <string>
#include <vector>

#include "core/polynomial.hpp"
#include "core/residual.hpp"

namespace fbh {

// One fully bound construction from the catalog: ambient factor, chart,
// weight function, expected verdict and a sensible sampling box.
struct FamilySpec {
  std::string name;
  int m = 0;
  ConformalSpace space;
  ImmersionChart chart;
  Expr f;
  VerdictKind expected = VerdictKind::NotFBiharmonic;
  Box default_box;
  std::map<std::string, double> resolved_params;
};

std::vector<std::string> family_names();

// Throws ConstraintError on inadmissible parameters (sum a_i^2 != m where
// required, k < 6, non-positive c's, unsupported m).
FamilySpec catalog(const std::string& name, int m,
                   const std::map<std::string, double>& params = {});

// ---- reduced ODE/PDE residuals -------------------------------------------

enum class ReducedEq { PQ1, pq01, pc1, ppc1, pOP2 };

struct OdeResidual {
  double raw = 0;
  double normalizer = 1;
  double normalized() const { return std::abs(raw) / normalizer; }
};

// Left-hand side of the reduced equation evaluated with jet derivatives of
// beta at the given point. PQ1 wants a univariate beta(z), bindings must
// carry km2 (= k_m^2); pc1/ppc1 want beta(x_1..x_m, z) with point of size
// m+1; pq01/pOP2 want a univariate expression in its single variable.
OdeResidual ode_residual(ReducedEq eq, const Expr& beta, std::span<const double> point,
                         const Bindings& bindings, int m);

// ---- exact power-ansatz reduction ----------------------------------------

enum class AnsatzEq { PQ1Power, Pc1AffinePower };

struct AnsatzReduction {
  // root quadratic in its canonical integer scale: a t^2 + b t + c = 0
  Rational a, b, c;
  std::pair<Rational, Rational> roots;  // ascending
  // the power of the base carried by every term (coef * t + cst)
  Rational z_exp_tcoef, z_exp_const;
  Poly derived;  // the raw polynomial before normalization
  std::string equation_line() const;  // e.g. "13t^2+10t-3=0; t=-1, t=3/13"
};

// Substitutes beta = z^t (with k_m^2 = 1/(m+1)) into the PQ1 ODE, or
// beta = (sum x_i + z + C)^t into the pc1 PDE, with exact rational
// arithmetic. m may be rational for property tests.
AnsatzReduction ansatz_reduce(AnsatzEq eq, const Rational& m);

// ---- hyperplane reduction of the umbilical curvature identity ------------

struct HyperplaneReduction {
  double raw = 0;
  double normalizer = 1;
  double H = 0;
  // ambient-expressed intrinsic quantities (for cross-checks against the
  // chart pipeline)
  double lap_g_absH = 0;
  double grad_g_absH_sq = 0;
  double ric_closed_form = 0;
  double normalized() const { return std::abs(raw) / normalizer; }
};

HyperplaneReduction hyperplane_reduction_residual(const ConformalSpace& space, const ImmersionChart& chart,
                         std::span<const double> x);

}  // namespace fbh

#endif
