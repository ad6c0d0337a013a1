#ifndef FBH_CORE_FD_ORACLE_HPP
#define FBH_CORE_FD_ORACLE_HPP

#include <functional>
#include <span>
#include <vector>

#include "core/expr.hpp"
#include "core/jet.hpp"

namespace fbh {

using RealFn = std::function<double(std::span<const double>)>;

// Central finite differences iterated per variable; truncation error is
// O(step^2) per differentiation. step <= 0 picks a default scaled per
// coordinate: 1e-5 * max(1, |x_i|) up to second order and
// 1e-3 * max(1, |x_i|) for third order (1e-5 drowns third differences in
// round-off).
double fd_oracle(const RealFn& f, std::span<const double> point, const MultiIndex& alpha,
                 double step = 0.0);

double fd_oracle(const Expr& e, const Bindings& b, std::span<const double> point,
                 const MultiIndex& alpha, double step = 0.0);

}  // namespace fbh

#endif
