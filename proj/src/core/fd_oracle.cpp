#include "core/fd_oracle.hpp"

#include <cmath>

namespace fbh {

namespace {

double fd_rec(const RealFn& f, std::vector<double>& x, MultiIndex& alpha, double step) {
  int var = -1;
  for (std::size_t i = 0; i < alpha.exponents.size(); ++i)
    if (alpha.exponents[i] > 0) {
      var = static_cast<int>(i);
      break;
    }
  if (var < 0) return f(x);
  double h = step > 0 ? step : 1e-5 * std::max(1.0, std::fabs(x[var]));
  alpha.exponents[var] -= 1;
  double keep = x[var];
  x[var] = keep + h;
  double fp = fd_rec(f, x, alpha, step);
  x[var] = keep - h;
  double fm = fd_rec(f, x, alpha, step);
  x[var] = keep;
  alpha.exponents[var] += 1;
  return (fp - fm) / (2.0 * h);
}

}  // namespace

double fd_oracle(const RealFn& f, std::span<const double> point, const MultiIndex& alpha,
                 double step) {
  if (alpha.exponents.size() != point.size())
    throw Error("fd_oracle: multi-index arity does not match the point");
  if (alpha.degree() > 3) throw Error("fd_oracle supports |alpha| <= 3");
  std::vector<double> x(point.begin(), point.end());
  MultiIndex a = alpha;
  double h = step;
  if (h <= 0 && a.degree() >= 3) {
    double scale = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (a.exponents[i] > 0) scale = std::max(scale, std::fabs(x[i]));
    h = 1e-3 * scale;
  }
  return fd_rec(f, x, a, h);
}

double fd_oracle(const Expr& e, const Bindings& b, std::span<const double> point,
                 const MultiIndex& alpha, double step) {
  int n = static_cast<int>(point.size());
  RealFn f = [&](std::span<const double> x) {
    std::map<std::string, double> vars;
    for (int i = 0; i < n - 1; ++i) vars["x" + std::to_string(i + 1)] = x[i];
    // last coordinate doubles as z; expressions may use either name
    vars["x" + std::to_string(n)] = x[n - 1];
    vars["z"] = x[n - 1];
    return evaluate_real(e, b, vars);
  };
  return fd_oracle(f, point, alpha, step);
}

}  // namespace fbh
