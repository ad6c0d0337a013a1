#ifndef FBH_CORE_RESIDUAL_HPP
#define FBH_CORE_RESIDUAL_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/hypersurface.hpp"
#include "core/sampling.hpp"

namespace fbh {

enum class VerdictKind {
  TotallyGeodesic,
  MinimalNotGeodesic,
  BiharmonicProper,
  FBiharmonicProper,
  NotFBiharmonic,
};

const char* verdict_name(VerdictKind k);
std::optional<VerdictKind> verdict_by_name(const std::string& s);

// Per-point record of both residual lines of the f-biharmonic hypersurface
// system and of the plain biharmonic system (f == 1). Each line's
// normalizer is the sum of absolute values of its additive terms, floored
// at 1, so "normalized residual < tol" is comparable across families whose
// raw scales differ by orders of magnitude.
struct ResidualReport {
  std::vector<double> x;
  double H = 0, normA2 = 0, ric_nn = 0;
  double r1_f = 0;
  std::vector<double> r2_f;
  double r2_f_norm = 0;
  double r1_bi = 0;
  std::vector<double> r2_bi;
  double r2_bi_norm = 0;
  double n1 = 1, n2 = 1;
  double n1_bi = 1, n2_bi = 1;
  double f_value = 1;
  double grad_lnf_norm = 0;  // |grad ln f|_g, the f-nonconstancy witness
  bool umbilic = false;
  double umb_dev = 0;

  double nr1_f() const { return std::abs(r1_f) / n1; }
  double nr2_f() const { return r2_f_norm / n2; }
  double nr1_bi() const { return std::abs(r1_bi) / n1_bi; }
  double nr2_bi() const { return r2_bi_norm / n2_bi; }
  double max_f_residual() const { return std::max(nr1_f(), nr2_f()); }
  double max_bi_residual() const { return std::max(nr1_bi(), nr2_bi()); }
  // pointwise verdict: does this sample satisfy the f-system at tol?
  bool verifies(double tol) const { return max_f_residual() < tol; }
};

struct Tols {
  double verify = 1e-8;
  double falsify = 1e-3;
  double nonconstant = 1e-6;  // on |grad ln f|_g
};

ResidualReport residual_at(const ConformalSpace& space, const ImmersionChart& chart, const Expr& f,
                           std::span<const double> x);

struct Verdict {
  VerdictKind kind = VerdictKind::NotFBiharmonic;
  int points = 0;
  double max_f_residual = 0;
  double max_bi_residual = 0;
  double max_absH = 0;
  double max_normA2 = 0;
  bool f_nonconstant = false;
  int worst_index = -1;       // argmax of the f-residual
  std::string worst_term;
};

Verdict classify_reports(std::span<const ResidualReport> reports, const Tols& tols);

struct SampleSpec {
  int count = 100;
  std::uint64_t seed = 1;
  Box box;
};

Verdict classify(const ConformalSpace& space, const ImmersionChart& chart, const Expr& f,
                 const SampleSpec& sampler, const Tols& tols, int jobs = 1,
                 std::vector<ResidualReport>* reports_out = nullptr);

// Identity residuals of the totally umbilical theory at one point:
//  (a) constancy of f |H|^{(4-m)/2}  (gradient of its log)
//  (b) Ric(xi,xi) = m H^2 - |H|^{(2-m)/2} Delta(|H|^{(m-2)/2})
//  (c) (m-1) grad H = (Ric xi)^T
//  (d) Delta(|H|^{(m-2)/2}) - m |H|^{(m+2)/2} >= 0 whenever Ric(xi,xi) <= 0
struct UmbilicalCheck {
  double f_form_residual = 0;   // (a), scale-invariant
  double curvature_identity_residual = 0;      // (b), normalized
  double codazzi_residual = 0;     // (c), normalized
  double subharmonic_margin = 0;        // (d), normalized margin
  bool margin_applicable = false;  // ric_nn <= 0
  double ric_nn = 0;
};

UmbilicalCheck umbilical_theory_check(const ConformalSpace& space, const ImmersionChart& chart,
                                      const Expr& f, std::span<const double> x);

}  // namespace fbh

#endif
