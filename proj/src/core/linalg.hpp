#ifndef FBH_CORE_LINALG_HPP
#define FBH_CORE_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "core/errors.hpp"
#include "core/jet.hpp"

namespace fbh {

// Dense row-major matrix over double or jet scalars. Sizes here are tiny
// (<= 13), so plain Gaussian elimination with value-magnitude pivoting is
// all we need.
template <class T>
struct Mat {
  int rows = 0, cols = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(int r, int c, const T& fill) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, fill) {}
  T& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const T& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
};

template <class T>
double pivot_weight(const T& v) {
  return std::fabs(detail::ScalarOps<T>::leading(v));
}

// Gauss-Jordan solve A X = B, destroying copies. Throws RankError on a
// vanishing pivot.
template <class T>
Mat<T> solve(Mat<T> A, Mat<T> B) {
  if (A.rows != A.cols || A.rows != B.rows) throw Error("solve: shape mismatch");
  int n = A.rows, m = B.cols;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (pivot_weight(A.at(r, col)) > pivot_weight(A.at(piv, col))) piv = r;
    if (pivot_weight(A.at(piv, col)) < 1e-300) throw RankError("singular matrix in solve");
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(A.at(piv, j), A.at(col, j));
      for (int j = 0; j < m; ++j) std::swap(B.at(piv, j), B.at(col, j));
    }
    T inv = detail::ScalarOps<T>::one_like(A.at(col, col));
    inv = s_div(inv, A.at(col, col));
    for (int j = 0; j < n; ++j) A.at(col, j) = A.at(col, j) * inv;
    for (int j = 0; j < m; ++j) B.at(col, j) = B.at(col, j) * inv;
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      T factor = A.at(r, col);
      if (pivot_weight(factor) == 0.0) continue;
      for (int j = 0; j < n; ++j) A.at(r, j) = A.at(r, j) - factor * A.at(col, j);
      for (int j = 0; j < m; ++j) B.at(r, j) = B.at(r, j) - factor * B.at(col, j);
    }
  }
  return B;
}

template <class T>
Mat<T> inverse(const Mat<T>& A) {
  Mat<T> I(A.rows, A.rows, detail::ScalarOps<T>::zero_like(A.at(0, 0)));
  for (int i = 0; i < A.rows; ++i) I.at(i, i) = detail::ScalarOps<T>::one_like(A.at(0, 0));
  return solve(A, I);
}

template <class T>
T determinant(Mat<T> A) {
  if (A.rows != A.cols) throw Error("determinant: not square");
  int n = A.rows;
  T det = detail::ScalarOps<T>::one_like(A.at(0, 0));
  double sign = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (pivot_weight(A.at(r, col)) > pivot_weight(A.at(piv, col))) piv = r;
    if (pivot_weight(A.at(piv, col)) < 1e-300)
      return detail::ScalarOps<T>::zero_like(A.at(0, 0));
    if (piv != col) {
      sign = -sign;
      for (int j = 0; j < n; ++j) std::swap(A.at(piv, j), A.at(col, j));
    }
    det = det * A.at(col, col);
    T inv = detail::ScalarOps<T>::one_like(A.at(0, 0));
    inv = s_div(inv, A.at(col, col));
    for (int r = col + 1; r < n; ++r) {
      T factor = A.at(r, col) * inv;
      if (pivot_weight(factor) == 0.0) continue;
      for (int j = col; j < n; ++j) A.at(r, j) = A.at(r, j) - factor * A.at(col, j);
    }
  }
  return det * detail::ScalarOps<T>::from_double_like(det, sign);
}

template <class T>
Mat<T> mat_mul(const Mat<T>& A, const Mat<T>& B) {
  if (A.cols != B.rows) throw Error("mat_mul: shape mismatch");
  Mat<T> C(A.rows, B.cols, detail::ScalarOps<T>::zero_like(A.at(0, 0)));
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k)
      for (int j = 0; j < B.cols; ++j)
        C.at(i, j) = C.at(i, j) + A.at(i, k) * B.at(k, j);
  return C;
}

// ---- double-only spectral helpers ----------------------------------------

inline Mat<double> cholesky(const Mat<double>& G) {
  int n = G.rows;
  Mat<double> L(n, n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = G.at(i, j);
      for (int k = 0; k < j; ++k) s -= L.at(i, k) * L.at(j, k);
      if (i == j) {
        if (s <= 0) throw RankError("cholesky: matrix not positive definite");
        L.at(i, i) = std::sqrt(s);
      } else {
        L.at(i, j) = s / L.at(j, j);
      }
    }
  }
  return L;
}

// Cyclic Jacobi on a symmetric matrix; plenty for n <= 13.
inline std::vector<double> sym_eigenvalues(Mat<double> S) {
  int n = S.rows;
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += S.at(p, q) * S.at(p, q);
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = S.at(p, q);
        if (std::fabs(apq) < 1e-300) continue;
        double theta = (S.at(q, q) - S.at(p, p)) / (2 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = S.at(k, p), akq = S.at(k, q);
          S.at(k, p) = c * akp - s * akq;
          S.at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = S.at(p, k), aqk = S.at(q, k);
          S.at(p, k) = c * apk - s * aqk;
          S.at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = S.at(i, i);
  std::sort(ev.begin(), ev.end(), std::greater<double>());
  return ev;
}

// Eigenvalues of the pencil (S, G) with S symmetric and G SPD: Cholesky
// G = L L^T, then Jacobi on L^{-1} S L^{-T}. Returns eigenvalues sorted
// descending. This is exactly the shape-operator spectrum (principal
// curvatures) when S = II and G = g.
inline std::vector<double> generalized_sym_eigenvalues(const Mat<double>& S,
                                                       const Mat<double>& G) {
  int n = S.rows;
  Mat<double> L = cholesky(G);
  // forward solve L Y = S  (column-wise), then (L^{-1} S) L^{-T}
  Mat<double> Y(n, n, 0.0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      double s = S.at(i, j);
      for (int k = 0; k < i; ++k) s -= L.at(i, k) * Y.at(k, j);
      Y.at(i, j) = s / L.at(i, i);
    }
  Mat<double> B(n, n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = Y.at(i, j);
      for (int k = 0; k < j; ++k) s -= L.at(j, k) * B.at(i, k);
      B.at(i, j) = s / L.at(j, j);
    }
  return sym_eigenvalues(B);
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace fbh

#endif
