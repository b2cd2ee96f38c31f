#pragma once

// Helpers shared by the unit tests. Nothing here calls into the library's
// own algorithms for the quantities it computes, so it can serve as an
// independent reference.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace testing {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline Matrix mat(Eigen::Index rows, Eigen::Index cols, std::initializer_list<double> xs) {
  Matrix m(rows, cols);
  auto it = xs.begin();
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = *it++;
  return m;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.size() == 0 && b.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

/// Minimizer of a convex function of one variable by golden-section search.
inline double golden_min(const std::function<double(double)>& f, double lo, double hi,
                         int iters = 200) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters; ++i) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - r * (b - a); fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + r * (b - a); fd = f(d);
    }
  }
  return f(0.5 * (a + b));
}

/// Kernel of M via full-pivot LU, independent of the SVD-based library code.
inline Matrix lu_kernel(const Matrix& m) {
  if (m.rows() == 0) return Matrix::Identity(m.cols(), m.cols());
  Eigen::FullPivLU<Matrix> lu(m);
  lu.setThreshold(1e-10);
  return lu.kernel();
}

/// Classical Gaussian conditioning of N(mu, Sigma) on the trailing block.
struct Conditional {
  Vector mean;
  Matrix cov;
};

inline Conditional schur_condition(const Vector& mu, const Matrix& sigma, Eigen::Index n,
                                   const Vector& value) {
  const Eigen::Index k = mu.size() - n;
  const Matrix sxx = sigma.topLeftCorner(n, n);
  const Matrix sxy = sigma.topRightCorner(n, k);
  const Matrix syy = sigma.bottomRightCorner(k, k);
  const Matrix gain = sxy * syy.inverse();
  return {mu.head(n) + gain * (value - mu.tail(k)), sxx - gain * sxy.transpose()};
}

}  // namespace testing
