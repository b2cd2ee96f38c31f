#pragma once

// Gaussian maps x -> A x + mu + N(0, Sigma) and their two bifunction
// interpretations: the cumulant generating function (covariant, convex) and
// the unnormalized log-density (contravariant, concave).

#include "bifun/bifunction.hpp"

namespace bifun {

class GaussMap {
 public:
  GaussMap() = default;
  /// A is n x m (a map R^m -> R^n). Sigma must be symmetric PSD within tol;
  /// it is stored symmetrized with round-off eigenvalues snapped to zero.
  GaussMap(Matrix a, Vector mu, Matrix sigma, double tol = 1e-8);

  static GaussMap state(const Vector& mu, const Matrix& sigma) {
    return {Matrix(mu.size(), 0), mu, sigma};
  }
  static GaussMap linear(const Matrix& a) {
    return {a, Vector::Zero(a.rows()), Matrix::Zero(a.rows(), a.rows())};
  }
  static GaussMap identity(Index n) { return linear(Matrix::Identity(n, n)); }
  /// x -> (x, x)
  static GaussMap copy(Index n);
  /// R^n -> R^0
  static GaussMap discard(Index n) { return linear(Matrix(0, n)); }
  /// (x1, x2) -> x1 + x2
  static GaussMap add(Index n);

  Index src_dim() const { return a_.cols(); }
  Index dst_dim() const { return a_.rows(); }
  const Matrix& a() const { return a_; }
  const Vector& mu() const { return mu_; }
  const Matrix& sigma() const { return sigma_; }

 private:
  Matrix a_ = Matrix(0, 0);
  Vector mu_ = Vector(0);
  Matrix sigma_ = Matrix(0, 0);
};

/// f o g (g first): (A_f A_g, mu_f + A_f mu_g, Sigma_f + A_f Sigma_g A_f^T).
GaussMap gauss_compose(const GaussMap& f, const GaussMap& g);
/// Independent product, block-diagonal in everything.
GaussMap gauss_tensor(const GaussMap& f, const GaussMap& g);
bool equal_within(const GaussMap& f, const GaussMap& g, double tol = 1e-7);

/// Convex R^m -> R^n: (x, y) -> 1/2 y^T Sigma y + mu^T y + [x = A^T y].
QuadBifunction cgf_functor(const GaussMap& f, double tol = linalg::kDefaultTol);

/// Concave R^n -> R^m: (y, x) -> -1/2 r^T Sigma^+ r - [r in im Sigma] with
/// r = y - A x - mu. Normalizing constants are dropped.
QuadBifunction logpdf_functor(const GaussMap& f, double tol = linalg::kDefaultTol);

/// Concave state I -> R^n carrying the log-density of a Gaussian state.
QuadBifunction logpdf_state(const GaussMap& f, double tol = linalg::kDefaultTol);

/// Gaussian state with infinite variance along the columns of `fibre`.
struct ExtGaussState {
  Vector mu;
  Matrix sigma;
  Matrix fibre;
};

/// 1/2 y^T Sigma y + mu^T y on {y : fibre^T y = 0}.
Pcqf ext_cgf(const ExtGaussState& s, double tol = linalg::kDefaultTol);

/// Restricts a concave state on R^(n+k) to its last k coordinates equal to
/// `value`, giving an unnormalized concave state on R^n. Throws
/// InfeasibleObservation when the value is impossible.
QuadBifunction condition_logpdf(const QuadBifunction& joint, const Vector& value,
                                double tol = linalg::kDefaultTol);

/// Conditioning on the covariance side: composes a convex effect on R^(n+k)
/// with the adjoint of the restriction used by condition_logpdf.
QuadBifunction condition_cgf(const QuadBifunction& joint_effect, const Vector& value,
                             double tol = linalg::kDefaultTol);

}  // namespace bifun
