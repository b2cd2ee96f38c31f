#include "bifun/gauss.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "bifun/error.hpp"

namespace bifun {

GaussMap::GaussMap(Matrix a, Vector mu, Matrix sigma, double tol)
    : a_(std::move(a)), mu_(std::move(mu)) {
  const Index n = a_.rows();
  require_dims(mu_.size() == n, "mean has dimension " + std::to_string(mu_.size()) +
                                    ", map lands in R^" + std::to_string(n));
  require_dims(sigma.rows() == n && sigma.cols() == n,
               "covariance must be " + std::to_string(n) + " x " + std::to_string(n));
  const Matrix s = linalg::symmetrize(sigma, tol);
  try {
    sigma_ = linalg::clamp_psd(s, tol, 0.0);
  } catch (const Error&) {
    throw Error(ErrorCode::NotConvex, "covariance is not positive semidefinite");
  }
}

GaussMap GaussMap::copy(Index n) {
  Matrix a(2 * n, n);
  a << Matrix::Identity(n, n), Matrix::Identity(n, n);
  return linear(a);
}

GaussMap GaussMap::add(Index n) {
  Matrix a(n, 2 * n);
  a << Matrix::Identity(n, n), Matrix::Identity(n, n);
  return linear(a);
}

GaussMap gauss_compose(const GaussMap& f, const GaussMap& g) {
  require_dims(f.src_dim() == g.dst_dim(), "cannot compose Gaussian maps R^" +
                                               std::to_string(f.src_dim()) + " -> ... after ... -> R^" +
                                               std::to_string(g.dst_dim()));
  const Matrix& af = f.a();
  return {af * g.a(), f.mu() + af * g.mu(), f.sigma() + af * g.sigma() * af.transpose()};
}

GaussMap gauss_tensor(const GaussMap& f, const GaussMap& g) {
  Vector mu(f.dst_dim() + g.dst_dim());
  mu << f.mu(), g.mu();
  return {linalg::block_diag(f.a(), g.a()), mu, linalg::block_diag(f.sigma(), g.sigma())};
}

bool equal_within(const GaussMap& f, const GaussMap& g, double tol) {
  if (f.src_dim() != g.src_dim() || f.dst_dim() != g.dst_dim()) return false;
  auto close = [tol](const Matrix& x, const Matrix& y) {
    if (x.size() == 0) return true;
    const double scale = std::max({1.0, x.cwiseAbs().maxCoeff(), y.cwiseAbs().maxCoeff()});
    return (x - y).cwiseAbs().maxCoeff() <= tol * scale;
  };
  return close(f.a(), g.a()) && close(f.mu(), g.mu()) && close(f.sigma(), g.sigma());
}

QuadBifunction cgf_functor(const GaussMap& f, double tol) {
  const Index m = f.src_dim();
  const Index n = f.dst_dim();
  const Matrix qhat = linalg::block_diag(Matrix::Zero(m, m), f.sigma());
  Vector bhat(m + n);
  bhat << Vector::Zero(m), f.mu();
  Matrix c(m, m + n);
  c << Matrix::Identity(m, m), -f.a().transpose();
  return {m, n, Pcqf::from_ambient(qhat, bhat, 0.0, c, Vector::Zero(m), tol), Polarity::convex};
}

QuadBifunction logpdf_functor(const GaussMap& f, double tol) {
  const Index m = f.src_dim();
  const Index n = f.dst_dim();
  // Residual penalty on R^n, then pulled back along (y, x) -> y - A x - mu.
  const Matrix precision = linalg::pseudoinverse(f.sigma(), tol);
  const Matrix degenerate = linalg::null_space(f.sigma(), tol);
  const Pcqf penalty = Pcqf::from_ambient(precision, Vector::Zero(n), 0.0, degenerate.transpose(),
                                          Vector::Zero(degenerate.cols()), tol);
  Matrix residual(n, n + m);
  residual << Matrix::Identity(n, n), -f.a();
  return {n, m, pullback(penalty, residual, -f.mu(), tol), Polarity::concave};
}

QuadBifunction logpdf_state(const GaussMap& f, double tol) {
  if (f.src_dim() != 0) {
    throw Error(ErrorCode::Precondition, "logpdf_state needs a Gaussian state (no inputs)");
  }
  return dagger(logpdf_functor(f, tol), tol);
}

Pcqf ext_cgf(const ExtGaussState& s, double tol) {
  const Index n = s.mu.size();
  require_dims(s.sigma.rows() == n && s.sigma.cols() == n && s.fibre.rows() == n,
               "extended Gaussian data must all live in R^" + std::to_string(n));
  const Matrix sigma = linalg::clamp_psd(linalg::symmetrize(s.sigma, 1e-8), 1e-8, 0.0);
  return Pcqf::from_ambient(sigma, s.mu, 0.0, s.fibre.transpose(), Vector::Zero(s.fibre.cols()),
                            tol);
}

QuadBifunction condition_logpdf(const QuadBifunction& joint, const Vector& value, double tol) {
  if (joint.src_dim() != 0 || joint.is_convex()) {
    throw Error(ErrorCode::Precondition, "conditioning expects a concave state");
  }
  const Index total = joint.dst_dim();
  const Index k = value.size();
  require_dims(k <= total, "observed block is larger than the state");
  const Index n = total - k;
  Matrix embed = Matrix::Zero(total, n);
  embed.topRows(n) = Matrix::Identity(n, n);
  Vector shift = Vector::Zero(total);
  shift.tail(k) = value;
  Pcqf graph = pullback(joint.stored(), embed, shift, tol);
  if (graph.is_infeasible()) {
    throw Error(ErrorCode::InfeasibleObservation, "observed value lies outside the support");
  }
  return {0, n, std::move(graph), Polarity::concave};
}

QuadBifunction condition_cgf(const QuadBifunction& joint_effect, const Vector& value,
                             double tol) {
  if (joint_effect.dst_dim() != 0 || !joint_effect.is_convex()) {
    throw Error(ErrorCode::Precondition, "covariance-side conditioning expects a convex effect");
  }
  const Index k = value.size();
  require_dims(k <= joint_effect.src_dim(), "observed block is larger than the state");
  const Index n = joint_effect.src_dim() - k;
  const QuadBifunction observe =
      negate(effect(Pcqf::indicator(AffineSubspace::point(value))));
  const QuadBifunction restrict_map = tensor(negate(identity(n)), observe, tol);
  return compose(joint_effect, adjoint(restrict_map, tol), tol);
}

}  // namespace bifun
