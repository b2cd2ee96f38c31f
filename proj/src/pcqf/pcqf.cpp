#include "bifun/pcqf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bifun/error.hpp"

namespace bifun {

namespace {

// Linear-system consistency and unboundedness checks allow this multiple of
// the rank tolerance, relative to the size of the data involved.
constexpr double kConsistencySlack = 1e3;

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }
double max_abs(const Vector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

bool close(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if (a.size() == 0) return true;
  const double scale = std::max({1.0, max_abs(a), max_abs(b)});
  return (a - b).cwiseAbs().maxCoeff() <= tol * scale;
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction

Pcqf Pcqf::infeasible(Index n) { return Pcqf(AffineSubspace::empty(n), Matrix(0, 0), Vector(0), 0.0); }

Pcqf Pcqf::zero(Index n) {
  return Pcqf(AffineSubspace::whole(n), Matrix::Zero(n, n), Vector::Zero(n), 0.0);
}

Pcqf Pcqf::indicator(const AffineSubspace& dom) {
  if (dom.is_empty()) return infeasible(dom.ambient_dim());
  const Index k = dom.dim();
  return Pcqf(dom, Matrix::Zero(k, k), Vector::Zero(k), 0.0);
}

Pcqf Pcqf::from_parametrization(const Matrix& basis, const Vector& x0, const Matrix& q,
                                const Vector& b, double c, double tol) {
  const Index k = basis.cols();
  require_dims(q.rows() == k && q.cols() == k && b.size() == k,
               "quadratic data does not match the parametrization dimension");
  AffineSubspace dom = AffineSubspace::through(basis, x0);
  // Re-express around the canonical offset: x0 + B w = p + B (w + s).
  const Vector s = basis.transpose() * x0;
  const Matrix qs = linalg::symmetrize(q, std::max(tol, 1e-8));
  Matrix q_clamped = linalg::clamp_psd(qs, tol, 1.0);
  Vector b_new = b - qs * s;
  const double c_new = 0.5 * s.dot(qs * s) - b.dot(s) + c;
  return Pcqf(std::move(dom), std::move(q_clamped), std::move(b_new), c_new);
}

Pcqf Pcqf::from_ambient(const Matrix& qhat, const Vector& bhat, double chat, const Matrix& c,
                        const Vector& d, double tol) {
  const Index n = qhat.rows();
  require_dims(qhat.cols() == n && bhat.size() == n,
               "ambient quadratic and linear term must both live in R^" + std::to_string(n));
  require_dims(c.cols() == n || c.rows() == 0,
               "constraint matrix has " + std::to_string(c.cols()) + " columns, expected " +
                   std::to_string(n));
  const Matrix qs = linalg::symmetrize(qhat, std::max(tol, 1e-8));
  const Matrix cc = c.rows() == 0 ? Matrix(0, n) : c;
  const AffineSubspace dom = AffineSubspace::from_equations(cc, d, tol);
  if (dom.is_empty()) return infeasible(n);
  const Matrix& basis = dom.basis();
  const Vector& p = dom.offset();
  const Matrix q = basis.transpose() * qs * basis;
  const Vector b = basis.transpose() * (qs * p + bhat);
  const double c0 = 0.5 * p.dot(qs * p) + bhat.dot(p) + chat;
  // The scale of the ambient form sets the curvature threshold.
  const double scale = std::max(1.0, max_abs(qs));
  return Pcqf(dom, linalg::clamp_psd(0.5 * (q + q.transpose()), tol, scale), b, c0);
}

Pcqf Pcqf::unconstrained(const Matrix& qhat, const Vector& bhat, double chat, double tol) {
  return from_ambient(qhat, bhat, chat, Matrix(0, qhat.rows()), Vector(0), tol);
}

Matrix Pcqf::ambient_quadratic() const {
  const Index n = ambient_dim();
  if (is_infeasible()) return Matrix::Zero(n, n);
  const Matrix& basis = dom_.basis();
  return basis * q_ * basis.transpose();
}

Vector Pcqf::ambient_linear() const {
  if (is_infeasible()) return Vector::Zero(ambient_dim());
  return dom_.basis() * b_;
}

ExtReal Pcqf::operator()(const Vector& x, double tol) const {
  require_dims(x.size() == ambient_dim(), "evaluation point has dimension " +
                                              std::to_string(x.size()) + ", function lives on R^" +
                                              std::to_string(ambient_dim()));
  if (!dom_.contains(x, tol)) return ExtReal::pos_inf();
  const Vector z = dom_.basis().transpose() * (x - dom_.offset());
  return ExtReal(0.5 * z.dot(q_ * z) + b_.dot(z) + c_);
}

ExtReal evaluate(const Pcqf& f, const Vector& x, double tol) { return f(x, tol); }

// ---------------------------------------------------------------------------
// Calculus

Pcqf pullback(const Pcqf& f, const Matrix& m, const Vector& t, double tol) {
  const Index n = f.ambient_dim();
  const Index r = m.cols();
  require_dims(m.rows() == n && t.size() == n,
               "pullback map lands in R^" + std::to_string(m.rows()) + " but function lives on R^" +
                   std::to_string(n));
  if (f.is_infeasible()) return Pcqf::infeasible(r);
  const AffineSubspace& dom = f.domain();
  const Matrix normals = dom.normals();
  // Points u with M u + t in dom f.
  const Matrix a = normals.transpose() * m;
  const Vector rhs = normals.transpose() * (dom.offset() - t);
  const auto solved = linalg::solve_least_squares(a, rhs, tol);
  if (!solved.consistent) return Pcqf::infeasible(r);
  const Matrix kernel = linalg::null_space(a, tol, 1.0);
  // Internal coordinates of f along u = u0 + K w: z = z0 + L w.
  const Vector z0 = dom.basis().transpose() * (m * solved.x + t - dom.offset());
  const Matrix lmap = dom.basis().transpose() * m * kernel;
  const Matrix& q = f.quadratic();
  const Vector& b = f.linear();
  const Matrix q_new = lmap.transpose() * q * lmap;
  const Vector b_new = lmap.transpose() * (q * z0 + b);
  const double c_new = 0.5 * z0.dot(q * z0) + b.dot(z0) + f.constant();
  return Pcqf::from_parametrization(kernel, solved.x, q_new, b_new, c_new, tol);
}

Pcqf add(const Pcqf& f, const Pcqf& g, double tol) {
  require_dims(f.ambient_dim() == g.ambient_dim(),
               "cannot add functions on R^" + std::to_string(f.ambient_dim()) + " and R^" +
                   std::to_string(g.ambient_dim()));
  const Index n = f.ambient_dim();
  if (f.is_infeasible() || g.is_infeasible()) return Pcqf::infeasible(n);
  const Matrix& basis = f.domain().basis();
  const Vector& p = f.domain().offset();
  // g restricted to dom f, in f's internal coordinates, plus f itself.
  const Pcqf h = pullback(g, basis, p, tol);
  if (h.is_infeasible()) return Pcqf::infeasible(n);
  const Matrix& hb = h.domain().basis();
  const Vector& hp = h.domain().offset();
  const Matrix q = h.quadratic() + hb.transpose() * f.quadratic() * hb;
  const Vector b = h.linear() + hb.transpose() * (f.quadratic() * hp + f.linear());
  const double c = h.constant() + 0.5 * hp.dot(f.quadratic() * hp) + f.linear().dot(hp) + f.constant();
  return Pcqf::from_parametrization(basis * hb, p + basis * hp, q, b, c, tol);
}

Pcqf add_affine(const Pcqf& f, const Vector& slope, double shift) {
  require_dims(slope.size() == f.ambient_dim(), "slope dimension does not match function");
  if (f.is_infeasible()) return f;
  const Matrix& basis = f.domain().basis();
  const Vector& p = f.domain().offset();
  return Pcqf::from_parametrization(basis, p, f.quadratic(), f.linear() + basis.transpose() * slope,
                                    f.constant() + slope.dot(p) + shift);
}

Pcqf partial_infimum(const Pcqf& f, Index keep, double tol) {
  const Index total = f.ambient_dim();
  require_dims(keep >= 0 && keep <= total, "cannot keep " + std::to_string(keep) +
                                               " coordinates of R^" + std::to_string(total));
  if (f.is_infeasible()) return Pcqf::infeasible(keep);
  const Matrix& basis = f.domain().basis();
  const Index k = basis.cols();
  const Matrix bx = basis.topRows(keep);
  const Vector px = f.domain().offset().head(keep);

  // bx = U S V^T. Kept points are px + U_r s; internal points over them are
  // z = V_r S_r^{-1} s + V_null v with v free.
  Matrix u_r(keep, 0);
  Matrix lift(k, 0);
  Matrix free_dirs = Matrix::Identity(k, k);
  if (keep > 0 && k > 0) {
    Eigen::JacobiSVD<Matrix> svd(bx, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Vector& sv = svd.singularValues();
    const double thresh = linalg::rank_threshold(sv.size() ? sv(0) : 0.0, tol, 1.0);
    Index rank = 0;
    while (rank < sv.size() && sv(rank) > thresh) ++rank;
    u_r = svd.matrixU().leftCols(rank);
    lift = svd.matrixV().leftCols(rank) * sv.head(rank).cwiseInverse().asDiagonal();
    free_dirs = svd.matrixV().rightCols(k - rank);
  }

  const Matrix& q = f.quadratic();
  const Vector& b = f.linear();
  const Matrix q_ss = lift.transpose() * q * lift;
  const Matrix q_sv = lift.transpose() * q * free_dirs;
  const Matrix q_vv = free_dirs.transpose() * q * free_dirs;
  const Vector b_s = lift.transpose() * b;
  const Vector b_v = free_dirs.transpose() * b;

  // Eliminated directions with zero curvature must carry zero slope, else the
  // infimum runs off to -inf (uniformly over the kept domain, since PSD-ness
  // forces zero coupling along those directions).
  const double scale = std::max(1.0, max_abs(q));
  if (q_vv.size() > 0) {
    const auto eig = linalg::sym_eig(q_vv, 1e-6);
    const double thresh = linalg::rank_threshold(eig.values.cwiseAbs().maxCoeff(), tol, scale);
    const double slope_tol = kConsistencySlack * tol * std::max(1.0, max_abs(b));
    for (Index i = 0; i < eig.values.size(); ++i) {
      if (eig.values(i) > thresh) continue;
      const double slope = eig.vectors.col(i).dot(b_v);
      if (std::abs(slope) > slope_tol) {
        throw Error(ErrorCode::UnboundedBelow,
                    "infimum over eliminated coordinates is -inf (slope " + std::to_string(slope) +
                        " along a flat direction)");
      }
    }
  }
  const Matrix q_vv_pinv = linalg::pseudoinverse(q_vv, tol, scale);
  const Matrix q_new = q_ss - q_sv * q_vv_pinv * q_sv.transpose();
  const Vector b_new = b_s - q_sv * q_vv_pinv * b_v;
  const double c_new = f.constant() - 0.5 * b_v.dot(q_vv_pinv * b_v);
  return Pcqf::from_parametrization(u_r, px, 0.5 * (q_new + q_new.transpose()), b_new, c_new, tol);
}

Pcqf conjugate(const Pcqf& f, const GeneralizedInverse& ginv, double tol) {
  if (f.is_infeasible()) {
    throw Error(ErrorCode::ImproperInput,
                "conjugate of the constant +inf function is the constant -inf function");
  }
  const Matrix& basis = f.domain().basis();
  const Vector& p = f.domain().offset();
  const Matrix& q = f.quadratic();
  const Vector& b = f.linear();
  const Matrix g_raw = ginv(q);
  require_dims(g_raw.rows() == q.rows() && g_raw.cols() == q.cols(),
               "generalized inverse has the wrong shape");
  // Only the symmetric part matters for the quadratic form, and it is again a
  // generalized inverse of the symmetric q.
  const Matrix g = 0.5 * (g_raw + g_raw.transpose());
  // f*(s) = <s,p> - c + 1/2 w^T G w with w = B^T s - b, finite iff w in im(Q).
  const Matrix kernel = linalg::null_space(q, tol, 1.0);
  const Matrix qhat = basis * g * basis.transpose();
  const Vector bhat = p - basis * (g * b);
  const double chat = 0.5 * b.dot(g * b) - f.constant();
  const Matrix cons = (basis * kernel).transpose();
  const Vector rhs = kernel.transpose() * b;
  return Pcqf::from_ambient(qhat, bhat, chat, cons, rhs, tol);
}

Pcqf conjugate(const Pcqf& f, double tol) {
  return conjugate(f, [tol](const Matrix& q) { return linalg::pseudoinverse(q, tol, 1.0); }, tol);
}

Pcqf inf_convolution(const Pcqf& f, const Pcqf& g, double tol) {
  const Index n = f.ambient_dim();
  require_dims(n == g.ambient_dim(), "infimal convolution needs functions on the same space");
  // (x, y) -> f(x - y) + g(y), then infimize over y.
  Matrix diff(n, 2 * n);
  diff << Matrix::Identity(n, n), -Matrix::Identity(n, n);
  Matrix second(n, 2 * n);
  second << Matrix::Zero(n, n), Matrix::Identity(n, n);
  const Vector zero = Vector::Zero(n);
  const Pcqf joint = add(pullback(f, diff, zero, tol), pullback(g, second, zero, tol), tol);
  return partial_infimum(joint, n, tol);
}

bool equal_within(const Pcqf& f, const Pcqf& g, double tol) {
  if (f.ambient_dim() != g.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "comparing functions on different spaces");
  }
  if (f.is_infeasible() || g.is_infeasible()) return f.is_infeasible() == g.is_infeasible();
  if (!f.domain().equals(g.domain(), tol)) return false;
  if (!close(f.ambient_quadratic(), g.ambient_quadratic(), tol)) return false;
  if (!close(f.ambient_linear(), g.ambient_linear(), tol)) return false;
  const double scale = std::max({1.0, std::abs(f.constant()), std::abs(g.constant())});
  return std::abs(f.constant() - g.constant()) <= tol * scale;
}

double lambda_star(double lambda) {
  if (std::isnan(lambda) || lambda < 0.0) {
    throw Error(ErrorCode::NegativeCurvature, "curvature " + std::to_string(lambda) + " is negative");
  }
  if (lambda == 0.0) return std::numeric_limits<double>::infinity();
  if (std::isinf(lambda)) return 0.0;
  return 1.0 / lambda;
}

}  // namespace bifun
