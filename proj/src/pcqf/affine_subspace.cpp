#include <algorithm>
#include <string>

#include "bifun/error.hpp"
#include "bifun/pcqf.hpp"

namespace bifun {

AffineSubspace AffineSubspace::empty(Index ambient_dim) {
  return AffineSubspace(ambient_dim, Matrix(ambient_dim, 0), Vector::Zero(ambient_dim), true);
}

AffineSubspace AffineSubspace::whole(Index ambient_dim) {
  return AffineSubspace(ambient_dim, Matrix::Identity(ambient_dim, ambient_dim),
                        Vector::Zero(ambient_dim), false);
}

AffineSubspace AffineSubspace::point(const Vector& p) {
  return AffineSubspace(p.size(), Matrix(p.size(), 0), p, false);
}

AffineSubspace AffineSubspace::through(const Matrix& orthonormal_basis, const Vector& x0) {
  require_dims(orthonormal_basis.rows() == x0.size(), "basis rows must match point dimension");
  Vector p = x0 - orthonormal_basis * (orthonormal_basis.transpose() * x0);
  return AffineSubspace(x0.size(), orthonormal_basis, std::move(p), false);
}

AffineSubspace AffineSubspace::from_equations(const Matrix& c, const Vector& d, double tol) {
  require_dims(c.rows() == d.size(), "constraint matrix has " + std::to_string(c.rows()) +
                                         " rows but rhs has " + std::to_string(d.size()));
  const Index n = c.cols();
  const auto solved = linalg::solve_least_squares(c, d, tol);
  if (!solved.consistent) return empty(n);
  return through(linalg::null_space(c, tol, 1.0), solved.x);
}

AffineSubspace AffineSubspace::span(const Matrix& vectors, double tol) {
  return through(linalg::column_space_basis(vectors, tol), Vector::Zero(vectors.rows()));
}

Matrix AffineSubspace::normals() const {
  if (empty_) return Matrix::Identity(n_, n_);
  return linalg::orthogonal_complement(basis_);
}

Vector AffineSubspace::project(const Vector& x) const {
  require_dims(x.size() == n_, "point dimension does not match subspace");
  return offset_ + basis_ * (basis_.transpose() * (x - offset_));
}

bool AffineSubspace::contains(const Vector& x, double tol) const {
  require_dims(x.size() == n_, "point has dimension " + std::to_string(x.size()) +
                                   ", subspace lives in R^" + std::to_string(n_));
  if (empty_) return false;
  const Vector r = x - offset_;
  const double off = (r - basis_ * (basis_.transpose() * r)).norm();
  return off <= tol * std::max({1.0, x.norm(), offset_.norm()});
}

AffineSubspace AffineSubspace::intersect(const AffineSubspace& other, double tol) const {
  require_dims(n_ == other.n_, "cannot intersect subspaces of different ambient dimension");
  if (empty_ || other.empty_) return empty(n_);
  const Matrix normals_other = other.normals();
  const Matrix a = normals_other.transpose() * basis_;
  const Vector rhs = normals_other.transpose() * (other.offset_ - offset_);
  const auto solved = linalg::solve_least_squares(a, rhs, tol);
  if (!solved.consistent) return empty(n_);
  const Matrix kernel = linalg::null_space(a, tol, 1.0);
  return through(basis_ * kernel, offset_ + basis_ * solved.x);
}

bool AffineSubspace::equals(const AffineSubspace& other, double tol) const {
  if (n_ != other.n_) return false;
  if (empty_ || other.empty_) return empty_ == other.empty_;
  if (dim() != other.dim()) return false;
  if (n_ == 0) return true;
  const double proj_diff =
      (linalg::projector(basis_) - linalg::projector(other.basis_)).cwiseAbs().maxCoeff();
  if (proj_diff > tol) return false;
  const double scale = std::max({1.0, offset_.cwiseAbs().maxCoeff(),
                                 other.offset_.cwiseAbs().maxCoeff()});
  return (offset_ - other.offset_).cwiseAbs().maxCoeff() <= tol * scale;
}

}  // namespace bifun
