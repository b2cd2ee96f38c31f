#include "bifun/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bifun/error.hpp"

namespace bifun::linalg {

namespace {

std::string shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

double asymmetry(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.transpose()).cwiseAbs().maxCoeff();
}

Matrix symmetrize(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "expected a square matrix, got " + shape(m));
  }
  const double scale = m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
  if (asymmetry(m) > tol * std::max(1.0, scale)) {
    throw Error(ErrorCode::NotSymmetric,
                "max |M - M^T| = " + std::to_string(asymmetry(m)) + " exceeds tolerance");
  }
  return 0.5 * (m + m.transpose());
}

SymEig sym_eig(const Matrix& m, double tol) {
  const Matrix s = symmetrize(m, tol);
  const Eigen::Index n = s.rows();
  if (n == 0) return {Vector(0), Matrix(0, 0)};
  Eigen::SelfAdjointEigenSolver<Matrix> solver(s);
  // Eigen sorts ascending.
  SymEig out{solver.eigenvalues().reverse(), solver.eigenvectors().rowwise().reverse()};
  return out;
}

double rank_threshold(double largest, double tol, double scale) {
  return tol * std::max(std::abs(largest), scale);
}

Matrix column_space_basis(const Matrix& m, double tol, double scale) {
  if (m.rows() == 0 || m.cols() == 0) return Matrix(m.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const Vector& sv = svd.singularValues();
  const double thresh = rank_threshold(sv(0), tol, scale);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > thresh) ++rank;
  return svd.matrixU().leftCols(rank);
}

Matrix null_space(const Matrix& m, double tol, double scale) {
  const Eigen::Index cols = m.cols();
  if (cols == 0) return Matrix(0, 0);
  if (m.rows() == 0) return Matrix::Identity(cols, cols);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const Vector& sv = svd.singularValues();
  const double thresh = rank_threshold(sv(0), tol, scale);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > thresh) ++rank;
  return svd.matrixV().rightCols(cols - rank);
}

Matrix orthogonal_complement(const Matrix& basis, double tol) {
  const Eigen::Index n = basis.rows();
  const Eigen::Index k = basis.cols();
  if (k == 0) return Matrix::Identity(n, n);
  const Matrix gram = basis.transpose() * basis;
  if ((gram - Matrix::Identity(k, k)).cwiseAbs().maxCoeff() > tol) {
    throw Error(ErrorCode::NotOrthonormal, "basis columns are not orthonormal");
  }
  if (k >= n) return Matrix(n, 0);
  // B^T has singular values 1, so any threshold well below 1 separates rank.
  return null_space(basis.transpose(), 0.5);
}

Matrix pseudoinverse(const Matrix& m, double tol, double scale) {
  if (m.rows() == 0 || m.cols() == 0) return Matrix::Zero(m.cols(), m.rows());
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sv = svd.singularValues();
  const double thresh = rank_threshold(sv(0), tol, scale);
  Vector inv = Vector::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > thresh) inv(i) = 1.0 / sv(i);
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

bool is_psd(const Matrix& m, double tol) {
  const SymEig eig = sym_eig(m, tol);
  if (eig.values.size() == 0) return true;
  const double largest = eig.values.cwiseAbs().maxCoeff();
  return eig.values.minCoeff() >= -tol * std::max(1.0, largest);
}

Matrix clamp_psd(const Matrix& m, double tol, double scale) {
  const SymEig eig = sym_eig(m, std::max(tol, 1e-12));
  if (eig.values.size() == 0) return Matrix(0, 0);
  const double thresh = rank_threshold(eig.values.cwiseAbs().maxCoeff(), tol, scale);
  Vector lam = eig.values;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) < -thresh) {
      throw Error(ErrorCode::NotConvex,
                  "quadratic form has negative curvature " + std::to_string(lam(i)));
    }
    if (lam(i) <= thresh) lam(i) = 0.0;
  }
  Matrix out = eig.vectors * lam.asDiagonal() * eig.vectors.transpose();
  return 0.5 * (out + out.transpose());
}

Matrix projector(const Matrix& basis) { return basis * basis.transpose(); }

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

LinearSolve solve_least_squares(const Matrix& a, const Vector& rhs, double tol) {
  require_dims(a.rows() == rhs.size(), "system has " + std::to_string(a.rows()) +
                                           " rows but right-hand side has " +
                                           std::to_string(rhs.size()));
  if (a.rows() == 0) return {Vector::Zero(a.cols()), true};
  const Vector x = pseudoinverse(a, tol, 1.0) * rhs;
  const double residual = (a * x - rhs).norm();
  const double opnorm = a.cols() == 0 ? 0.0 : a.jacobiSvd().singularValues()(0);
  const double scale = std::max({1.0, rhs.norm(), opnorm * x.norm()});
  return {x, residual <= 1e3 * tol * scale};
}

}  // namespace bifun::linalg
