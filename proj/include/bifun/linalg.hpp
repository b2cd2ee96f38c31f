#pragma once

// Dense linear algebra with explicit rank tolerances.
//
// Rank decisions everywhere in the library go through this header. A value
// (eigenvalue or singular value) counts as zero when it is at most
// tol * max(largest magnitude, scale); `scale` lets callers pin the threshold
// to a parent matrix so that round-off noise in a sub-block is not promoted to
// signal.

#include <Eigen/Dense>

namespace bifun {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

namespace linalg {

inline constexpr double kDefaultTol = 1e-9;

struct SymEig {
  Vector values;   // descending
  Matrix vectors;  // orthonormal columns, vectors.col(i) pairs with values(i)
};

/// Largest |M_ij - M_ji|.
double asymmetry(const Matrix& m);

/// (M + M^T)/2 after checking that M is square and symmetric within tol.
/// Throws NotSymmetric / DimensionMismatch.
Matrix symmetrize(const Matrix& m, double tol = kDefaultTol);

SymEig sym_eig(const Matrix& m, double tol = kDefaultTol);

/// Threshold below which eigen/singular values count as zero.
double rank_threshold(double largest, double tol, double scale = 0.0);

/// Orthonormal basis of the column space; column count is the numerical rank.
Matrix column_space_basis(const Matrix& m, double tol = kDefaultTol, double scale = 0.0);

/// Orthonormal basis of ker(M).
Matrix null_space(const Matrix& m, double tol = kDefaultTol, double scale = 0.0);

/// Orthonormal basis of span(B)^perp for orthonormal B. Throws NotOrthonormal.
Matrix orthogonal_complement(const Matrix& basis, double tol = 1e-8);

/// Moore-Penrose pseudoinverse.
Matrix pseudoinverse(const Matrix& m, double tol = kDefaultTol, double scale = 0.0);

/// True iff the smallest eigenvalue is >= -tol * max(1, |largest eigenvalue|).
bool is_psd(const Matrix& m, double tol = kDefaultTol);

/// Projects a symmetric matrix onto the PSD cone, snapping eigenvalues below
/// the rank threshold to exactly zero. Throws NotConvex when an eigenvalue is
/// more negative than the threshold.
Matrix clamp_psd(const Matrix& m, double tol = kDefaultTol, double scale = 1.0);

/// Orthogonal projector B B^T onto span(B).
Matrix projector(const Matrix& basis);

Matrix block_diag(const Matrix& a, const Matrix& b);

/// Least-squares solution x = A^+ rhs together with whether A x = rhs holds
/// within tol * max(1, |rhs|).
struct LinearSolve {
  Vector x;
  bool consistent;
};
LinearSolve solve_least_squares(const Matrix& a, const Vector& rhs, double tol = kDefaultTol);

}  // namespace linalg
}  // namespace bifun
