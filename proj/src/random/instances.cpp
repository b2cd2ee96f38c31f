#include "bifun/random.hpp"

namespace bifun::random {

Matrix Generator::matrix(Index rows, Index cols) {
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = normal();
  return m;
}

Vector Generator::vector(Index n) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = normal();
  return v;
}

Matrix Generator::orthogonal(Index n) {
  if (n == 0) return Matrix(0, 0);
  const Eigen::HouseholderQR<Matrix> qr(matrix(n, n));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  return q;
}

Matrix Generator::psd(Index n, Index rank, double lo, double hi) {
  const Matrix v = orthogonal(n);
  Vector lambda = Vector::Zero(n);
  for (Index i = 0; i < rank; ++i) lambda(i) = uniform(lo, hi);
  Matrix m = v * lambda.asDiagonal() * v.transpose();
  return 0.5 * (m + m.transpose());
}

Matrix Generator::psd_maybe_singular(Index n, bool allow_singular, double lo, double hi) {
  return psd(n, allow_singular ? integer(0, n) : n, lo, hi);
}

Pcqf random_pcqf(Generator& gen, Index n) {
  const Index constraints = gen.integer(0, n);
  Matrix c = gen.matrix(constraints, n);
  if (constraints >= 2 && gen.chance(0.3)) {
    c.row(constraints - 1) = 0.5 * c.row(0) - 2.0 * c.row(1);
  }
  const Vector x0 = gen.vector(n);
  const Matrix basis = linalg::null_space(c);
  const Index k = basis.cols();
  const Matrix q = gen.psd_maybe_singular(k, true, 0.25, 4.0);
  return Pcqf::from_parametrization(basis, x0, q, gen.vector(k), gen.normal());
}

GaussMap random_gauss(Generator& gen, Index m, Index n, bool allow_singular) {
  return {gen.matrix(n, m), gen.vector(n), gen.psd_maybe_singular(n, allow_singular, 0.3, 3.0)};
}

QuadBifunction random_linear_relation(Generator& gen, Index m, Index n) {
  const Index rank = gen.integer(0, m + n);
  return from_linear_relation(gen.matrix(m + n, rank), m);
}

}  // namespace bifun::random
