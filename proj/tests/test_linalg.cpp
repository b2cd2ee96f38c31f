#include "doctest.h"

#include <cmath>

#include "bifun/error.hpp"
#include "bifun/linalg.hpp"
#include "bifun/random.hpp"
#include "support.hpp"

using namespace bifun;
using testing::mat;
using testing::max_abs_diff;
using testing::vec;

namespace {

Matrix random_low_rank(random::Generator& gen, Index rows, Index cols, Index rank) {
  return gen.matrix(rows, rank) * gen.matrix(rank, cols);
}

}  // namespace

TEST_CASE("sym_eig on small symmetric matrices") {
  SUBCASE("diagonal") {
    const auto e = linalg::sym_eig(mat(2, 2, {2, 0, 0, 0}));
    CHECK(e.values(0) == doctest::Approx(2.0));
    CHECK(e.values(1) == doctest::Approx(0.0));
    CHECK(std::abs(e.vectors(0, 0)) == doctest::Approx(1.0));
  }
  SUBCASE("identity") {
    const auto e = linalg::sym_eig(Matrix::Identity(3, 3));
    for (Index i = 0; i < 3; ++i) CHECK(e.values(i) == doctest::Approx(1.0));
    CHECK(max_abs_diff(e.vectors.transpose() * e.vectors, Matrix::Identity(3, 3)) < 1e-12);
  }
  SUBCASE("all ones") {
    const Matrix m = mat(2, 2, {1, 1, 1, 1});
    const auto e = linalg::sym_eig(m);
    CHECK(e.values(0) == doctest::Approx(2.0));
    CHECK(std::abs(e.values(1)) < 1e-12);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(e.vectors.col(0).dot(vec({r, r}))) == doctest::Approx(1.0));
    CHECK(std::abs(e.vectors.col(1).dot(vec({r, -r}))) == doctest::Approx(1.0));
    CHECK(max_abs_diff(e.vectors * e.values.asDiagonal() * e.vectors.transpose(), m) < 1e-12);
  }
  SUBCASE("asymmetric input is rejected") {
    try {
      linalg::sym_eig(mat(2, 2, {1, 2, 0, 1}));
      FAIL("expected NotSymmetric");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotSymmetric);
    }
  }
}

TEST_CASE("column_space_basis") {
  const Matrix b = linalg::column_space_basis(mat(2, 2, {1, 1, 1, 1}));
  REQUIRE(b.cols() == 1);
  CHECK(std::abs(b(0, 0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(b(0, 0) == doctest::Approx(b(1, 0)));
  CHECK(linalg::column_space_basis(Matrix::Zero(3, 2)).cols() == 0);
  const Matrix plane = linalg::column_space_basis(mat(3, 2, {1, 0, 0, 1, 0, 0}));
  REQUIRE(plane.cols() == 2);
  CHECK(plane.row(2).norm() < 1e-12);
  CHECK(max_abs_diff(plane.transpose() * plane, Matrix::Identity(2, 2)) < 1e-12);
}

TEST_CASE("orthogonal_complement") {
  const Matrix c = linalg::orthogonal_complement(mat(2, 1, {1, 0}));
  REQUIRE(c.cols() == 1);
  CHECK(std::abs(c(1, 0)) == doctest::Approx(1.0));
  CHECK(linalg::orthogonal_complement(Matrix::Identity(3, 3)).cols() == 0);
  const Matrix full = linalg::orthogonal_complement(Matrix(2, 0));
  CHECK(full.cols() == 2);
  CHECK(max_abs_diff(full.transpose() * full, Matrix::Identity(2, 2)) < 1e-12);
  try {
    linalg::orthogonal_complement(mat(2, 1, {2, 0}));
    FAIL("expected NotOrthonormal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotOrthonormal);
  }
}

TEST_CASE("pseudoinverse examples") {
  CHECK(max_abs_diff(linalg::pseudoinverse(mat(2, 2, {2, 0, 0, 0})), mat(2, 2, {0.5, 0, 0, 0})) < 1e-14);
  const Matrix m = mat(2, 2, {2, 1, 1, 3});
  CHECK(max_abs_diff(linalg::pseudoinverse(m), m.inverse()) < 1e-12);
  const Matrix col = mat(2, 1, {1, 1});
  const Matrix p = linalg::pseudoinverse(col);
  CHECK(max_abs_diff(p, mat(1, 2, {0.5, 0.5})) < 1e-14);
  // [1;1] [.5 .5] [1;1] = [1;1] by hand.
  CHECK(max_abs_diff(col * p * col, col) < 1e-14);
}

TEST_CASE("is_psd examples") {
  CHECK(linalg::is_psd(Matrix::Identity(2, 2)));
  CHECK_FALSE(linalg::is_psd(mat(2, 2, {1, 0, 0, -1})));
  CHECK(linalg::is_psd(mat(2, 2, {1, 1, 1, 1})));
  try {
    linalg::is_psd(mat(2, 2, {1, 3, 0, 1}));
    FAIL("expected NotSymmetric");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSymmetric);
  }
}

TEST_CASE("clamp_psd snaps round-off and rejects real negative curvature") {
  const Matrix snapped = linalg::clamp_psd(mat(2, 2, {1, 0, 0, -1e-15}));
  CHECK(snapped(1, 1) == 0.0);
  try {
    linalg::clamp_psd(mat(2, 2, {1, 0, 0, -1e-3}));
    FAIL("expected NotConvex");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotConvex);
  }
}

TEST_CASE("solve_least_squares reports consistency") {
  const Matrix a = mat(2, 1, {1, 1});
  const auto ok = linalg::solve_least_squares(a, vec({2, 2}));
  CHECK(ok.consistent);
  CHECK(ok.x(0) == doctest::Approx(2.0));
  CHECK_FALSE(linalg::solve_least_squares(a, vec({1, 2})).consistent);
  CHECK(linalg::solve_least_squares(Matrix(0, 3), Vector(0)).consistent);
}

TEST_CASE("block_diag with empty blocks") {
  const Matrix m = linalg::block_diag(Matrix(0, 0), mat(1, 1, {4}));
  CHECK(m.rows() == 1);
  CHECK(m(0, 0) == 4.0);
  CHECK(linalg::block_diag(Matrix(2, 0), Matrix(0, 1)).rows() == 2);
}

TEST_CASE("Penrose identities on random rank-deficient matrices") {
  random::Generator gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Index r = gen.integer(1, 6), c = gen.integer(1, 6);
    const Matrix m = random_low_rank(gen, r, c, gen.integer(0, std::min(r, c)));
    const Matrix p = linalg::pseudoinverse(m);
    CHECK(max_abs_diff(m * p * m, m) < 1e-8);
    CHECK(max_abs_diff(p * m * p, p) < 1e-8);
    CHECK(max_abs_diff((m * p).transpose(), m * p) < 1e-8);
    CHECK(max_abs_diff((p * m).transpose(), p * m) < 1e-8);
  }
}

TEST_CASE("eigen reconstruction, complements and rank monotonicity") {
  random::Generator gen(12);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = gen.integer(1, 6);
    const Matrix a = gen.matrix(n, n);
    const Matrix m = a + a.transpose();
    const auto e = linalg::sym_eig(m);
    CHECK(max_abs_diff(e.vectors * e.values.asDiagonal() * e.vectors.transpose(), m) < 1e-8);
    for (Index i = 1; i < n; ++i) CHECK(e.values(i - 1) >= e.values(i));

    const Matrix b = linalg::column_space_basis(random_low_rank(gen, n, n, gen.integer(0, n)));
    const Matrix cc = linalg::orthogonal_complement(linalg::orthogonal_complement(b));
    CHECK(max_abs_diff(linalg::projector(cc), linalg::projector(b)) < 1e-8);

    // Singular values spread over many decades.
    Matrix d = Matrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) d(i, i) = std::pow(10.0, -2.0 * static_cast<double>(i));
    const Matrix q = gen.orthogonal(n);
    const Matrix spread = q * d * q.transpose();
    Index previous = n + 1;
    for (double tol : {1e-12, 1e-9, 1e-6, 1e-3, 1e-1}) {
      const Index rank = linalg::column_space_basis(spread, tol).cols();
      CHECK(rank <= previous);
      previous = rank;
    }
    const Matrix k = linalg::null_space(spread, 1e-3);
    CHECK((spread * k).norm() < 1e-2 * std::max<double>(1.0, static_cast<double>(k.cols())));
  }
}
