#include "doctest.h"

#include "bifun/error.hpp"
#include "bifun/gauss.hpp"
#include "bifun/random.hpp"
#include "support.hpp"

using namespace bifun;
using testing::mat;
using testing::vec;

namespace {

bool same(const QuadBifunction& f, const QuadBifunction& g, double tol = 1e-7) {
  return equal_within(f, g, tol);
}

QuadBifunction concave(GeneratorKind k, Index n) { return negate(generator(k, n)); }

// Independent evaluation of the composition formula.
GaussMap by_formula(const GaussMap& f, const GaussMap& g) {
  const Matrix a = f.a() * g.a();
  Vector mu = f.mu();
  mu += f.a() * g.mu();
  Matrix sigma = f.sigma();
  sigma += f.a() * g.sigma() * f.a().transpose();
  return {a, mu, sigma};
}

}  // namespace

TEST_CASE("GaussMap validation") {
  CHECK_THROWS_AS(GaussMap(mat(1, 1, {1}), vec({0, 0}), mat(1, 1, {1})), Error);
  try {
    GaussMap::state(vec({0}), mat(1, 1, {-1}));
    FAIL("expected NotConvex");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotConvex);
  }
  // Round-off asymmetry and tiny negative eigenvalues are absorbed.
  const GaussMap s = GaussMap::state(vec({0, 0}), mat(2, 2, {1, 1 + 1e-13, 1, 1}));
  CHECK(s.sigma()(0, 1) == s.sigma()(1, 0));
}

TEST_CASE("gauss_compose and gauss_tensor") {
  const GaussMap s1(Matrix::Identity(2, 2), Vector::Zero(2), mat(2, 2, {1, 0.5, 0.5, 2}));
  const GaussMap s2(Matrix::Identity(2, 2), Vector::Zero(2), mat(2, 2, {3, 0, 0, 1}));
  const GaussMap sum = gauss_compose(s1, s2);
  CHECK(testing::max_abs_diff(sum.sigma(), s1.sigma() + s2.sigma()) < 1e-15);
  CHECK(equal_within(gauss_compose(s1, GaussMap::identity(2)), s1));

  random::Generator g(71);
  for (int trial = 0; trial < 50; ++trial) {
    const Index m = g.integer(0, 3), n = g.integer(0, 3), k = g.integer(0, 3);
    const GaussMap f = random::random_gauss(g, n, k);
    const GaussMap h = random::random_gauss(g, m, n);
    CHECK(equal_within(gauss_compose(f, h), by_formula(f, h), 1e-12));
  }

  const GaussMap std1 = GaussMap::state(vec({0}), mat(1, 1, {1}));
  const GaussMap both = gauss_tensor(std1, std1);
  CHECK(both.src_dim() == 0);
  CHECK(testing::max_abs_diff(both.sigma(), Matrix::Identity(2, 2)) == 0.0);
  CHECK(equal_within(gauss_tensor(s1, GaussMap::identity(0)), s1));
}

TEST_CASE("cgf_functor examples") {
  const QuadBifunction c = cgf_functor(GaussMap::state(vec({1.5}), mat(1, 1, {2})));
  for (double y : {-1.0, 0.0, 2.0}) CHECK(c(Vector(0), vec({y})).value() == doctest::Approx(y * y + 1.5 * y));
  const Matrix a = mat(2, 1, {1, -2});
  const QuadBifunction lin = cgf_functor(GaussMap::linear(a));
  const Vector y = vec({0.5, 1});
  CHECK(lin(a.transpose() * y, y).value() == 0.0);
  CHECK(lin(vec({0}), y).is_pos_inf());
  CHECK(same(cgf_functor(GaussMap::identity(3)), identity(3)));
}

TEST_CASE("logpdf_functor examples") {
  const QuadBifunction std_normal = logpdf_functor(GaussMap::state(vec({0}), mat(1, 1, {1})));
  CHECK(std_normal(vec({2}), Vector(0)).value() == doctest::Approx(-2.0));
  const QuadBifunction point = logpdf_functor(GaussMap::state(vec({3}), mat(1, 1, {0})));
  CHECK(point(vec({3}), Vector(0)).value() == 0.0);
  CHECK(point(vec({2}), Vector(0)).is_neg_inf());
  CHECK_FALSE(point.is_convex());
}

TEST_CASE("copy and discard") {
  CHECK(same(cgf_functor(GaussMap::copy(2)), generator(GeneratorKind::coadd, 2)));
  CHECK(same(cgf_functor(GaussMap::discard(2)), generator(GeneratorKind::cozero, 2)));
  CHECK(same(logpdf_functor(GaussMap::copy(2)), concave(GeneratorKind::comp, 2)));
  CHECK(same(cgf_functor(GaussMap::add(2)), generator(GeneratorKind::comp, 2)));
  random::Generator g(72);
  for (int trial = 0; trial < 20; ++trial) {
    const GaussMap f = random::random_gauss(g, 2, 3);
    CHECK(equal_within(gauss_compose(GaussMap::discard(3), f), GaussMap::discard(2)));
  }
  // Copy, then keep the left half.
  Matrix left(2, 4);
  left << Matrix::Identity(2, 2), Matrix::Zero(2, 2);
  CHECK(equal_within(gauss_compose(GaussMap::linear(left), GaussMap::copy(2)), GaussMap::identity(2)));
}

TEST_CASE("functoriality, adjointness and discardability on random maps") {
  random::Generator g(73);
  for (int trial = 0; trial < 100; ++trial) {
    const Index m = g.integer(0, 3), n = g.integer(0, 3), k = g.integer(0, 3);
    const GaussMap f = random::random_gauss(g, n, k);
    const GaussMap h = random::random_gauss(g, m, n);
    const GaussMap fh = gauss_compose(f, h);
    CHECK(same(cgf_functor(fh), compose(cgf_functor(f), cgf_functor(h))));
    CHECK(same(logpdf_functor(fh), compose(logpdf_functor(h), logpdf_functor(f))));
    CHECK(same(adjoint(cgf_functor(f)), logpdf_functor(f)));
    CHECK(same(adjoint(logpdf_functor(f)), cgf_functor(f)));
    CHECK(same(cgf_functor(gauss_tensor(f, h)), tensor(cgf_functor(f), cgf_functor(h))));
    CHECK(is_discardable(cgf_functor(f), Hypergraph::coadditive).discardable);
    CHECK(is_discardable(dagger(logpdf_functor(f)), Hypergraph::additive).discardable);
  }
}

TEST_CASE("sum of independent Gaussians") {
  random::Generator g(74);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = g.integer(1, 3);
    const GaussMap s1 = random::random_gauss(g, 0, n), s2 = random::random_gauss(g, 0, n);
    const GaussMap total = GaussMap::state(s1.mu() + s2.mu(), s1.sigma() + s2.sigma());
    // Cumulant generating functions add.
    const QuadBifunction both_cgf = tensor(cgf_functor(s1), cgf_functor(s2));
    CHECK(same(compose(generator(GeneratorKind::comp, n), both_cgf), cgf_functor(total)));
    // Log-densities sup-convolve.
    const QuadBifunction both_log = tensor(logpdf_state(s1), logpdf_state(s2));
    CHECK(same(compose(concave(GeneratorKind::add, n), both_log), logpdf_state(total)));
  }
}

TEST_CASE("logpdf does not depend on the generalized inverse of Sigma") {
  random::Generator g(75);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = g.integer(1, 4);
    const Matrix sigma = g.psd(n, g.integer(0, n), 0.3, 3.0);
    const Matrix p = linalg::pseudoinverse(sigma);
    const Matrix id = Matrix::Identity(n, n);
    const Matrix other = p + (id - p * sigma) * g.matrix(n, n) + g.matrix(n, n) * (id - sigma * p);
    const Vector y = sigma * g.vector(n);  // in im(Sigma)
    CHECK(y.dot(other * y) == doctest::Approx(y.dot(p * y)).epsilon(1e-8));
  }
}

TEST_CASE("ext_cgf") {
  const Pcqf flat = ext_cgf({vec({0}), mat(1, 1, {1}), mat(1, 1, {1})});
  CHECK(equal_within(flat, Pcqf::indicator(AffineSubspace::point(vec({0})))));
  CHECK(equal_within(flat, conjugate(Pcqf::zero(1))));
  CHECK(equal_within(ext_cgf({vec({0}), mat(1, 1, {1}), Matrix(1, 0)}),
                     Pcqf::unconstrained(mat(1, 1, {1}), vec({0}), 0)));
  const Pcqf plane = ext_cgf({vec({0, 0}), Matrix::Identity(2, 2), mat(2, 1, {1, 0})});
  CHECK(plane(vec({0, 2})).value() == doctest::Approx(2.0));
  CHECK(plane(vec({1, 2})).is_pos_inf());
}

TEST_CASE("conditioning") {
  const GaussMap std1 = GaussMap::state(vec({0}), mat(1, 1, {1}));
  const QuadBifunction indep = logpdf_state(gauss_tensor(std1, std1));
  const QuadBifunction cond = condition_logpdf(indep, vec({0}));
  CHECK(same(cond, logpdf_state(std1)));

  // (X, X): copy of a standard normal; observing the second copy pins the first.
  const QuadBifunction joint = logpdf_state(gauss_compose(GaussMap::copy(1), std1));
  const double c = 1.7;
  const QuadBifunction pinned = condition_logpdf(joint, vec({c}));
  CHECK(pinned(Vector(0), vec({c})).value() == doctest::Approx(-0.5 * c * c));
  CHECK(pinned(Vector(0), vec({c + 0.1})).is_neg_inf());

  // Joint with a degenerate observed block.
  const QuadBifunction degenerate =
      logpdf_state(GaussMap::state(vec({0, 1}), mat(2, 2, {1, 0, 0, 0})));
  try {
    condition_logpdf(degenerate, vec({2}));
    FAIL("expected InfeasibleObservation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InfeasibleObservation);
  }

  random::Generator g(76);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = g.integer(1, 2), k = g.integer(1, 2);
    const GaussMap s = random::random_gauss(g, 0, n + k, false);
    const Vector value = g.vector(k);
    const QuadBifunction h = logpdf_state(s);
    const QuadBifunction restricted = condition_logpdf(h, value);
    // Against the classical formula, up to an additive constant.
    const auto classical = testing::schur_condition(s.mu(), s.sigma(), n, value);
    const QuadBifunction expected = logpdf_state(GaussMap::state(classical.mean, classical.cov));
    const double shift = restricted(Vector(0), classical.mean).value();
    CHECK(same({0, n, add_affine(expected.stored(), Vector::Zero(n), -shift), Polarity::concave},
               restricted, 1e-6));
    // Covariance side: conditioning the adjoint equals the adjoint of conditioning.
    CHECK(same(condition_cgf(adjoint(h), value), adjoint(restricted)));
  }
}
