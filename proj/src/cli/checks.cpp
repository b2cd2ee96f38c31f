#include "bifun/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "bifun/error.hpp"
#include "bifun/gauss.hpp"
#include "bifun/oracle.hpp"
#include "bifun/random.hpp"

namespace bifun::checks {

namespace {

constexpr double kTol = 1e-7;
constexpr double kGeneratorTol = 1e-9;
constexpr int kOracleInstances = 30;

class Tally {
 public:
  explicit Tally(std::string name) { result_.name = std::move(name); }

  // Runs one check. A throwing check fails unless `improper_skips` is set and
  // the error is an improper-composite diagnostic.
  void run(const std::string& label, const std::function<bool()>& check, bool improper_skips = false) {
    try {
      if (check()) {
        ++result_.passed;
      } else {
        fail(label);
      }
    } catch (const Error& e) {
      if (improper_skips && e.is_improper()) {
        ++result_.skipped;
      } else {
        fail(label + ": " + e.what());
      }
    }
  }

  void note_ratio(double r) { result_.worst_error_ratio = std::max(result_.worst_error_ratio, r); }
  SuiteResult take() { return std::move(result_); }

 private:
  void fail(const std::string& what) {
    ++result_.failed;
    result_.failures.push_back(what);
  }

  SuiteResult result_;
};

std::string tag(const char* what, int i) { return std::string(what) + " #" + std::to_string(i); }

// ------------------------------------------------------------ conjugation

SuiteResult conjugation_suite(const SuiteOptions& opt) {
  Tally t("conjugation");
  random::Generator gen(opt.seed);
  for (int i = 0; i < opt.instances; ++i) {
    const Index n = gen.integer(1, 4);
    const Pcqf f = random::random_pcqf(gen, n);
    const Pcqf g = random::random_pcqf(gen, n);
    const Pcqf fs = conjugate(f);

    t.run(tag("double conjugation", i), [&] { return equal_within(conjugate(fs), f, kTol); });

    t.run(tag("Fenchel-Young", i), [&] {
      for (int k = 0; k < 4; ++k) {
        const Vector x = k % 2 ? f.domain().project(gen.vector(n)) : gen.vector(n);
        const Vector s = k < 2 ? fs.domain().project(gen.vector(n)) : gen.vector(n);
        const double pairing = s.dot(x);
        if ((f(x, 1e-7) + fs(s, 1e-7)).value() < pairing - kTol * std::max(1.0, std::abs(pairing))) return false;
      }
      // Equality on the graph of the subdifferential.
      const Vector x = f.domain().project(gen.vector(n));
      const Matrix normals = f.domain().normals();
      const Vector s = f.ambient_quadratic() * x + f.ambient_linear() + normals * gen.vector(normals.cols());
      const double gap = (f(x, 1e-7) + fs(s, 1e-7)).value() - s.dot(x);
      return std::abs(gap) <= 1e-6 * std::max(1.0, std::abs(s.dot(x)));
    });

    t.run(tag("exchange law", i),
          [&] { return equal_within(conjugate(inf_convolution(f, g)), add(fs, conjugate(g)), kTol); },
          /*improper_skips=*/true);

    t.run(tag("elementary round trip", i), [&] {
      const ElementaryForm e = to_elementary(f);
      return equal_within(from_elementary(e), f, kTol) &&
             equal_within(from_elementary(conjugate_elementary(e)), fs, kTol);
    });

    t.run(tag("generalized inverse independence", i), [&] {
      const GeneralizedInverse other = [&gen](const Matrix& q) {
        const Matrix p = linalg::pseudoinverse(q, 1e-9, 1.0);
        const Matrix id = Matrix::Identity(q.rows(), q.rows());
        return Matrix(p + (id - p * q) * gen.matrix(q.rows(), q.rows()) +
                      gen.matrix(q.rows(), q.rows()) * (id - q * p));
      };
      return equal_within(conjugate(f, other), fs, kTol);
    });
  }
  return t.take();
}

// ------------------------------------------------------------ adjoint-functor

Matrix invertible(random::Generator& gen, Index n) {
  Vector s(n);
  for (Index i = 0; i < n; ++i) s(i) = gen.uniform(0.5, 2.0);
  return gen.orthogonal(n) * s.asDiagonal() * gen.orthogonal(n).transpose();
}

SuiteResult adjoint_suite(const SuiteOptions& opt) {
  Tally t("adjoint-functor");
  random::Generator gen(opt.seed + 1);
  for (int i = 0; i < opt.instances; ++i) {
    const Index m = gen.integer(0, 3), n = gen.integer(0, 3), k = gen.integer(0, 3);
    const Matrix a = gen.matrix(n, m), b = gen.matrix(m, k);
    const QuadBifunction fa = from_linear_map(a), fb = from_linear_map(b);

    t.run(tag("F_AB = F_A o F_B", i), [&] { return equal_within(from_linear_map(a * b), compose(fa, fb), kTol); });
    t.run(tag("adjoint of F_A is the concave transpose", i), [&] {
      return equal_within(adjoint(fa), negate(from_linear_map(a.transpose())), kTol);
    });
    t.run(tag("double adjoint", i), [&] { return equal_within(adjoint(adjoint(fa)), fa, kTol); });

    t.run(tag("adjoint reverses composition of relations", i), [&] {
      const QuadBifunction r = random::random_linear_relation(gen, m, n);
      const QuadBifunction s = random::random_linear_relation(gen, k, m);
      return equal_within(adjoint(compose(r, s)), compose(adjoint(s), adjoint(r)), kTol);
    });
    t.run(tag("adjoint reverses composition of Gaussian cgfs", i), [&] {
      const QuadBifunction r = cgf_functor(random::random_gauss(gen, m, n));
      const QuadBifunction s = cgf_functor(random::random_gauss(gen, k, m));
      return equal_within(adjoint(compose(r, s)), compose(adjoint(s), adjoint(r)), kTol);
    });
    t.run(tag("adjoint is monoidal", i), [&] {
      const QuadBifunction r = random::random_linear_relation(gen, m, n);
      const QuadBifunction s = cgf_functor(random::random_gauss(gen, k, m));
      return equal_within(adjoint(tensor(r, s)), tensor(adjoint(r), adjoint(s)), kTol);
    });

    const Index d = gen.integer(1, 3);
    const Matrix inv_a = invertible(gen, d);
    const QuadBifunction fi = from_linear_map(inv_a);
    t.run(tag("inverse of F_A is the concave F_{A^-1}", i), [&] {
      return equal_within(inverse(fi), negate(from_linear_map(inv_a.inverse())), kTol);
    });
    t.run(tag("inverse and adjoint commute", i), [&] {
      return equal_within(inverse(adjoint(fi)), adjoint(inverse(fi)), kTol);
    });
  }
  return t.take();
}

// ------------------------------------------------------------ gauss-functor

SuiteResult gauss_suite(const SuiteOptions& opt) {
  Tally t("gauss-functor");
  random::Generator gen(opt.seed + 2);
  for (int i = 0; i < opt.instances; ++i) {
    t.run(tag("Gaussian pair", i), [&] {
      const Index m = gen.integer(0, 3), n = gen.integer(0, 3), k = gen.integer(0, 3);
      const GaussMap f = random::random_gauss(gen, n, k);
      const GaussMap g = random::random_gauss(gen, m, n);
      const GaussMap fg = gauss_compose(f, g);
      return equal_within(cgf_functor(fg), compose(cgf_functor(f), cgf_functor(g)), kTol) &&
             equal_within(logpdf_functor(fg), compose(logpdf_functor(g), logpdf_functor(f)), kTol) &&
             equal_within(adjoint(cgf_functor(f)), logpdf_functor(f), kTol) &&
             equal_within(adjoint(logpdf_functor(g)), cgf_functor(g), kTol) &&
             equal_within(cgf_functor(gauss_tensor(f, g)), tensor(cgf_functor(f), cgf_functor(g)), kTol) &&
             is_discardable(cgf_functor(f), Hypergraph::coadditive).discardable &&
             is_discardable(dagger(logpdf_functor(f)), Hypergraph::additive).discardable;
    });
  }
  return t.take();
}

// ------------------------------------------------------------ frobenius

struct Family {
  const char* name;
  GeneratorKind split, merge, counit, unit;
};

SuiteResult frobenius_suite() {
  Tally t("frobenius");
  const Family families[] = {
      {"additive", GeneratorKind::copy, GeneratorKind::comp, GeneratorKind::discard, GeneratorKind::unit},
      {"coadditive", GeneratorKind::coadd, GeneratorKind::add, GeneratorKind::cozero, GeneratorKind::zero}};
  for (const Family& fam : families) {
    for (const Polarity pol : {Polarity::convex, Polarity::concave}) {
      for (Index n = 1; n <= 3; ++n) {
        auto gen = [&](GeneratorKind k) {
          const QuadBifunction g = generator(k, n);
          return pol == Polarity::convex ? g : negate(g);
        };
        const QuadBifunction d = gen(fam.split), mu = gen(fam.merge), e = gen(fam.counit), u = gen(fam.unit);
        const QuadBifunction id = pol == Polarity::convex ? identity(n) : negate(identity(n));
        const QuadBifunction sw = pol == Polarity::convex ? swap(n, n) : negate(swap(n, n));
        auto eq = [](const QuadBifunction& a, const QuadBifunction& b) { return equal_within(a, b, kGeneratorTol); };
        const std::string where = std::string(fam.name) + " " + to_string(pol) + " n=" + std::to_string(n) + ": ";

        t.run(where + "coassociativity",
              [&] { return eq(compose(tensor(d, id), d), compose(tensor(id, d), d)); });
        t.run(where + "counit", [&] {
          return eq(compose(tensor(e, id), d), id) && eq(compose(tensor(id, e), d), id);
        });
        t.run(where + "cocommutativity", [&] { return eq(compose(sw, d), d); });
        t.run(where + "associativity",
              [&] { return eq(compose(mu, tensor(mu, id)), compose(mu, tensor(id, mu))); });
        t.run(where + "unit", [&] {
          return eq(compose(mu, tensor(u, id)), id) && eq(compose(mu, tensor(id, u)), id);
        });
        t.run(where + "commutativity", [&] { return eq(compose(mu, sw), mu); });
        t.run(where + "Frobenius law", [&] {
          const QuadBifunction middle = compose(d, mu);
          return eq(compose(tensor(id, mu), tensor(d, id)), middle) &&
                 eq(compose(tensor(mu, id), tensor(id, d)), middle);
        });
        t.run(where + "special", [&] { return eq(compose(mu, d), id); });
      }
    }
  }
  return t.take();
}

// ------------------------------------------------------------ oracle

using oracle::Agreement;
using oracle::GridSpec;
using oracle::SampledFunction;

double tolerance_for(const GridSpec& grid) { return std::max(grid.min_step() * grid.min_step(), 1e-3); }

// Grid-aligned instances only: quadratic data with curvature in a range the
// grid resolves, optima strictly inside the box, constraints on grid lines.
struct OracleCase {
  std::string label;
  Agreement agreement;
  double tol = 0.0;
  Index min_points = 5;
  bool ok() const { return agreement.compared >= min_points && agreement.within(tol); }
};

Matrix curvature(random::Generator& gen, Index n, double lo, double hi) {
  Vector l(n);
  for (Index i = 0; i < n; ++i) l(i) = gen.uniform(lo, hi);
  const Matrix r = gen.orthogonal(n);
  Matrix q = r * l.asDiagonal() * r.transpose();
  return 0.5 * (q + q.transpose());
}

double pick_sign_slope(random::Generator& gen) {
  const double magnitude = gen.chance(0.5) ? 1.0 : 2.0;
  return gen.chance(0.5) ? magnitude : -magnitude;
}

OracleCase partial_infimum_case(random::Generator& gen, Index dim) {
  OracleCase c;
  if (dim == 1) {
    // Scalar minimum of a 1-D quadratic.
    const GridSpec line = GridSpec::uniform(1, -10, 10, 401);
    const double q = gen.uniform(0.5, 2.0), b = gen.uniform(-3, 3) * q, k = gen.normal();
    const Pcqf f = Pcqf::unconstrained(Matrix::Constant(1, 1, q), Vector::Constant(1, b), k);
    const SampledFunction numeric = oracle::grid_partial_infimum(oracle::sample(f, line), 0);
    const Pcqf exact = partial_infimum(f, 0);
    c.label = "partial infimum 1-d";
    c.agreement = oracle::compare(numeric, [&](const Vector& x) { return exact(x).value(); });
    c.tol = tolerance_for(line);
    c.min_points = 1;
    return c;
  }
  const GridSpec plane = GridSpec::uniform(2, -10, 10, 401);
  c.tol = tolerance_for(plane);
  if (gen.chance(0.5)) {
    const Matrix q = curvature(gen, 2, 0.5, 2.0);
    const Vector b = 0.5 * gen.vector(2);
    const Pcqf f = Pcqf::unconstrained(q, b, gen.normal());
    const Pcqf exact = partial_infimum(f, 1);
    const SampledFunction numeric = oracle::grid_partial_infimum(oracle::sample(f, plane), 1);
    c.label = "partial infimum 2-d";
    c.agreement = oracle::compare(
        numeric, [&](const Vector& x) { return exact(x).value(); },
        [&](Index i) {
          const double x = numeric.grid.point(i)(0);
          const double y_star = -(q(1, 0) * x + b(1)) / q(1, 1);
          return std::abs(x) <= 9 && std::abs(y_star) <= 9;
        });
    return c;
  }
  // [y = a x] + 1/2 q y^2 + r x, sampled on the grid points of the line only.
  const double a = pick_sign_slope(gen), q = gen.uniform(0.5, 2.0), r = gen.uniform(-1, 1);
  Matrix qhat = Matrix::Zero(2, 2);
  qhat(1, 1) = q;
  Matrix constraint(1, 2);
  constraint << a, -1;
  const Pcqf f = Pcqf::from_ambient(qhat, Vector{{r, 0.0}}, 0.0, constraint, Vector::Zero(1));
  const Pcqf exact = partial_infimum(f, 1);
  const SampledFunction numeric = oracle::grid_partial_infimum(oracle::sample(f, plane, 1e-9), 1);
  c.label = "partial infimum along a grid line";
  c.agreement = oracle::compare(
      numeric, [&](const Vector& x) { return exact(x).value(); },
      [&](Index i) {
        const double x = numeric.grid.point(i)(0);
        return std::abs(x) <= 9 && std::abs(a * x) <= 9;
      });
  return c;
}

OracleCase conjugate_case(random::Generator& gen, Index dim) {
  OracleCase c;
  if (dim == 1) {
    const GridSpec line = GridSpec::uniform(1, -10, 10, 401);
    const GridSpec dual = GridSpec::uniform(1, -3, 3, 61);
    const double q = gen.uniform(0.5, 2.0), b = gen.uniform(-1, 1);
    const Pcqf f = Pcqf::unconstrained(Matrix::Constant(1, 1, q), Vector::Constant(1, b), gen.normal());
    const Pcqf exact = conjugate(f);
    const auto numeric = oracle::numeric_legendre(oracle::sample(f, line), dual);
    c.label = "conjugate 1-d";
    c.tol = tolerance_for(line);
    c.agreement = oracle::compare(
        numeric.values, [&](const Vector& s) { return exact(s).value(); },
        [&](Index i) { return std::abs((dual.point(i)(0) - b) / q) <= 9; });
    return c;
  }
  const GridSpec plane = GridSpec::uniform(2, -10, 10, 201);
  const GridSpec dual = GridSpec::uniform(2, -3, 3, 21);
  c.tol = tolerance_for(plane);
  if (gen.chance(0.5)) {
    const Matrix q = curvature(gen, 2, 0.5, 2.0);
    const Vector b = 0.5 * gen.vector(2);
    const Pcqf f = Pcqf::unconstrained(q, b, gen.normal());
    const Pcqf exact = conjugate(f);
    const auto numeric = oracle::numeric_legendre(oracle::sample(f, plane), dual);
    const Matrix q_inv = q.inverse();
    c.label = "conjugate 2-d";
    c.agreement = oracle::compare(
        numeric.values, [&](const Vector& s) { return exact(s).value(); },
        [&](Index i) { return (q_inv * (dual.point(i) - b)).lpNorm<Eigen::Infinity>() <= 9; });
    return c;
  }
  // 1/2 q x1^2 + [x2 = a] with a on a grid line.
  const double q = gen.uniform(0.5, 2.0);
  const double a = plane.axes()[1].at(gen.integer(50, 150));
  Matrix qhat = Matrix::Zero(2, 2);
  qhat(0, 0) = q;
  const Pcqf f = Pcqf::from_ambient(qhat, Vector::Zero(2), 0.0, Matrix{{0.0, 1.0}}, Vector::Constant(1, a));
  const Pcqf exact = conjugate(f);
  const auto numeric = oracle::numeric_legendre(oracle::sample(f, plane, 1e-9), dual);
  c.label = "conjugate of a constrained quadratic";
  c.agreement = oracle::compare(numeric.values, [&](const Vector& s) { return exact(s).value(); });
  return c;
}

OracleCase inf_convolution_case(random::Generator& gen, Index dim) {
  OracleCase c;
  if (dim == 1) {
    const GridSpec line = GridSpec::uniform(1, -10, 10, 401);
    c.tol = tolerance_for(line);
    const double qf = gen.uniform(0.5, 2.0), bf = gen.uniform(-1, 1);
    const Pcqf f = Pcqf::unconstrained(Matrix::Constant(1, 1, qf), Vector::Constant(1, bf), gen.normal());
    if (gen.chance(0.5)) {
      const double qg = gen.uniform(0.5, 2.0), bg = gen.uniform(-1, 1);
      const Pcqf g = Pcqf::unconstrained(Matrix::Constant(1, 1, qg), Vector::Constant(1, bg), gen.normal());
      const Pcqf exact = inf_convolution(f, g);
      const SampledFunction numeric = oracle::numeric_inf_convolution(oracle::sample(f, line), oracle::sample(g, line));
      c.label = "inf-convolution 1-d";
      c.agreement = oracle::compare(
          numeric, [&](const Vector& x) { return exact(x).value(); },
          [&](Index i) {
            const double x = line.point(i)(0);
            const double y = (qf * x + bf - bg) / (qf + qg);
            return std::abs(x) <= 9 && std::abs(y) <= 9 && std::abs(x - y) <= 9;
          });
      return c;
    }
    // Convolving with a point indicator shifts.
    const double shift = line.axes()[0].at(gen.integer(150, 250));
    const Pcqf g = Pcqf::indicator(AffineSubspace::point(Vector::Constant(1, shift)));
    const Pcqf exact = inf_convolution(f, g);
    const SampledFunction numeric =
        oracle::numeric_inf_convolution(oracle::sample(f, line), oracle::sample(g, line, 1e-9));
    c.label = "inf-convolution with a point";
    c.agreement = oracle::compare(
        numeric, [&](const Vector& x) { return exact(x).value(); },
        [&](Index i) { return std::abs(line.point(i)(0) - shift) <= 9 && std::abs(line.point(i)(0)) <= 9; });
    return c;
  }
  const GridSpec plane = GridSpec::uniform(2, -4, 4, 81);
  c.tol = tolerance_for(plane);
  const Matrix qf = curvature(gen, 2, 0.5, 1.5), qg = curvature(gen, 2, 0.5, 1.5);
  const Vector bf = 0.3 * gen.vector(2), bg = 0.3 * gen.vector(2);
  const Pcqf f = Pcqf::unconstrained(qf, bf, gen.normal());
  const Pcqf g = Pcqf::unconstrained(qg, bg, gen.normal());
  const Pcqf exact = inf_convolution(f, g);
  const SampledFunction numeric = oracle::numeric_inf_convolution(oracle::sample(f, plane), oracle::sample(g, plane));
  const Matrix total_inv = (qf + qg).inverse();
  c.label = "inf-convolution 2-d";
  c.agreement = oracle::compare(
      numeric, [&](const Vector& x) { return exact(x).value(); },
      [&](Index i) {
        const Vector x = plane.point(i);
        const Vector y = total_inv * (qf * x + bf - bg);
        const double lim = 3.5;
        return x.lpNorm<Eigen::Infinity>() <= lim && y.lpNorm<Eigen::Infinity>() <= lim &&
               (x - y).lpNorm<Eigen::Infinity>() <= lim;
      });
  return c;
}

SuiteResult oracle_suite(const SuiteOptions& opt) {
  Tally t("oracle");
  random::Generator gen(opt.seed + 3);
  using Maker = OracleCase (*)(random::Generator&, Index);
  const Maker makers[] = {partial_infimum_case, conjugate_case, inf_convolution_case};
  for (int i = 0; i < kOracleInstances; ++i) {
    const Maker make = makers[i % 3];
    const Index dim = 1 + (i / 3) % 2;
    t.run(tag("oracle instance", i), [&] {
      const OracleCase c = make(gen, dim);
      t.note_ratio(c.agreement.max_error / c.tol);
      if (c.ok()) return true;
      std::ostringstream msg;
      msg << c.label << ": error " << c.agreement.max_error << " over " << c.agreement.compared
          << " points, tolerance " << c.tol << ", " << c.agreement.infinity_mismatches << " infinity mismatches";
      throw Error(ErrorCode::Precondition, msg.str());
    });
  }
  // The conjugate of |x| is the indicator of [-1, 1].
  t.run("Legendre transform of |x|", [] {
    const GridSpec primal = GridSpec::uniform(1, -5, 5, 2001);
    const GridSpec dual = GridSpec::uniform(1, -1.5, 1.5, 301);
    const auto r = oracle::numeric_legendre(
        oracle::sample([](const Vector& x) { return std::abs(x(0)); }, primal), dual);
    for (Index i = 0; i < dual.size(); ++i) {
      const double s = std::abs(dual.point(i)(0)), v = r.values.at(i);
      if (s <= 0.99 && !(std::abs(v) < 1e-6)) return false;
      if (s >= 1.5 - 1e-12 && !(v > 10)) return false;
    }
    return true;
  });
  return t.take();
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"conjugation", "adjoint-functor", "gauss-functor", "frobenius",
                                                 "oracle"};
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& options) {
  if (name == "conjugation") return conjugation_suite(options);
  if (name == "adjoint-functor") return adjoint_suite(options);
  if (name == "gauss-functor") return gauss_suite(options);
  if (name == "frobenius") return frobenius_suite();
  if (name == "oracle") return oracle_suite(options);
  std::string known;
  for (const auto& n : suite_names()) known += (known.empty() ? "" : ", ") + n;
  throw Error(ErrorCode::UnknownSuite, "'" + name + "' (known suites: " + known + ")");
}

std::string summary(const SuiteResult& r) {
  std::ostringstream out;
  out << r.name << ": " << r.passed << "/" << (r.passed + r.failed) << " passed";
  if (r.skipped > 0) out << ", " << r.skipped << " skipped (improper composite)";
  return out.str();
}

}  // namespace bifun::checks
