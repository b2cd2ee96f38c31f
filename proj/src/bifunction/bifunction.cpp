#include "bifun/bifunction.hpp"

#include <string>
#include <utility>

#include "bifun/error.hpp"

namespace bifun {

namespace {

std::string dims(const QuadBifunction& f) {
  return "R^" + std::to_string(f.src_dim()) + " -> R^" + std::to_string(f.dst_dim());
}

// Rows picking coordinates [start, start + len) out of R^total.
Matrix pick(Index total, Index start, Index len) {
  Matrix m = Matrix::Zero(len, total);
  for (Index i = 0; i < len; ++i) m(i, start + i) = 1.0;
  return m;
}

Matrix stack(const Matrix& top, const Matrix& bottom) {
  Matrix m(top.rows() + bottom.rows(), top.cols());
  m << top, bottom;
  return m;
}

// Concave optimization is carried out on negated data, so an unbounded
// infimum of the stored graphs is an unbounded supremum of the bifunction.
template <class Fn>
Pcqf optimize(Polarity polarity, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (polarity == Polarity::concave && e.code() == ErrorCode::UnboundedBelow) {
      std::string msg = e.what();
      const std::string prefix = std::string(to_string(ErrorCode::UnboundedBelow)) + ": ";
      if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
      throw Error(ErrorCode::UnboundedAbove, "supremum is +inf (" + msg + ")");
    }
    throw;
  }
}

Pcqf indicator_of_kernel(const Matrix& c) {
  return Pcqf::indicator(AffineSubspace::from_equations(c, Vector::Zero(c.rows())));
}

}  // namespace

QuadBifunction::QuadBifunction(Index src_dim, Index dst_dim, Pcqf stored_graph, Polarity polarity)
    : src_(src_dim), dst_(dst_dim), graph_(std::move(stored_graph)), polarity_(polarity) {
  require_dims(src_dim >= 0 && dst_dim >= 0 && graph_.ambient_dim() == src_dim + dst_dim,
               "graph lives on R^" + std::to_string(graph_.ambient_dim()) + ", expected R^" +
                   std::to_string(src_dim + dst_dim));
}

ExtReal QuadBifunction::operator()(const Vector& x, const Vector& y) const {
  require_dims(x.size() == src_ && y.size() == dst_,
               "argument dimensions (" + std::to_string(x.size()) + ", " + std::to_string(y.size()) +
                   ") do not match R^" + std::to_string(src_) + " -> R^" + std::to_string(dst_));
  Vector xy(src_ + dst_);
  xy << x, y;
  const ExtReal v = graph_(xy);
  return is_convex() ? v : -v;
}

QuadBifunction state(const Pcqf& f) { return {0, f.ambient_dim(), f, Polarity::convex}; }

QuadBifunction effect(const Pcqf& f) { return {f.ambient_dim(), 0, f, Polarity::convex}; }

ExtReal scalar_value(const QuadBifunction& f) {
  require_dims(f.src_dim() == 0 && f.dst_dim() == 0, "not a scalar: " + dims(f));
  return f(Vector(0), Vector(0));
}

QuadBifunction identity(Index n) { return from_linear_map(Matrix::Identity(n, n)); }

QuadBifunction compose(const QuadBifunction& f, const QuadBifunction& g, double tol) {
  if (f.polarity() != g.polarity()) {
    throw Error(ErrorCode::PolarityMismatch, std::string("cannot compose a ") +
                                                 to_string(f.polarity()) + " bifunction after a " +
                                                 to_string(g.polarity()) + " one");
  }
  require_dims(g.dst_dim() == f.src_dim(), "cannot compose " + dims(f) + " after " + dims(g));
  const Index m = g.src_dim();
  const Index n = g.dst_dim();
  const Index k = f.dst_dim();
  const Index total = m + k + n;  // ordering (x, z, y); y is eliminated
  const Matrix to_g = stack(pick(total, 0, m), pick(total, m + k, n));
  const Matrix to_f = stack(pick(total, m + k, n), pick(total, m, k));
  const Vector origin = Vector::Zero(m + n);
  const Vector origin_f = Vector::Zero(n + k);
  Pcqf joint = add(pullback(g.stored(), to_g, origin, tol),
                   pullback(f.stored(), to_f, origin_f, tol), tol);
  Pcqf graph = optimize(f.polarity(), [&] { return partial_infimum(joint, m + k, tol); });
  return {m, k, std::move(graph), f.polarity()};
}

QuadBifunction tensor(const QuadBifunction& f, const QuadBifunction& g, double tol) {
  if (f.polarity() != g.polarity()) {
    throw Error(ErrorCode::PolarityMismatch, "cannot tensor bifunctions of different polarity");
  }
  const Index m1 = f.src_dim(), n1 = f.dst_dim();
  const Index m2 = g.src_dim(), n2 = g.dst_dim();
  const Index total = m1 + m2 + n1 + n2;  // ((x1, x2), (y1, y2))
  const Matrix to_f = stack(pick(total, 0, m1), pick(total, m1 + m2, n1));
  const Matrix to_g = stack(pick(total, m1, m2), pick(total, m1 + m2 + n1, n2));
  Pcqf graph = add(pullback(f.stored(), to_f, Vector::Zero(m1 + n1), tol),
                   pullback(g.stored(), to_g, Vector::Zero(m2 + n2), tol), tol);
  return {m1 + m2, n1 + n2, std::move(graph), f.polarity()};
}

QuadBifunction adjoint(const QuadBifunction& f, double tol) {
  const Index m = f.src_dim();
  const Index n = f.dst_dim();
  const Pcqf conj = conjugate(f.stored(), tol);
  // Result variables are (y*, x*). Convex f: stored result f*(-x*, y*).
  // Concave -f: result f*(x*, -y*).
  const double sx = f.is_convex() ? -1.0 : 1.0;
  const double sy = f.is_convex() ? 1.0 : -1.0;
  const Matrix to_conj = stack(sx * pick(n + m, n, m), sy * pick(n + m, 0, n));
  Pcqf graph = pullback(conj, to_conj, Vector::Zero(m + n), tol);
  return {n, m, std::move(graph), opposite(f.polarity())};
}

QuadBifunction dagger(const QuadBifunction& f, double tol) {
  const Index m = f.src_dim();
  const Index n = f.dst_dim();
  const Matrix to_f = stack(pick(n + m, n, m), pick(n + m, 0, n));
  return {n, m, pullback(f.stored(), to_f, Vector::Zero(m + n), tol), f.polarity()};
}

QuadBifunction inverse(const QuadBifunction& f, double tol) { return negate(dagger(f, tol)); }

QuadBifunction negate(const QuadBifunction& f) {
  return {f.src_dim(), f.dst_dim(), f.stored(), opposite(f.polarity())};
}

QuadBifunction swap(Index m, Index n) {
  Matrix perm = Matrix::Zero(n + m, m + n);
  perm.topRightCorner(n, n) = Matrix::Identity(n, n);
  perm.bottomLeftCorner(m, m) = Matrix::Identity(m, m);
  return from_linear_map(perm);
}

QuadBifunction generator(GeneratorKind kind, Index n) {
  require_dims(n >= 0, "generator dimension must be non-negative");
  const Matrix id = Matrix::Identity(n, n);
  switch (kind) {
    case GeneratorKind::copy:
      return from_linear_map(stack(id, id));
    case GeneratorKind::comp: {
      Matrix c(2 * n, 3 * n);
      c << id, Matrix::Zero(n, n), -id, Matrix::Zero(n, n), id, -id;
      return {2 * n, n, indicator_of_kernel(c), Polarity::convex};
    }
    case GeneratorKind::discard:
      return {n, 0, Pcqf::zero(n), Polarity::convex};
    case GeneratorKind::unit:
      return {0, n, Pcqf::zero(n), Polarity::convex};
    case GeneratorKind::add: {
      Matrix a(n, 2 * n);
      a << id, id;
      return from_linear_map(a);
    }
    case GeneratorKind::coadd: {
      Matrix c(n, 3 * n);
      c << id, -id, -id;
      return {n, 2 * n, indicator_of_kernel(c), Polarity::convex};
    }
    case GeneratorKind::zero:
      return {0, n, Pcqf::indicator(AffineSubspace::point(Vector::Zero(n))), Polarity::convex};
    case GeneratorKind::cozero:
      return {n, 0, Pcqf::indicator(AffineSubspace::point(Vector::Zero(n))), Polarity::convex};
  }
  throw Error(ErrorCode::Precondition, "unknown generator");
}

QuadBifunction from_linear_map(const Matrix& a, double tol) {
  const Index m = a.cols();
  const Index n = a.rows();
  Matrix c(n, m + n);
  c << a, -Matrix::Identity(n, n);
  return {m, n, Pcqf::indicator(AffineSubspace::from_equations(c, Vector::Zero(n), tol)),
          Polarity::convex};
}

QuadBifunction from_linear_relation(const Matrix& spanning, Index src_dim, double tol) {
  require_dims(src_dim >= 0 && src_dim <= spanning.rows(),
               "source dimension exceeds the relation's ambient dimension");
  return {src_dim, spanning.rows() - src_dim, Pcqf::indicator(AffineSubspace::span(spanning, tol)),
          Polarity::convex};
}

QuadBifunction perturbation_function(const QuadBifunction& f, double tol) {
  QuadBifunction discard = generator(GeneratorKind::discard, f.dst_dim());
  if (!f.is_convex()) discard = negate(discard);
  return compose(discard, f, tol);
}

bool equal_within(const QuadBifunction& f, const QuadBifunction& g, double tol) {
  return f.src_dim() == g.src_dim() && f.dst_dim() == g.dst_dim() &&
         f.polarity() == g.polarity() && equal_within(f.stored(), g.stored(), tol);
}

Discardability is_discardable(const QuadBifunction& f, Hypergraph structure, double tol) {
  const Index m = f.src_dim();
  if (structure == Hypergraph::additive) {
    try {
      const QuadBifunction p = perturbation_function(f);
      if (equal_within(p.stored(), Pcqf::zero(m), tol)) return {true, ""};
      return {false, std::string(f.is_convex() ? "inf" : "sup") +
                         " over the output is not identically zero"};
    } catch (const Error& e) {
      if (!e.is_improper()) throw;
      return {false, e.what()};
    }
  }
  const Matrix at_zero = stack(Matrix::Identity(m, m), Matrix::Zero(f.dst_dim(), m));
  const Pcqf restricted = pullback(f.stored(), at_zero, Vector::Zero(m + f.dst_dim()));
  if (equal_within(restricted, Pcqf::indicator(AffineSubspace::point(Vector::Zero(m))), tol)) {
    return {true, ""};
  }
  return {false, "F(x, 0) is not the indicator of x = 0"};
}

}  // namespace bifun
