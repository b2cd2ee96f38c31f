#pragma once

// Partial convex quadratic functions (PCQFs): a PSD quadratic plus a linear
// term plus a constant on an affine subspace, +inf elsewhere.
//
// Canonical representation: the domain is p + span(B) with B orthonormal
// (n x k) and p orthogonal to span(B); the function value at p + B z is
// 1/2 z^T Q z + b^T z + c with Q a k x k PSD matrix. An empty domain encodes
// the constant +inf function. -inf is never a value of a PCQF; operations
// that would produce it throw UnboundedBelow / ImproperInput instead.

#include <functional>
#include <vector>

#include "bifun/ext_real.hpp"
#include "bifun/linalg.hpp"

namespace bifun {

using Index = Eigen::Index;

class AffineSubspace {
 public:
  AffineSubspace() = default;  // the empty subset of R^0

  static AffineSubspace empty(Index ambient_dim);
  static AffineSubspace whole(Index ambient_dim);
  static AffineSubspace point(const Vector& p);
  /// {x0 + B w}; B must have orthonormal columns.
  static AffineSubspace through(const Matrix& orthonormal_basis, const Vector& x0);
  /// {x : C x = d}; empty when the system is inconsistent.
  static AffineSubspace from_equations(const Matrix& c, const Vector& d,
                                       double tol = linalg::kDefaultTol);
  /// Linear span of the given columns.
  static AffineSubspace span(const Matrix& vectors, double tol = linalg::kDefaultTol);

  Index ambient_dim() const { return n_; }
  /// Internal dimension k (number of basis columns). Zero for the empty set.
  Index dim() const { return empty_ ? 0 : basis_.cols(); }
  bool is_empty() const { return empty_; }
  const Matrix& basis() const { return basis_; }
  const Vector& offset() const { return offset_; }
  /// Orthonormal basis of span(B)^perp.
  Matrix normals() const;

  Vector project(const Vector& x) const;
  bool contains(const Vector& x, double tol = linalg::kDefaultTol) const;
  AffineSubspace intersect(const AffineSubspace& other, double tol = linalg::kDefaultTol) const;
  /// Projectors and canonical offsets agree within tol.
  bool equals(const AffineSubspace& other, double tol) const;

 private:
  AffineSubspace(Index n, Matrix basis, Vector offset, bool empty)
      : n_(n), basis_(std::move(basis)), offset_(std::move(offset)), empty_(empty) {}

  Index n_ = 0;
  Matrix basis_;
  Vector offset_;
  bool empty_ = true;
};

class Pcqf {
 public:
  Pcqf() = default;  // constant +inf on R^0

  /// Constant +inf on R^n.
  static Pcqf infeasible(Index n);
  /// Constant zero on R^n.
  static Pcqf zero(Index n);
  /// 0 on the subspace, +inf off it.
  static Pcqf indicator(const AffineSubspace& dom);
  /// 1/2 x^T Qhat x + bhat^T x + chat on {C x = d}. Throws NotConvex when
  /// Qhat is not PSD along the directions of the constraint set.
  static Pcqf from_ambient(const Matrix& qhat, const Vector& bhat, double chat,
                           const Matrix& c, const Vector& d,
                           double tol = linalg::kDefaultTol);
  static Pcqf unconstrained(const Matrix& qhat, const Vector& bhat, double chat,
                            double tol = linalg::kDefaultTol);
  /// f(x0 + B w) = 1/2 w^T Q w + b^T w + c for orthonormal B; +inf elsewhere.
  static Pcqf from_parametrization(const Matrix& basis, const Vector& x0, const Matrix& q,
                                   const Vector& b, double c,
                                   double tol = linalg::kDefaultTol);

  Index ambient_dim() const { return dom_.ambient_dim(); }
  bool is_infeasible() const { return dom_.is_empty(); }
  const AffineSubspace& domain() const { return dom_; }
  /// Internal-coordinate data (meaningless for the infeasible function).
  const Matrix& quadratic() const { return q_; }
  const Vector& linear() const { return b_; }
  double constant() const { return c_; }

  /// Ambient form valid on the domain: f(x) = 1/2 x^T Qa x + ba^T x + c.
  Matrix ambient_quadratic() const;
  Vector ambient_linear() const;

  ExtReal operator()(const Vector& x, double tol = linalg::kDefaultTol) const;

 private:
  Pcqf(AffineSubspace dom, Matrix q, Vector b, double c)
      : dom_(std::move(dom)), q_(std::move(q)), b_(std::move(b)), c_(c) {}

  AffineSubspace dom_;
  Matrix q_;
  Vector b_;
  double c_ = 0.0;
};

ExtReal evaluate(const Pcqf& f, const Vector& x, double tol = linalg::kDefaultTol);

/// Pointwise sum; the domain is the intersection of the domains.
Pcqf add(const Pcqf& f, const Pcqf& g, double tol = linalg::kDefaultTol);

/// f + <slope, x> + shift.
Pcqf add_affine(const Pcqf& f, const Vector& slope, double shift);

/// u -> f(M u + t) as a PCQF on R^(cols of M).
Pcqf pullback(const Pcqf& f, const Matrix& m, const Vector& t,
              double tol = linalg::kDefaultTol);

/// x -> inf_y f(x, y), keeping the first `keep` coordinates.
/// Throws UnboundedBelow when the infimum is -inf on the projected domain.
Pcqf partial_infimum(const Pcqf& f, Index keep, double tol = linalg::kDefaultTol);

/// Legendre-Fenchel conjugate, using the Moore-Penrose inverse of the
/// curvature. Throws ImproperInput for the constant +inf function.
Pcqf conjugate(const Pcqf& f, double tol = linalg::kDefaultTol);

/// Any map Q -> Q^- with Q Q^- Q = Q.
using GeneralizedInverse = std::function<Matrix(const Matrix&)>;

/// Conjugate computed with a caller-supplied generalized inverse.
Pcqf conjugate(const Pcqf& f, const GeneralizedInverse& ginv,
               double tol = linalg::kDefaultTol);

/// (f box g)(x) = inf_y f(x - y) + g(y).
Pcqf inf_convolution(const Pcqf& f, const Pcqf& g, double tol = linalg::kDefaultTol);

/// Representation-independent comparison: domains (projector and canonical
/// offset) and ambient forms agree within tol, relative to max(1, magnitude).
bool equal_within(const Pcqf& f, const Pcqf& g, double tol = 1e-7);

/// Curvature flip of elementary conjugation: 0 -> +inf, +inf -> 0, l -> 1/l.
/// Throws NegativeCurvature for l < 0.
double lambda_star(double lambda);

/// f(x) = h(W^T (x - center)) + <slope, x> + constant where
/// h(u) = 1/2 sum_i curvature_i u_i^2 and curvature_i = +inf pins u_i = 0.
struct ElementaryForm {
  Matrix frame;  // orthogonal n x n
  Vector center;
  Vector slope;
  double constant = 0.0;
  std::vector<double> curvatures;  // each in [0, +inf]
};

/// Diagonalizes f; throws ImproperInput for the constant +inf function.
ElementaryForm to_elementary(const Pcqf& f);
Pcqf from_elementary(const ElementaryForm& form, double tol = linalg::kDefaultTol);
/// Conjugation carried out on the elementary form by flipping curvatures.
ElementaryForm conjugate_elementary(const ElementaryForm& form);

}  // namespace bifun
