#include <cmath>
#include <limits>

#include "bifun/error.hpp"
#include "bifun/pcqf.hpp"

namespace bifun {

ElementaryForm to_elementary(const Pcqf& f) {
  if (f.is_infeasible()) {
    throw Error(ErrorCode::ImproperInput, "the constant +inf function has no elementary form");
  }
  const Index n = f.ambient_dim();
  const Matrix& basis = f.domain().basis();
  const Vector& p = f.domain().offset();
  const Index k = basis.cols();
  const auto eig = linalg::sym_eig(f.quadratic(), 1e-6);
  const Matrix dirs = basis * eig.vectors;
  const Vector slope_internal = eig.vectors.transpose() * f.linear();
  const double thresh =
      linalg::rank_threshold(k ? eig.values.cwiseAbs().maxCoeff() : 0.0, linalg::kDefaultTol, 1.0);

  ElementaryForm form;
  form.frame.resize(n, n);
  form.frame << dirs, f.domain().normals();
  form.center = p;
  form.slope = Vector::Zero(n);
  form.constant = f.constant();
  form.curvatures.assign(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
  for (Index i = 0; i < k; ++i) {
    const double lam = eig.values(i);
    const double beta = slope_internal(i);
    if (lam > thresh) {
      // complete the square along this axis
      form.center -= (beta / lam) * dirs.col(i);
      form.constant -= beta * beta / (2.0 * lam);
      form.curvatures[static_cast<std::size_t>(i)] = lam;
    } else {
      form.slope += beta * dirs.col(i);
      form.curvatures[static_cast<std::size_t>(i)] = 0.0;
    }
  }
  form.constant -= form.slope.dot(p);
  return form;
}

Pcqf from_elementary(const ElementaryForm& form, double tol) {
  const Index n = form.frame.rows();
  require_dims(form.frame.cols() == n && form.center.size() == n && form.slope.size() == n &&
                   static_cast<Index>(form.curvatures.size()) == n,
               "elementary form has inconsistent dimensions");
  Matrix qhat = Matrix::Zero(n, n);
  Index pinned = 0;
  for (double lam : form.curvatures) {
    if (std::isinf(lam)) ++pinned;
  }
  Matrix cons(pinned, n);
  Vector rhs(pinned);
  Index row = 0;
  for (Index i = 0; i < n; ++i) {
    const double lam = form.curvatures[static_cast<std::size_t>(i)];
    const auto w = form.frame.col(i);
    if (lam < 0.0) throw Error(ErrorCode::NegativeCurvature, "negative elementary curvature");
    if (std::isinf(lam)) {
      cons.row(row) = w.transpose();
      rhs(row) = w.dot(form.center);
      ++row;
    } else {
      qhat += lam * w * w.transpose();
    }
  }
  const Vector bhat = form.slope - qhat * form.center;
  const double chat = 0.5 * form.center.dot(qhat * form.center) + form.constant;
  return Pcqf::from_ambient(qhat, bhat, chat, cons, rhs, tol);
}

ElementaryForm conjugate_elementary(const ElementaryForm& form) {
  ElementaryForm out;
  out.frame = form.frame;
  out.center = form.slope;
  out.slope = form.center;
  out.constant = -form.slope.dot(form.center) - form.constant;
  out.curvatures.reserve(form.curvatures.size());
  for (double lam : form.curvatures) out.curvatures.push_back(lambda_star(lam));
  return out;
}

}  // namespace bifun
