#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

#include "bifun/error.hpp"
#include "kernels.hpp"

namespace bifun::oracle {

GridSpec::GridSpec(std::vector<Axis> axes) : axes_(std::move(axes)) {
  for (const Axis& a : axes_) {
    if (!std::isfinite(a.lo) || !std::isfinite(a.hi) || !(a.lo < a.hi) || a.count < 2) {
      throw Error(ErrorCode::Precondition, "grid axis needs finite lo < hi and at least 2 points");
    }
    size_ *= a.count;
  }
}

GridSpec GridSpec::uniform(Index dim, double lo, double hi, Index count) {
  return GridSpec(std::vector<Axis>(static_cast<std::size_t>(dim), Axis{lo, hi, count}));
}

double GridSpec::min_step() const {
  double s = std::numeric_limits<double>::infinity();
  for (const Axis& a : axes_) s = std::min(s, a.step());
  return s;
}

std::vector<Index> GridSpec::multi_index(Index flat) const {
  std::vector<Index> idx(axes_.size());
  for (std::size_t a = axes_.size(); a-- > 0;) {
    idx[a] = flat % axes_[a].count;
    flat /= axes_[a].count;
  }
  return idx;
}

Index GridSpec::flat_index(const std::vector<Index>& idx) const {
  require_dims(idx.size() == axes_.size(), "multi-index has the wrong length");
  Index flat = 0;
  for (std::size_t a = 0; a < axes_.size(); ++a) flat = flat * axes_[a].count + idx[a];
  return flat;
}

Vector GridSpec::point(Index flat) const {
  const auto idx = multi_index(flat);
  Vector x(dim());
  for (std::size_t a = 0; a < axes_.size(); ++a) x(static_cast<Index>(a)) = axes_[a].at(idx[a]);
  return x;
}

bool GridSpec::on_boundary(Index flat) const { return !interior(flat, 1); }

bool GridSpec::interior(Index flat, Index margin) const {
  const auto idx = multi_index(flat);
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    if (idx[a] < margin || idx[a] > axes_[a].count - 1 - margin) return false;
  }
  return true;
}

std::optional<Index> GridSpec::locate(const Vector& x) const {
  require_dims(x.size() == dim(), "point dimension does not match the grid");
  Index flat = 0;
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    const double t = (x(static_cast<Index>(a)) - axes_[a].lo) / axes_[a].step();
    const double r = std::nearbyint(t);
    if (r < 0.0 || r > static_cast<double>(axes_[a].count - 1) || std::abs(t - r) > 0.5 + 1e-9) {
      return std::nullopt;
    }
    flat = flat * axes_[a].count + static_cast<Index>(r);
  }
  return flat;
}

GridSpec GridSpec::leading(Index keep) const {
  require_dims(keep >= 0 && keep <= dim(), "cannot keep more axes than the grid has");
  return GridSpec(std::vector<Axis>(axes_.begin(), axes_.begin() + keep));
}

namespace {

void write_value(std::ostream& os, double v) {
  if (std::isinf(v)) {
    os << (v > 0 ? "inf" : "-inf");
  } else {
    os << v;
  }
}

}  // namespace

void write_csv(std::ostream& os, const SampledFunction& f) {
  const Index d = f.grid.dim();
  if (d == 1) {
    os << "x,";
  } else {
    for (Index a = 0; a < d; ++a) os << 'x' << (a + 1) << ',';
  }
  os << "value\n";
  const auto flags = os.flags();
  os << std::setprecision(12);
  for (Index i = 0; i < f.grid.size(); ++i) {
    const Vector x = f.grid.point(i);
    for (Index a = 0; a < d; ++a) os << x(a) << ',';
    write_value(os, f.at(i));
    os << '\n';
  }
  os.flags(flags);
}

Agreement compare(const SampledFunction& numeric, const std::function<double(const Vector&)>& exact,
                  const std::function<bool(Index)>& select) {
  Agreement out;
  for (Index i = 0; i < numeric.grid.size(); ++i) {
    if (select && !select(i)) continue;
    const double e = exact(numeric.grid.point(i));
    const double v = numeric.at(i);
    ++out.compared;
    if (std::isinf(e) || std::isinf(v)) {
      if (e != v) ++out.infinity_mismatches;
      continue;
    }
    out.max_error = std::max(out.max_error, std::abs(v - e) / std::max(1.0, std::abs(e)));
  }
  return out;
}

namespace kernels {

Layout::Layout(const GridSpec& g) : grid(g), coords(g.dim(), g.size()), strides(g.axes().size()) {
  Index stride = 1;
  for (std::size_t a = g.axes().size(); a-- > 0;) {
    strides[a] = stride;
    stride *= g.axes()[a].count;
  }
  for (Index i = 0; i < g.size(); ++i) {
    for (std::size_t a = 0; a < g.axes().size(); ++a) {
      coords(static_cast<Index>(a), i) = g.axes()[a].at(axis_index(i, static_cast<Index>(a)));
    }
  }
}

LegendrePoint legendre_point(const Layout& primal, const std::vector<double>& f, const Vector& s) {
  const Index n = primal.grid.size();
  double best = -kInf;
  Index arg = -1;
  for (Index j = 0; j < n; ++j) {
    const double fj = f[static_cast<std::size_t>(j)];
    if (std::isinf(fj) && fj > 0) continue;
    const double v = s.dot(primal.coords.col(j)) - fj;
    if (v > best) {
      best = v;
      arg = j;
    }
  }
  if (arg < 0) return {-kInf, false};
  if (std::isinf(best)) return {best, false};
  // Still climbing at the edge of the grid: the true supremum lies outside.
  const auto& axes = primal.grid.axes();
  const double slack = 1e-12 * std::max(1.0, std::abs(best));
  for (std::size_t a = 0; a < axes.size(); ++a) {
    const Index ia = primal.axis_index(arg, static_cast<Index>(a));
    Index neighbour = -1;
    if (ia == 0) neighbour = arg + primal.strides[a];
    if (ia == axes[a].count - 1) neighbour = arg - primal.strides[a];
    if (neighbour < 0) continue;
    const double fn = f[static_cast<std::size_t>(neighbour)];
    const double vn = (std::isinf(fn) && fn > 0) ? -kInf : s.dot(primal.coords.col(neighbour)) - fn;
    if (best > vn + slack) return {kInf, true};
  }
  return {best, false};
}

double inf_convolution_point(const Layout& lay, const std::vector<double>& f,
                             const std::vector<double>& g, Index i) {
  double best = kInf;
  const Index n = lay.grid.size();
  for (Index j = 0; j < n; ++j) {
    const double gj = g[static_cast<std::size_t>(j)];
    if (std::isinf(gj) && gj > 0) continue;
    const Index k = locate_difference(lay, i, j);
    if (k < 0) continue;
    const double fk = f[static_cast<std::size_t>(k)];
    if (std::isinf(fk) && fk > 0) continue;
    best = std::min(best, fk + gj);
  }
  return best;
}

namespace {

// Linear interpolation of grid values at coordinate t (in units of steps).
double interpolate(const std::vector<double>& v, double t) {
  const double last = static_cast<double>(v.size() - 1);
  if (t < -1e-9 || t > last + 1e-9) return -kInf;
  t = std::clamp(t, 0.0, last);
  const auto k = static_cast<std::size_t>(std::floor(t));
  const double frac = t - static_cast<double>(k);
  if (k + 1 >= v.size() || frac < 1e-12) return v[k];
  if (frac > 1.0 - 1e-12) return v[k + 1];
  if (std::isinf(v[k]) || std::isinf(v[k + 1])) return -kInf;
  return (1.0 - frac) * v[k] + frac * v[k + 1];
}

}  // namespace

LogConvPoint log_convolution_point(const Layout& lay, const std::vector<double>& logf,
                                   const std::vector<double>& logg, Index i) {
  const Axis& ax = lay.grid.axes()[0];
  const Index n = ax.count;
  const double z = lay.coords(0, i);
  const double h = ax.step();
  // Two passes: locate the peak, then sum relative to it.
  double peak = -kInf;
  Index first = -1;
  Index last = -1;
  std::vector<double> terms(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) {
    const double x = lay.coords(0, j);
    const double t = logf[static_cast<std::size_t>(j)] + interpolate(logg, (z - x - ax.lo) / h);
    terms[static_cast<std::size_t>(j)] = t;
    if (std::isinf(t)) continue;
    if (first < 0) first = j;
    last = j;
    peak = std::max(peak, t);
  }
  if (first < 0) return {-kInf, false};
  double sum = 0.0;
  for (Index j = first; j <= last; ++j) {
    const double t = terms[static_cast<std::size_t>(j)];
    if (std::isinf(t)) continue;
    const double w = (j == 0 || j == n - 1) ? 0.5 * h : h;
    sum += w * std::exp(t - peak);
  }
  const double negligible = std::log(1e-8);
  const bool truncated = terms[static_cast<std::size_t>(first)] - peak > negligible ||
                         terms[static_cast<std::size_t>(last)] - peak > negligible;
  return {peak + std::log(sum), truncated};
}

}  // namespace kernels
}  // namespace bifun::oracle
