#pragma once

// Brute-force numerical ground truth on rectangular grids.
//
// Every scan has a serial reference implementation and an OpenMP version
// parallelized over output points; both evaluate the same per-point routine,
// so their results agree bit for bit.

#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "bifun/pcqf.hpp"

namespace bifun::oracle {

struct Axis {
  double lo = -10.0;
  double hi = 10.0;
  Index count = 401;

  double at(Index i) const { return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1); }
  double step() const { return (hi - lo) / static_cast<double>(count - 1); }
};

/// Rectangular grid, row-major (the last axis varies fastest).
class GridSpec {
 public:
  GridSpec() = default;
  /// Throws Precondition unless every axis has finite lo < hi and count >= 2.
  explicit GridSpec(std::vector<Axis> axes);
  static GridSpec uniform(Index dim, double lo, double hi, Index count);

  Index dim() const { return static_cast<Index>(axes_.size()); }
  Index size() const { return size_; }
  const std::vector<Axis>& axes() const { return axes_; }
  double min_step() const;

  Vector point(Index flat) const;
  std::vector<Index> multi_index(Index flat) const;
  Index flat_index(const std::vector<Index>& idx) const;
  /// Some coordinate sits at its first or last grid value.
  bool on_boundary(Index flat) const;
  /// At least `margin` grid steps away from the boundary on every axis.
  bool interior(Index flat, Index margin = 1) const;
  /// Nearest grid point, if x lies within half a step of it on every axis.
  std::optional<Index> locate(const Vector& x) const;
  /// Grid made of the first `keep` axes.
  GridSpec leading(Index keep) const;

 private:
  std::vector<Axis> axes_;
  Index size_ = 1;
};

struct SampledFunction {
  GridSpec grid;
  std::vector<double> values;  // +-inf allowed, row-major

  double at(Index flat) const { return values[static_cast<std::size_t>(flat)]; }
};

enum class Execution { serial, parallel };

SampledFunction sample(const std::function<double(const Vector&)>& f, const GridSpec& grid,
                       Execution exec = Execution::parallel);

/// Samples a PCQF. Points within `band` of the domain take the value at their
/// projection onto it; the rest are +inf. A negative band selects half the
/// smallest grid step.
SampledFunction sample(const Pcqf& f, const GridSpec& grid, double band = -1.0,
                       Execution exec = Execution::parallel);

/// Minimum over all but the first `keep` axes.
SampledFunction grid_partial_infimum(const SampledFunction& f, Index keep,
                                     Execution exec = Execution::parallel);

struct LegendreResult {
  SampledFunction values;
  /// Dual points whose supremum was still increasing at the grid boundary;
  /// their value is reported as +inf.
  Index boundary_dominated = 0;
};

LegendreResult numeric_legendre(const SampledFunction& f, const GridSpec& dual_grid,
                                Execution exec = Execution::parallel);

/// min over grid y of f(x - y) + g(y); f is read at the nearest grid point.
SampledFunction numeric_inf_convolution(const SampledFunction& f, const SampledFunction& g,
                                        Execution exec = Execution::parallel);

/// max over grid y of f(x - y) + g(y).
SampledFunction numeric_sup_convolution(const SampledFunction& f, const SampledFunction& g,
                                        Execution exec = Execution::parallel);

struct LogConvolutionResult {
  SampledFunction values;
  /// Output points whose integrand was not negligible where it was cut off.
  Index boundary_dominated = 0;
};

/// log of the trapezoid-rule convolution of exp(logf) and exp(logg), 1-dim.
/// logg is interpolated linearly between grid points.
LogConvolutionResult quadrature_log_convolution(const SampledFunction& logf,
                                                const SampledFunction& logg,
                                                Execution exec = Execution::parallel);

/// Rows "x,value" or "x1,...,xd,value"; infinities as inf / -inf.
void write_csv(std::ostream& os, const SampledFunction& f);

struct Agreement {
  double max_error = 0.0;  // |numeric - exact| / max(1, |exact|) over finite pairs
  Index compared = 0;
  Index infinity_mismatches = 0;

  bool within(double tol) const { return infinity_mismatches == 0 && max_error <= tol; }
};

/// Compares grid values against an exact function at the selected points.
Agreement compare(const SampledFunction& numeric, const std::function<double(const Vector&)>& exact,
                  const std::function<bool(Index)>& select = {});

}  // namespace bifun::oracle
