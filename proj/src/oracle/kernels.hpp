#pragma once

// Per-output-point routines shared by the serial and OpenMP scans.

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "bifun/oracle.hpp"

namespace bifun::oracle::kernels {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Grid coordinates laid out one column per point, plus per-axis strides.
struct Layout {
  explicit Layout(const GridSpec& g);

  const GridSpec& grid;
  Matrix coords;
  std::vector<Index> strides;

  Index axis_index(Index flat, Index axis) const {
    return (flat / strides[static_cast<std::size_t>(axis)]) %
           grid.axes()[static_cast<std::size_t>(axis)].count;
  }
};

/// Flat index of the grid point nearest to coords(:, i) - coords(:, j), or -1
/// when that difference leaves the grid.
inline Index locate_difference(const Layout& lay, Index i, Index j) {
  Index flat = 0;
  const auto& axes = lay.grid.axes();
  for (std::size_t a = 0; a < axes.size(); ++a) {
    const Index ai = static_cast<Index>(a);
    const double t = (lay.coords(ai, i) - lay.coords(ai, j) - axes[a].lo) / axes[a].step();
    const double r = std::nearbyint(t);
    if (r < 0.0 || r > static_cast<double>(axes[a].count - 1) || std::abs(t - r) > 0.5 + 1e-9) return -1;
    flat += static_cast<Index>(r) * lay.strides[a];
  }
  return flat;
}

inline double partial_infimum_point(const std::vector<double>& in, Index inner, Index o) {
  double best = kInf;
  const std::size_t base = static_cast<std::size_t>(o * inner);
  for (Index j = 0; j < inner; ++j) best = std::min(best, in[base + static_cast<std::size_t>(j)]);
  return best;
}

struct LegendrePoint {
  double value;
  bool boundary_dominated;
};

LegendrePoint legendre_point(const Layout& primal, const std::vector<double>& f,
                             const Vector& s);

/// Minimum over grid y of f(x_i - y) + g(y).
double inf_convolution_point(const Layout& lay, const std::vector<double>& f,
                             const std::vector<double>& g, Index i);

struct LogConvPoint {
  double value;
  bool truncated;
};

LogConvPoint log_convolution_point(const Layout& lay, const std::vector<double>& logf,
                                   const std::vector<double>& logg, Index i);

// The two scan families. Outputs are resized by the callee.
namespace serial {
void sample(const Layout& lay, const std::function<double(const Vector&)>& f, std::vector<double>& out);
void partial_infimum(const std::vector<double>& in, Index outer, Index inner, std::vector<double>& out);
void legendre(const Layout& primal, const std::vector<double>& f, const Layout& dual,
              std::vector<double>& out, std::vector<char>& flags);
void inf_convolution(const Layout& lay, const std::vector<double>& f, const std::vector<double>& g,
                     std::vector<double>& out);
void log_convolution(const Layout& lay, const std::vector<double>& logf,
                     const std::vector<double>& logg, std::vector<double>& out,
                     std::vector<char>& flags);
}  // namespace serial

namespace omp {
void sample(const Layout& lay, const std::function<double(const Vector&)>& f, std::vector<double>& out);
void partial_infimum(const std::vector<double>& in, Index outer, Index inner, std::vector<double>& out);
void legendre(const Layout& primal, const std::vector<double>& f, const Layout& dual,
              std::vector<double>& out, std::vector<char>& flags);
void inf_convolution(const Layout& lay, const std::vector<double>& f, const std::vector<double>& g,
                     std::vector<double>& out);
void log_convolution(const Layout& lay, const std::vector<double>& logf,
                     const std::vector<double>& logg, std::vector<double>& out,
                     std::vector<char>& flags);
}  // namespace omp

}  // namespace bifun::oracle::kernels
