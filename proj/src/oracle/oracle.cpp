#include "bifun/oracle.hpp"

#include <algorithm>
#include <string>

#include "bifun/error.hpp"
#include "kernels.hpp"

namespace bifun::oracle {

namespace {

void require_same_grid(const SampledFunction& f, const SampledFunction& g) {
  bool same = f.grid.dim() == g.grid.dim();
  for (Index a = 0; same && a < f.grid.dim(); ++a) {
    const Axis& x = f.grid.axes()[static_cast<std::size_t>(a)];
    const Axis& y = g.grid.axes()[static_cast<std::size_t>(a)];
    same = x.lo == y.lo && x.hi == y.hi && x.count == y.count;
  }
  if (!same) throw Error(ErrorCode::Precondition, "sampled functions must share a grid");
}

void require_values(const SampledFunction& f) {
  require_dims(static_cast<Index>(f.values.size()) == f.grid.size(),
               "sampled function has " + std::to_string(f.values.size()) + " values for a grid of " +
                   std::to_string(f.grid.size()) + " points");
}

Index count_flags(const std::vector<char>& flags) {
  return static_cast<Index>(std::count(flags.begin(), flags.end(), 1));
}

}  // namespace

SampledFunction sample(const std::function<double(const Vector&)>& f, const GridSpec& grid,
                       Execution exec) {
  const kernels::Layout lay(grid);
  SampledFunction out{grid, {}};
  if (exec == Execution::serial) {
    kernels::serial::sample(lay, f, out.values);
  } else {
    kernels::omp::sample(lay, f, out.values);
  }
  return out;
}

SampledFunction sample(const Pcqf& f, const GridSpec& grid, double band, Execution exec) {
  require_dims(f.ambient_dim() == grid.dim(), "function and grid dimensions differ");
  if (band < 0) band = 0.5 * grid.min_step();
  if (f.is_infeasible()) {
    return {grid, std::vector<double>(static_cast<std::size_t>(grid.size()), kernels::kInf)};
  }
  const AffineSubspace& dom = f.domain();
  const Matrix& basis = dom.basis();
  const Vector& p = dom.offset();
  const Matrix& q = f.quadratic();
  const Vector& b = f.linear();
  const double c = f.constant();
  auto value = [&](const Vector& x) {
    const Vector z = basis.transpose() * (x - p);
    const Vector off = x - p - basis * z;
    if (off.norm() > band) return kernels::kInf;
    return 0.5 * z.dot(q * z) + b.dot(z) + c;
  };
  return sample(value, grid, exec);
}

SampledFunction grid_partial_infimum(const SampledFunction& f, Index keep, Execution exec) {
  require_values(f);
  const GridSpec kept = f.grid.leading(keep);
  const Index outer = kept.size();
  const Index inner = f.grid.size() / outer;
  SampledFunction out{kept, {}};
  if (exec == Execution::serial) {
    kernels::serial::partial_infimum(f.values, outer, inner, out.values);
  } else {
    kernels::omp::partial_infimum(f.values, outer, inner, out.values);
  }
  return out;
}

LegendreResult numeric_legendre(const SampledFunction& f, const GridSpec& dual_grid, Execution exec) {
  require_values(f);
  require_dims(f.grid.dim() == dual_grid.dim(), "dual grid dimension differs from the primal grid");
  const kernels::Layout primal(f.grid);
  const kernels::Layout dual(dual_grid);
  LegendreResult out{{dual_grid, {}}, 0};
  std::vector<char> flags;
  if (exec == Execution::serial) {
    kernels::serial::legendre(primal, f.values, dual, out.values.values, flags);
  } else {
    kernels::omp::legendre(primal, f.values, dual, out.values.values, flags);
  }
  out.boundary_dominated = count_flags(flags);
  return out;
}

SampledFunction numeric_inf_convolution(const SampledFunction& f, const SampledFunction& g,
                                        Execution exec) {
  require_values(f);
  require_values(g);
  require_same_grid(f, g);
  const kernels::Layout lay(f.grid);
  SampledFunction out{f.grid, {}};
  if (exec == Execution::serial) {
    kernels::serial::inf_convolution(lay, f.values, g.values, out.values);
  } else {
    kernels::omp::inf_convolution(lay, f.values, g.values, out.values);
  }
  return out;
}

SampledFunction numeric_sup_convolution(const SampledFunction& f, const SampledFunction& g,
                                        Execution exec) {
  auto negated = [](SampledFunction s) {
    for (double& v : s.values) v = -v;
    return s;
  };
  return negated(numeric_inf_convolution(negated(f), negated(g), exec));
}

LogConvolutionResult quadrature_log_convolution(const SampledFunction& logf,
                                                const SampledFunction& logg, Execution exec) {
  require_values(logf);
  require_values(logg);
  if (logf.grid.dim() != 1) {
    throw Error(ErrorCode::Precondition, "quadrature convolution is implemented for 1-dim grids");
  }
  require_same_grid(logf, logg);
  const kernels::Layout lay(logf.grid);
  LogConvolutionResult out{{logf.grid, {}}, 0};
  std::vector<char> flags;
  if (exec == Execution::serial) {
    kernels::serial::log_convolution(lay, logf.values, logg.values, out.values.values, flags);
  } else {
    kernels::omp::log_convolution(lay, logf.values, logg.values, out.values.values, flags);
  }
  out.boundary_dominated = count_flags(flags);
  return out;
}

}  // namespace bifun::oracle
