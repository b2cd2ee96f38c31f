#include "kernels.hpp"

namespace bifun::oracle::kernels::serial {

namespace {
std::size_t u(Index i) { return static_cast<std::size_t>(i); }
}  // namespace

void sample(const Layout& lay, const std::function<double(const Vector&)>& f, std::vector<double>& out) {
  const Index n = lay.grid.size();
  out.assign(u(n), 0.0);
  for (Index i = 0; i < n; ++i) out[u(i)] = f(lay.coords.col(i));
}

void partial_infimum(const std::vector<double>& in, Index outer, Index inner, std::vector<double>& out) {
  out.assign(u(outer), 0.0);
  for (Index o = 0; o < outer; ++o) out[u(o)] = partial_infimum_point(in, inner, o);
}

void legendre(const Layout& primal, const std::vector<double>& f, const Layout& dual,
              std::vector<double>& out, std::vector<char>& flags) {
  const Index n = dual.grid.size();
  out.assign(u(n), 0.0);
  flags.assign(u(n), 0);
  for (Index i = 0; i < n; ++i) {
    const LegendrePoint p = legendre_point(primal, f, dual.coords.col(i));
    out[u(i)] = p.value;
    flags[u(i)] = p.boundary_dominated ? 1 : 0;
  }
}

void inf_convolution(const Layout& lay, const std::vector<double>& f, const std::vector<double>& g,
                     std::vector<double>& out) {
  const Index n = lay.grid.size();
  out.assign(u(n), 0.0);
  for (Index i = 0; i < n; ++i) out[u(i)] = inf_convolution_point(lay, f, g, i);
}

void log_convolution(const Layout& lay, const std::vector<double>& logf,
                     const std::vector<double>& logg, std::vector<double>& out,
                     std::vector<char>& flags) {
  const Index n = lay.grid.size();
  out.assign(u(n), 0.0);
  flags.assign(u(n), 0);
  for (Index i = 0; i < n; ++i) {
    const LogConvPoint p = log_convolution_point(lay, logf, logg, i);
    out[u(i)] = p.value;
    flags[u(i)] = p.truncated ? 1 : 0;
  }
}

}  // namespace bifun::oracle::kernels::serial
