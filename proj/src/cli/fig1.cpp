#include "bifun/fig1.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bifun/error.hpp"

namespace bifun::fig1 {

namespace {

constexpr double kSignificant = 18.0;

double log_density(Family family, const Moments& m, double x) {
  if (family == Family::gauss) {
    return -0.5 * (x - m.mean) * (x - m.mean) / m.variance - 0.5 * std::log(2 * M_PI * m.variance);
  }
  const double b = std::sqrt(m.variance / 2);
  return -std::abs(x - m.mean) / b - std::log(2 * b);
}

// Log-density of the sum.
double log_density_of_sum(Family family, const Moments& x, const Moments& y, double z) {
  const double mean = x.mean + y.mean;
  if (family == Family::gauss) return log_density(family, {mean, x.variance + y.variance}, z);
  const double b1 = std::sqrt(x.variance / 2), b2 = std::sqrt(y.variance / 2);
  const double u = std::abs(z - mean);
  if (std::abs(b1 - b2) <= 1e-9 * std::max(b1, b2)) {
    return std::log1p(u / b1) - u / b1 - std::log(4 * b1);
  }
  // (b1 e^{-u/b1} - b2 e^{-u/b2}) / (2 (b1^2 - b2^2)), evaluated in log space.
  const double hi = std::max(b1, b2), lo = std::min(b1, b2);
  return std::log(hi) - u / hi + std::log1p(-(lo / hi) * std::exp(u / hi - u / lo)) -
         std::log(2 * (hi * hi - lo * lo));
}

double peak(const oracle::SampledFunction& f) { return *std::max_element(f.values.begin(), f.values.end()); }

}  // namespace

Result run(const Params& p) {
  if (!(p.x.variance > 0) || !(p.y.variance > 0)) {
    throw Error(ErrorCode::Precondition, "variances must be positive");
  }
  if (p.grid.dim() != 1) throw Error(ErrorCode::Precondition, "fig1 needs a 1-D grid");
  const Family fam = p.family;

  const auto lx = oracle::sample([&](const Vector& v) { return log_density(fam, p.x, v(0)); }, p.grid);
  const auto ly = oracle::sample([&](const Vector& v) { return log_density(fam, p.y, v(0)); }, p.grid);

  Result r;
  const auto conv = oracle::quadrature_log_convolution(lx, ly);
  r.boundary_dominated = conv.boundary_dominated;
  r.logpdf_supconvolution = oracle::numeric_sup_convolution(lx, ly);
  r.logpdf_closed_form =
      oracle::sample([&](const Vector& v) { return log_density_of_sum(fam, p.x, p.y, v(0)); }, p.grid);

  r.pdf_convolution = conv.values;
  r.pdf_closed_form = r.logpdf_closed_form;
  for (double& v : r.pdf_convolution.values) v = std::exp(v);
  for (double& v : r.pdf_closed_form.values) v = std::exp(v);

  const double pdf_conv_max = peak(r.pdf_convolution), pdf_cf_max = peak(r.pdf_closed_form);
  const double sup_max = peak(r.logpdf_supconvolution), log_cf_max = peak(r.logpdf_closed_form);
  for (Index i = 0; i < p.grid.size(); ++i) {
    if (r.logpdf_closed_form.at(i) < log_cf_max - kSignificant) continue;
    r.pdf_residual = std::max(
        r.pdf_residual, std::abs(r.pdf_convolution.at(i) / pdf_conv_max - r.pdf_closed_form.at(i) / pdf_cf_max));
    r.logpdf_residual = std::max(r.logpdf_residual, std::abs((r.logpdf_supconvolution.at(i) - sup_max) -
                                                             (r.logpdf_closed_form.at(i) - log_cf_max)));
  }
  const auto top = std::max_element(r.logpdf_supconvolution.values.begin(), r.logpdf_supconvolution.values.end());
  r.supconvolution_peak = p.grid.point(top - r.logpdf_supconvolution.values.begin())(0);
  return r;
}

void write_csv_files(const Result& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::pair<const char*, const oracle::SampledFunction*> files[] = {
      {"pdf_convolution.csv", &r.pdf_convolution},
      {"pdf_closed_form.csv", &r.pdf_closed_form},
      {"logpdf_supconvolution.csv", &r.logpdf_supconvolution},
      {"logpdf_closed_form.csv", &r.logpdf_closed_form}};
  for (const auto& [name, f] : files) {
    std::ofstream out(dir / name);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + (dir / name).string());
    oracle::write_csv(out, *f);
  }
}

std::string summary(const Result& r) {
  std::ostringstream out;
  out << "pdf residual (max-normalized): " << r.pdf_residual << "\n"
      << "logpdf residual (max-normalized): " << r.logpdf_residual << "\n"
      << "sup-convolution peak at z = " << r.supconvolution_peak << "\n";
  if (r.boundary_dominated > 0) {
    out << "warning: BoundaryDominated at " << r.boundary_dominated
        << " quadrature points; widen the grid for a faithful convolution\n";
  }
  return out.str();
}

}  // namespace bifun::fig1
