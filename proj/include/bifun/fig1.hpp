#pragma once

// Sum of two independent scalar random variables, computed two ways on a
// grid: the density by convolution (quadrature) and the log-density by
// sup-convolution. For Gaussians both agree with the closed form; for
// Laplacians the sup-convolution is not the log-density of the sum.

#include <filesystem>
#include <string>

#include "bifun/oracle.hpp"

namespace bifun::fig1 {

enum class Family { gauss, laplace };

struct Moments {
  double mean = 0.0;
  double variance = 1.0;
};

struct Params {
  Moments x;
  Moments y;
  Family family = Family::gauss;
  oracle::GridSpec grid = oracle::GridSpec::uniform(1, -10, 10, 2001);
};

struct Result {
  oracle::SampledFunction pdf_convolution;
  oracle::SampledFunction pdf_closed_form;
  oracle::SampledFunction logpdf_supconvolution;
  oracle::SampledFunction logpdf_closed_form;
  /// Max-normalized residuals over the significant region (closed-form
  /// log-density within 18 of its peak).
  double pdf_residual = 0.0;
  double logpdf_residual = 0.0;
  /// Grid location of the sup-convolution's maximum.
  double supconvolution_peak = 0.0;
  /// Quadrature points whose integrand was cut off by the grid.
  Index boundary_dominated = 0;
};

/// Throws Precondition for a non-positive variance or a grid that is not 1-D.
Result run(const Params& p);

/// pdf_convolution.csv, pdf_closed_form.csv, logpdf_supconvolution.csv,
/// logpdf_closed_form.csv
void write_csv_files(const Result& r, const std::filesystem::path& dir);

std::string summary(const Result& r);

}  // namespace bifun::fig1
