#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "bifun/checks.hpp"
#include "bifun/error.hpp"
#include "bifun/fig1.hpp"

using namespace bifun;

TEST_CASE("fig1 with two standard normals") {
  const fig1::Result r = fig1::run({});
  CHECK(r.pdf_residual < 1e-3);
  CHECK(r.logpdf_residual < 1e-3);
  CHECK(std::abs(r.supconvolution_peak) < 1e-12);
  // The convolution is a density: it integrates to about one.
  double mass = 0.0;
  const double h = r.pdf_convolution.grid.min_step();
  for (double v : r.pdf_convolution.values) mass += v * h;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
  // Closed form N(0, 2) at 0.
  CHECK(r.pdf_closed_form.at(1000) == doctest::Approx(1 / std::sqrt(4 * M_PI)).epsilon(1e-12));
}

TEST_CASE("fig1 peaks and shapes") {
  fig1::Params p;
  p.y = {3.0, 0.25};
  const fig1::Result shifted = fig1::run(p);
  CHECK(shifted.supconvolution_peak == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(shifted.pdf_residual < 1e-3);
  CHECK(shifted.logpdf_residual < 1e-3);

  fig1::Params lap;
  lap.family = fig1::Family::laplace;
  const fig1::Result l = fig1::run(lap);
  CHECK(l.logpdf_residual > 0.05);
  CHECK(l.pdf_residual < 1e-3);  // quadrature still gets the density right

  lap.y = {0.0, 0.5};
  CHECK(fig1::run(lap).logpdf_residual > 0.05);
  CHECK(fig1::run(lap).pdf_residual < 1e-3);
}

TEST_CASE("fig1 preconditions, warnings and files") {
  fig1::Params bad;
  bad.x.variance = 0.0;
  try {
    fig1::run(bad);
    FAIL("expected Precondition");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Precondition);
  }

  fig1::Params narrow;
  narrow.grid = oracle::GridSpec::uniform(1, -3, 3, 301);
  const fig1::Result cut = fig1::run(narrow);
  CHECK(cut.boundary_dominated > 0);
  CHECK(fig1::summary(cut).find("BoundaryDominated") != std::string::npos);

  const auto dir = std::filesystem::temp_directory_path() / "bifun_fig1_test";
  fig1::write_csv_files(cut, dir);
  for (const char* name : {"pdf_convolution.csv", "pdf_closed_form.csv", "logpdf_supconvolution.csv",
                           "logpdf_closed_form.csv"}) {
    std::ifstream in(dir / name);
    std::string header;
    std::getline(in, header);
    CHECK(header == "x,value");
    int rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == 301);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("check suites") {
  CHECK(checks::suite_names().size() == 5);
  try {
    checks::run_suite("nonsense");
    FAIL("expected UnknownSuite");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownSuite);
  }
  const checks::SuiteResult g = checks::run_suite("gauss-functor");
  CHECK(g.passed == 200);
  CHECK(g.failed == 0);
  CHECK(checks::summary(g) == "gauss-functor: 200/200 passed");
  CHECK(checks::run_suite("frobenius").ok());
  checks::SuiteOptions small;
  small.instances = 20;
  CHECK(checks::run_suite("conjugation", small).ok());
  CHECK(checks::run_suite("adjoint-functor", small).ok());
}
