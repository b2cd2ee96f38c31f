// bifun: evaluate string-diagram terms over quadratic bifunctions.
//
// Exit codes: 0 success, 1 usage / parse / type / input error,
// 2 improper composite or infeasible observation.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "bifun/checks.hpp"
#include "bifun/dsl.hpp"
#include "bifun/error.hpp"
#include "bifun/fig1.hpp"
#include "bifun/serialize.hpp"

namespace {

using namespace bifun;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kImproper = 2;

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::Precondition, std::string("bad number '") + item + "' in " + what);
    }
  }
  return out;
}

oracle::GridSpec parse_grid(const std::string& text) {
  const auto colon1 = text.find(':'), colon2 = text.rfind(':');
  if (colon1 == std::string::npos || colon1 == colon2) {
    throw Error(ErrorCode::Precondition, "--grid expects lo:hi:n, got '" + text + "'");
  }
  const double lo = parse_list(text.substr(0, colon1), "--grid").at(0);
  const double hi = parse_list(text.substr(colon1 + 1, colon2 - colon1 - 1), "--grid").at(0);
  const double n = parse_list(text.substr(colon2 + 1), "--grid").at(0);
  if (n != std::floor(n) || n < 2) throw Error(ErrorCode::Precondition, "--grid point count must be an integer >= 2");
  return oracle::GridSpec({oracle::Axis{lo, hi, static_cast<Index>(n)}});
}

fig1::Moments parse_moments(const std::string& text, const char* flag) {
  const auto v = parse_list(text, flag);
  if (v.size() != 2) throw Error(ErrorCode::Precondition, std::string(flag) + " expects mean,variance");
  return {v[0], v[1]};
}

void emit(const io::Json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    io::write_json_file(out, j);
  }
}

dsl::Interpretation parse_interp(const std::string& s) {
  return s == "logpdf" ? dsl::Interpretation::logpdf : dsl::Interpretation::cgf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex and concave quadratic bifunctions: diagram evaluation, duality checks, oracle data"};
  app.require_subcommand(1);

  double tol = 1e-9;
  std::string out;
  std::string interp = "cgf";
  bool concave = false;

  auto add_tol = [&](CLI::App* sub) {
    sub->add_option("--tol", tol, "Rank and comparison tolerance")->check(CLI::PositiveNumber);
  };
  auto add_out = [&](CLI::App* sub, const char* what) { sub->add_option("--out", out, what); };

  // eval
  std::string term_text;
  std::string base_dir = ".";
  auto* eval = app.add_subcommand("eval", "Evaluate a diagram term to a canonical bifunction");
  eval->add_option("term", term_text, "Term, e.g. \"copy[1] ; (id[1] * lin(@A.json))\"")->required();
  eval->add_option("--interp", interp, "Reading of gauss(@file)")->check(CLI::IsMember({"cgf", "logpdf"}));
  eval->add_flag("--concave", concave, "Concave generators, lin and relspan");
  eval->add_option("--base-dir", base_dir, "Directory for relative @paths");
  add_tol(eval);
  add_out(eval, "Write the JSON here instead of stdout");

  // conjugate
  std::string pcqf_file;
  auto* conj = app.add_subcommand("conjugate", "Convex conjugate of a PCQF file");
  conj->add_option("file", pcqf_file, "PCQF JSON")->required();
  add_tol(conj);
  add_out(conj, "Write the JSON here instead of stdout");

  // gauss-compose
  std::string first_file, second_file;
  auto* gcomp = app.add_subcommand("gauss-compose", "Gaussian map that runs FIRST, then SECOND");
  gcomp->add_option("first", first_file, "GaussMap JSON")->required();
  gcomp->add_option("second", second_file, "GaussMap JSON")->required();
  add_out(gcomp, "Write the JSON here instead of stdout");

  // condition
  std::string joint_file, value_text, cond_interp = "logpdf";
  auto* cond = app.add_subcommand("condition", "Condition a Gaussian state on its trailing coordinates");
  cond->add_option("joint", joint_file, "GaussMap state JSON (no A, or A with zero columns)")->required();
  cond->add_option("--value", value_text, "Observed trailing coordinates, comma separated")->required();
  cond->add_option("--interp", cond_interp, "logpdf: restricted log-density; cgf: its adjoint")
      ->check(CLI::IsMember({"cgf", "logpdf"}));
  add_tol(cond);
  add_out(cond, "Write the JSON here instead of stdout");

  // check
  std::string suite;
  checks::SuiteOptions suite_options;
  auto* check = app.add_subcommand("check", "Run a randomized invariant suite");
  check->add_option("suite", suite, "conjugation | adjoint-functor | gauss-functor | frobenius | oracle | all")
      ->required();
  check->add_option("--seed", suite_options.seed, "Random seed");
  check->add_option("--instances", suite_options.instances, "Random instances per suite")
      ->check(CLI::PositiveNumber);

  // fig1
  std::string x_text = "0,1", y_text = "0,1", family = "gauss", grid_text = "-10:10:2001";
  auto* fig = app.add_subcommand("fig1", "Density convolution versus log-density sup-convolution");
  fig->add_option("--x", x_text, "First variable as mean,variance");
  fig->add_option("--y", y_text, "Second variable as mean,variance");
  fig->add_option("--family", family, "Distribution family")->check(CLI::IsMember({"gauss", "laplace"}));
  fig->add_option("--grid", grid_text, "Grid as lo:hi:n");
  add_out(fig, "Directory for the four CSV files (default: no files)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*eval) {
      dsl::EvalConfig config;
      config.interp = parse_interp(interp);
      config.concave = concave;
      config.tol = tol;
      config.base_dir = base_dir;
      emit(io::to_json(dsl::evaluate(dsl::parse(term_text), config)), out);
    } else if (*conj) {
      emit(io::to_json(conjugate(io::pcqf_from_json(io::read_json_file(pcqf_file), tol), tol)), out);
    } else if (*gcomp) {
      const GaussMap f = io::gauss_from_json(io::read_json_file(first_file));
      const GaussMap g = io::gauss_from_json(io::read_json_file(second_file));
      if (f.dst_dim() != g.src_dim()) {
        throw Error(ErrorCode::DimensionMismatch, "first has " + std::to_string(f.dst_dim()) +
                                                      " outputs, second has " + std::to_string(g.src_dim()) +
                                                      " inputs");
      }
      emit(io::to_json(gauss_compose(g, f)), out);
    } else if (*cond) {
      const GaussMap joint = io::gauss_from_json(io::read_json_file(joint_file));
      if (joint.src_dim() != 0) throw Error(ErrorCode::DimensionMismatch, "joint must be a state (no inputs)");
      const auto v = parse_list(value_text, "--value");
      const Vector value = Eigen::Map<const Vector>(v.data(), static_cast<Index>(v.size()));
      if (value.size() > joint.dst_dim()) {
        throw Error(ErrorCode::DimensionMismatch, "more observed values than coordinates");
      }
      const QuadBifunction h = logpdf_state(joint, tol);
      emit(io::to_json(cond_interp == "cgf" ? condition_cgf(adjoint(h, tol), value, tol)
                                        : condition_logpdf(h, value, tol)),
           out);
    } else if (*check) {
      std::vector<std::string> names{suite};
      if (suite == "all") names = checks::suite_names();
      bool ok = true;
      for (const auto& name : names) {
        const checks::SuiteResult r = checks::run_suite(name, suite_options);
        std::cout << checks::summary(r) << '\n';
        for (std::size_t i = 0; i < r.failures.size() && i < 10; ++i) std::cout << "  FAIL " << r.failures[i] << '\n';
        ok = ok && r.ok();
      }
      return ok ? kOk : kUsage;
    } else if (*fig) {
      fig1::Params params;
      params.x = parse_moments(x_text, "--x");
      params.y = parse_moments(y_text, "--y");
      params.family = family == "laplace" ? fig1::Family::laplace : fig1::Family::gauss;
      params.grid = parse_grid(grid_text);
      const fig1::Result r = fig1::run(params);
      if (!out.empty()) fig1::write_csv_files(r, out);
      std::cout << fig1::summary(r);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.is_improper() ? kImproper : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}
