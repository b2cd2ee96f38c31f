#include "bifun/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bifun/error.hpp"

namespace bifun::io {

namespace {

// Written values keep 12 significant digits, and round-off-sized entries
// become 0, so the same object reached by different evaluation orders
// usually serializes to the same text.
double clean(double v) {
  if (std::abs(v) < 1e-12) return 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::IoError, what); }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) malformed(std::string("missing field '") + name + "'");
  return j.at(name);
}

Index count_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    malformed(std::string("field '") + name + "' must be a non-negative integer");
  }
  return static_cast<Index>(v.get<long long>());
}

double finite_number(const Json& v) {
  if (!v.is_number()) malformed("expected a number, got " + v.dump());
  const double x = v.get<double>();
  if (!std::isfinite(x)) malformed("non-finite entry");
  return x;
}

}  // namespace

Json to_json(const Matrix& m) {
  Json data = Json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) data.push_back(clean(m(i, j)));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

Json vector_to_json(const Vector& v) {
  Json data = Json::array();
  for (Index i = 0; i < v.size(); ++i) data.push_back(clean(v(i)));
  return data;
}

Matrix matrix_from_json(const Json& j) {
  const Index rows = count_field(j, "rows"), cols = count_field(j, "cols");
  const Json& data = field(j, "data");
  if (!data.is_array() || static_cast<Index>(data.size()) != rows * cols) {
    malformed("matrix data must hold rows * cols = " + std::to_string(rows * cols) + " entries");
  }
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index k = 0; k < cols; ++k) m(i, k) = finite_number(data[static_cast<std::size_t>(i * cols + k)]);
  return m;
}

Vector vector_from_json(const Json& j) {
  if (j.is_object()) {
    const Matrix m = matrix_from_json(j);
    if (m.cols() != 1 && m.rows() != 1 && m.size() != 0) malformed("expected a vector, got a matrix");
    return Eigen::Map<const Vector>(m.data(), m.size());
  }
  if (!j.is_array()) malformed("expected a vector");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = finite_number(j[i]);
  return v;
}

Json to_json(const Pcqf& f) {
  const Index n = f.ambient_dim();
  if (f.is_infeasible()) return {{"dim", n}, {"infeasible", true}};
  const Matrix& basis = f.domain().basis();
  const Matrix c = Matrix::Identity(n, n) - basis * basis.transpose();
  return {{"dim", n},
          {"C", to_json(c)},
          {"d", vector_to_json(f.domain().offset())},
          {"Q", to_json(f.ambient_quadratic())},
          {"b", vector_to_json(f.ambient_linear())},
          {"c", clean(f.constant())}};
}

Pcqf pcqf_from_json(const Json& j, double tol) {
  const Index n = count_field(j, "dim");
  if (j.contains("infeasible") && j.at("infeasible").is_boolean() && j.at("infeasible").get<bool>()) {
    return Pcqf::infeasible(n);
  }
  const Matrix q = j.contains("Q") ? matrix_from_json(j.at("Q")) : Matrix::Zero(n, n);
  const Vector b = j.contains("b") ? vector_from_json(j.at("b")) : Vector::Zero(n);
  const double c = j.contains("c") ? finite_number(j.at("c")) : 0.0;
  const Matrix cm = j.contains("C") ? matrix_from_json(j.at("C")) : Matrix(0, n);
  const Vector d = j.contains("d") ? vector_from_json(j.at("d")) : Vector::Zero(cm.rows());
  if (q.rows() != n || q.cols() != n || b.size() != n || cm.cols() != n || d.size() != cm.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "PCQF fields do not match dim = " + std::to_string(n));
  }
  return Pcqf::from_ambient(q, b, c, cm, d, tol);
}

Json to_json(const QuadBifunction& f) {
  Json j = to_json(f.stored());
  j["src_dim"] = f.src_dim();
  j["dst_dim"] = f.dst_dim();
  j["polarity"] = to_string(f.polarity());
  return j;
}

QuadBifunction bifunction_from_json(const Json& j, double tol) {
  const Pcqf graph = pcqf_from_json(j, tol);
  if (!j.contains("src_dim") && !j.contains("dst_dim")) {
    Polarity p = Polarity::convex;
    if (j.contains("polarity") && j.at("polarity") == "concave") p = Polarity::concave;
    return {0, graph.ambient_dim(), graph, p};
  }
  const Index m = count_field(j, "src_dim"), n = count_field(j, "dst_dim");
  Polarity p = Polarity::convex;
  if (j.contains("polarity")) {
    const Json& pol = j.at("polarity");
    if (pol == "concave") {
      p = Polarity::concave;
    } else if (pol != "convex") {
      malformed("polarity must be \"convex\" or \"concave\"");
    }
  }
  return {m, n, graph, p};
}

Json to_json(const GaussMap& g) {
  return {{"A", to_json(g.a())}, {"mu", vector_to_json(g.mu())}, {"Sigma", to_json(g.sigma())}};
}

GaussMap gauss_from_json(const Json& j) {
  const Vector mu = vector_from_json(field(j, "mu"));
  const Matrix sigma = matrix_from_json(field(j, "Sigma"));
  const Matrix a = j.contains("A") ? matrix_from_json(j.at("A")) : Matrix(mu.size(), 0);
  return {a, mu, sigma};
}

Json to_json(const ExtGaussState& s) {
  return {{"mu", vector_to_json(s.mu)}, {"Sigma", to_json(s.sigma)}, {"fibre", to_json(s.fibre)}};
}

ExtGaussState ext_state_from_json(const Json& j) {
  ExtGaussState s{vector_from_json(field(j, "mu")), matrix_from_json(field(j, "Sigma")), Matrix()};
  s.fibre = j.contains("fibre") ? matrix_from_json(j.at("fibre")) : Matrix(s.mu.size(), 0);
  return s;
}

RelationSpan relation_from_json(const Json& j) {
  RelationSpan r{matrix_from_json(field(j, "span")), count_field(j, "src_dim")};
  if (r.src_dim > r.span.rows()) malformed("src_dim exceeds the ambient dimension of the span");
  return r;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::IoError, path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace bifun::io
