#pragma once

// JSON text forms used by the command-line tool and its fixtures.
//
//   Matrix:        {"rows": r, "cols": c, "data": [row-major entries]}
//   Vector:        [entries]   (a {"rows", "cols": 1, "data"} object is also read)
//   Pcqf:          {"dim", "C", "d", "Q", "b", "c"} meaning 1/2 x^T Q x + b^T x + c
//                  on {C x = d}; the +inf function is {"dim", "infeasible": true}.
//                  Written with C = I - B B^T and d = p, which is unique.
//   Bifunction:    Pcqf fields of the stored graph plus "src_dim", "dst_dim",
//                  "polarity" ("convex" | "concave").
//   GaussMap:      {"A", "mu", "Sigma"}, plus "fibre" for extended states.
//   Relation span: {"src_dim": m, "span": Matrix}.

#include <filesystem>
#include <string>

#include "json.hpp"

#include "bifun/gauss.hpp"

namespace bifun::io {

using Json = nlohmann::ordered_json;

Json to_json(const Matrix& m);
Json vector_to_json(const Vector& v);
Matrix matrix_from_json(const Json& j);
Vector vector_from_json(const Json& j);

Json to_json(const Pcqf& f);
Pcqf pcqf_from_json(const Json& j, double tol = linalg::kDefaultTol);

Json to_json(const QuadBifunction& f);
/// Accepts a bifunction object, or a bare Pcqf which is read as a convex state.
QuadBifunction bifunction_from_json(const Json& j, double tol = linalg::kDefaultTol);

Json to_json(const GaussMap& g);
GaussMap gauss_from_json(const Json& j);
Json to_json(const ExtGaussState& s);
ExtGaussState ext_state_from_json(const Json& j);

struct RelationSpan {
  Matrix span;
  Index src_dim = 0;
};
RelationSpan relation_from_json(const Json& j);

/// Throws IoError when the file is missing or not valid JSON.
Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace bifun::io
