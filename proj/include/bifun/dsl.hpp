#pragma once

// Text syntax for string diagrams.
//
//   term    := par (';' par)*                 sequential, left-associative
//   par     := unary ('*' unary)*             parallel, binds tighter than ';'
//   unary   := ('adj' | 'dagger' | 'inv') '(' term ')' | atom | '(' term ')'
//   atom    := generator '[' n ']' | source '(' '@' path ')'
//   generator: id copy comp discard unit add coadd zero cozero
//   source:    lin relspan gauss state
//
// "a ; b" runs a first, then b.

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "bifun/gauss.hpp"

namespace bifun::dsl {

struct SourcePos {
  int line = 1;
  int column = 1;
};

enum class NodeKind { generator, file_atom, seq, par, adj, dagger, inv };

struct Term {
  NodeKind kind = NodeKind::generator;
  std::string name;   // generator or source keyword
  Index size = 0;     // generator wire count
  std::string path;   // file atoms
  std::vector<Term> children;
  SourcePos pos;      // first character of the term
};

/// Throws SyntaxError with "line:column" in the message.
Term parse(std::string_view source);

/// Inverse of parse up to positions, with the fewest parentheses.
std::string print(const Term& t);

/// Structure only; positions are ignored.
bool same_structure(const Term& a, const Term& b);

enum class Interpretation { cgf, logpdf };

struct EvalConfig {
  Interpretation interp = Interpretation::cgf;
  bool concave = false;                 // polarity of generators, lin and relspan
  double tol = 1e-9;
  std::filesystem::path base_dir = ".";  // relative @paths resolve here
};

struct Signature {
  Index src = 0;
  Index dst = 0;
  Polarity polarity = Polarity::convex;
};

/// Loads and caches the files referenced by @path atoms.
class FileCache {
 public:
  explicit FileCache(std::filesystem::path base_dir) : base_(std::move(base_dir)) {}

  const Matrix& matrix(const std::string& path);
  const QuadBifunction& relation(const std::string& path, double tol);
  const GaussMap& gauss(const std::string& path);
  const QuadBifunction& state(const std::string& path, double tol);

 private:
  std::filesystem::path resolve(const std::string& path) const;

  std::filesystem::path base_;
  std::map<std::string, Matrix> matrices_;
  std::map<std::string, QuadBifunction> relations_;
  std::map<std::string, GaussMap> gauss_;
  std::map<std::string, QuadBifunction> states_;
};

/// Dimensions and polarity of a term; throws TypeError naming the offending
/// subterm and the mismatched dimensions or polarities.
Signature typecheck(const Term& t, const EvalConfig& config, FileCache& files);
Signature typecheck(const Term& t, const EvalConfig& config);

/// Type checks, then evaluates. Improper composites keep their error code and
/// the message names the subterm where they arose.
QuadBifunction evaluate(const Term& t, const EvalConfig& config, FileCache& files);
QuadBifunction evaluate(const Term& t, const EvalConfig& config);

}  // namespace bifun::dsl
