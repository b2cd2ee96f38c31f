#include "bifun/dsl.hpp"

#include <cctype>
#include <optional>

#include "bifun/error.hpp"
#include "bifun/serialize.hpp"

namespace bifun::dsl {

namespace {

const std::map<std::string, GeneratorKind, std::less<>> kGenerators = {
    {"copy", GeneratorKind::copy},   {"comp", GeneratorKind::comp},   {"discard", GeneratorKind::discard},
    {"unit", GeneratorKind::unit},   {"add", GeneratorKind::add},     {"coadd", GeneratorKind::coadd},
    {"zero", GeneratorKind::zero},   {"cozero", GeneratorKind::cozero}};

bool is_generator(std::string_view name) { return name == "id" || kGenerators.count(name) > 0; }
bool is_source(std::string_view name) {
  return name == "lin" || name == "relspan" || name == "gauss" || name == "state";
}
bool is_unary(std::string_view name) { return name == "adj" || name == "dagger" || name == "inv"; }

NodeKind unary_kind(std::string_view name) {
  if (name == "adj") return NodeKind::adj;
  if (name == "dagger") return NodeKind::dagger;
  return NodeKind::inv;
}

// ---------------------------------------------------------------- lexer

enum class Tok { ident, number, path, lbracket, rbracket, lparen, rparen, semicolon, star, end };

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::end: return "end of input";
    case Tok::path: return "'@" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

[[noreturn]] void syntax_error(SourcePos pos, const std::string& what) {
  throw Error(ErrorCode::SyntaxError,
              std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + what);
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  SourcePos pos;
  std::size_t i = 0;
  auto advance = [&] {
    if (src[i] == '\n') {
      ++pos.line;
      pos.column = 1;
    } else {
      ++pos.column;
    }
    ++i;
  };
  while (i < src.size()) {
    const char ch = src[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance();
      continue;
    }
    const SourcePos start = pos;
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::string word;
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
        word += src[i];
        advance();
      }
      out.push_back({Tok::ident, word, start});
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::string digits;
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) {
        digits += src[i];
        advance();
      }
      out.push_back({Tok::number, digits, start});
    } else if (ch == '@') {
      advance();
      std::string path;
      while (i < src.size() && src[i] != ')' && !std::isspace(static_cast<unsigned char>(src[i]))) {
        path += src[i];
        advance();
      }
      if (path.empty()) syntax_error(start, "empty file path after '@'");
      out.push_back({Tok::path, path, start});
    } else {
      Tok kind;
      switch (ch) {
        case '[': kind = Tok::lbracket; break;
        case ']': kind = Tok::rbracket; break;
        case '(': kind = Tok::lparen; break;
        case ')': kind = Tok::rparen; break;
        case ';': kind = Tok::semicolon; break;
        case '*': kind = Tok::star; break;
        default: syntax_error(start, std::string("unexpected character '") + ch + "'");
      }
      out.push_back({kind, std::string(1, ch), start});
      advance();
    }
  }
  out.push_back({Tok::end, "", pos});
  return out;
}

// ---------------------------------------------------------------- parser

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Term parse_all() {
    Term t = sequence();
    if (peek().kind != Tok::end) syntax_error(peek().pos, "unexpected " + describe(peek()));
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }
  Token expect(Tok kind, const char* what) {
    if (peek().kind != kind) syntax_error(peek().pos, std::string("expected ") + what + ", found " + describe(peek()));
    return take();
  }

  Term sequence() {
    Term left = parallel();
    while (peek().kind == Tok::semicolon) {
      take();
      const SourcePos at = left.pos;
      Term right = parallel();
      left = Term{NodeKind::seq, ";", 0, "", {std::move(left), std::move(right)}, at};
    }
    return left;
  }

  Term parallel() {
    Term left = unary();
    while (peek().kind == Tok::star) {
      take();
      const SourcePos at = left.pos;
      Term right = unary();
      left = Term{NodeKind::par, "*", 0, "", {std::move(left), std::move(right)}, at};
    }
    return left;
  }

  Term unary() {
    if (peek().kind == Tok::lparen) {
      take();
      Term inner = sequence();
      expect(Tok::rparen, "')'");
      return inner;
    }
    const Token name = expect(Tok::ident, "a generator, file atom, '(' or adj/dagger/inv");
    if (is_unary(name.text)) {
      expect(Tok::lparen, "'('");
      Term inner = sequence();
      expect(Tok::rparen, "')'");
      return Term{unary_kind(name.text), name.text, 0, "", {std::move(inner)}, name.pos};
    }
    if (is_generator(name.text)) {
      expect(Tok::lbracket, "'['");
      const Token n = expect(Tok::number, "a wire count");
      expect(Tok::rbracket, "']'");
      Index size = 0;
      try {
        size = static_cast<Index>(std::stoll(n.text));
      } catch (const std::exception&) {
        syntax_error(n.pos, "wire count out of range");
      }
      return Term{NodeKind::generator, name.text, size, "", {}, name.pos};
    }
    if (is_source(name.text)) {
      expect(Tok::lparen, "'('");
      const Token path = expect(Tok::path, "'@path'");
      expect(Tok::rparen, "')'");
      return Term{NodeKind::file_atom, name.text, 0, path.text, {}, name.pos};
    }
    syntax_error(name.pos, "unknown name '" + name.text + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------- printer

int level(const Term& t) {
  switch (t.kind) {
    case NodeKind::seq: return 0;
    case NodeKind::par: return 1;
    default: return 2;
  }
}

std::string print_at(const Term& t, int min_level) {
  const std::string s = print(t);
  return level(t) < min_level ? "(" + s + ")" : s;
}

// ---------------------------------------------------------------- typing

std::string located(const Term& t) {
  return "`" + print(t) + "` at " + std::to_string(t.pos.line) + ":" + std::to_string(t.pos.column);
}

std::string dims(const Signature& s) {
  return std::to_string(s.src) + " -> " + std::to_string(s.dst) + " " + to_string(s.polarity);
}

Polarity generator_polarity(const EvalConfig& c) { return c.concave ? Polarity::concave : Polarity::convex; }

Signature generator_signature(const Term& t, Polarity p) {
  const Index n = t.size;
  const std::string& g = t.name;
  if (g == "id") return {n, n, p};
  if (g == "copy" || g == "coadd") return {n, 2 * n, p};
  if (g == "comp" || g == "add") return {2 * n, n, p};
  if (g == "discard" || g == "cozero") return {n, 0, p};
  return {0, n, p};  // unit, zero
}

// Strips the "Code: " prefix so a rethrown Error does not repeat it.
std::string bare_message(const Error& e) {
  const std::string what = e.what();
  const std::string prefix = std::string(to_string(e.code())) + ": ";
  return what.rfind(prefix, 0) == 0 ? what.substr(prefix.size()) : what;
}

QuadBifunction eval_node(const Term& t, const EvalConfig& c, FileCache& files) {
  switch (t.kind) {
    case NodeKind::generator: {
      QuadBifunction g = t.name == "id" ? identity(t.size) : generator(kGenerators.at(t.name), t.size);
      return c.concave ? negate(g) : g;
    }
    case NodeKind::file_atom: {
      if (t.name == "lin") {
        QuadBifunction f = from_linear_map(files.matrix(t.path), c.tol);
        return c.concave ? negate(f) : f;
      }
      if (t.name == "relspan") {
        const QuadBifunction& f = files.relation(t.path, c.tol);
        return c.concave ? negate(f) : f;
      }
      if (t.name == "gauss") {
        const GaussMap& g = files.gauss(t.path);
        return c.interp == Interpretation::cgf ? cgf_functor(g, c.tol) : logpdf_functor(g, c.tol);
      }
      return files.state(t.path, c.tol);
    }
    default: break;
  }
  std::vector<QuadBifunction> args;
  for (const Term& child : t.children) args.push_back(eval_node(child, c, files));
  try {
    switch (t.kind) {
      case NodeKind::seq: return compose(args[1], args[0], c.tol);
      case NodeKind::par: return tensor(args[0], args[1], c.tol);
      case NodeKind::adj: return adjoint(args[0], c.tol);
      case NodeKind::dagger: return dagger(args[0], c.tol);
      case NodeKind::inv: return inverse(args[0], c.tol);
      default: break;
    }
  } catch (const Error& e) {
    if (!e.is_improper()) throw;
    throw Error(e.code(), bare_message(e) + " in subterm " + located(t));
  }
  throw Error(ErrorCode::Precondition, "unreachable term kind");
}

}  // namespace

Term parse(std::string_view source) { return Parser(lex(source)).parse_all(); }

std::string print(const Term& t) {
  switch (t.kind) {
    case NodeKind::generator: return t.name + "[" + std::to_string(t.size) + "]";
    case NodeKind::file_atom: return t.name + "(@" + t.path + ")";
    case NodeKind::seq: return print_at(t.children[0], 0) + " ; " + print_at(t.children[1], 1);
    case NodeKind::par: return print_at(t.children[0], 1) + " * " + print_at(t.children[1], 2);
    case NodeKind::adj:
    case NodeKind::dagger:
    case NodeKind::inv: return t.name + "(" + print(t.children[0]) + ")";
  }
  return "";
}

bool same_structure(const Term& a, const Term& b) {
  if (a.kind != b.kind || a.name != b.name || a.size != b.size || a.path != b.path ||
      a.children.size() != b.children.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!same_structure(a.children[i], b.children[i])) return false;
  return true;
}

std::filesystem::path FileCache::resolve(const std::string& path) const {
  const std::filesystem::path p(path);
  return p.is_absolute() ? p : base_ / p;
}

const Matrix& FileCache::matrix(const std::string& path) {
  auto it = matrices_.find(path);
  if (it == matrices_.end()) {
    it = matrices_.emplace(path, io::matrix_from_json(io::read_json_file(resolve(path)))).first;
  }
  return it->second;
}

const QuadBifunction& FileCache::relation(const std::string& path, double tol) {
  auto it = relations_.find(path);
  if (it == relations_.end()) {
    const io::RelationSpan r = io::relation_from_json(io::read_json_file(resolve(path)));
    it = relations_.emplace(path, from_linear_relation(r.span, r.src_dim, tol)).first;
  }
  return it->second;
}

const GaussMap& FileCache::gauss(const std::string& path) {
  auto it = gauss_.find(path);
  if (it == gauss_.end()) it = gauss_.emplace(path, io::gauss_from_json(io::read_json_file(resolve(path)))).first;
  return it->second;
}

const QuadBifunction& FileCache::state(const std::string& path, double tol) {
  auto it = states_.find(path);
  if (it == states_.end()) {
    QuadBifunction s = io::bifunction_from_json(io::read_json_file(resolve(path)), tol);
    if (s.src_dim() != 0) {
      throw Error(ErrorCode::TypeError, "state(@" + path + ") has source dimension " +
                                            std::to_string(s.src_dim()) + ", expected 0");
    }
    it = states_.emplace(path, std::move(s)).first;
  }
  return it->second;
}

Signature typecheck(const Term& t, const EvalConfig& c, FileCache& files) {
  switch (t.kind) {
    case NodeKind::generator: return generator_signature(t, generator_polarity(c));
    case NodeKind::file_atom: {
      if (t.name == "lin") {
        const Matrix& a = files.matrix(t.path);
        return {a.cols(), a.rows(), generator_polarity(c)};
      }
      if (t.name == "relspan") {
        const QuadBifunction& r = files.relation(t.path, c.tol);
        return {r.src_dim(), r.dst_dim(), generator_polarity(c)};
      }
      if (t.name == "gauss") {
        const GaussMap& g = files.gauss(t.path);
        if (c.interp == Interpretation::cgf) return {g.src_dim(), g.dst_dim(), Polarity::convex};
        return {g.dst_dim(), g.src_dim(), Polarity::concave};
      }
      const QuadBifunction& s = files.state(t.path, c.tol);
      return {0, s.dst_dim(), s.polarity()};
    }
    case NodeKind::seq: {
      const Signature a = typecheck(t.children[0], c, files);
      const Signature b = typecheck(t.children[1], c, files);
      if (a.dst != b.src) {
        throw Error(ErrorCode::TypeError, "in " + located(t) + ": output dimension " + std::to_string(a.dst) +
                                              " of `" + print(t.children[0]) + "` does not match input dimension " +
                                              std::to_string(b.src) + " of `" + print(t.children[1]) + "`");
      }
      if (a.polarity != b.polarity) {
        throw Error(ErrorCode::TypeError, "in " + located(t) + ": cannot compose " + dims(a) + " with " + dims(b));
      }
      return {a.src, b.dst, a.polarity};
    }
    case NodeKind::par: {
      const Signature a = typecheck(t.children[0], c, files);
      const Signature b = typecheck(t.children[1], c, files);
      if (a.polarity != b.polarity) {
        throw Error(ErrorCode::TypeError, "in " + located(t) + ": cannot tensor " + dims(a) + " with " + dims(b));
      }
      return {a.src + b.src, a.dst + b.dst, a.polarity};
    }
    case NodeKind::adj:
    case NodeKind::inv: {
      const Signature a = typecheck(t.children[0], c, files);
      return {a.dst, a.src, opposite(a.polarity)};
    }
    case NodeKind::dagger: {
      const Signature a = typecheck(t.children[0], c, files);
      return {a.dst, a.src, a.polarity};
    }
  }
  throw Error(ErrorCode::Precondition, "unreachable term kind");
}

Signature typecheck(const Term& t, const EvalConfig& config) {
  FileCache files(config.base_dir);
  return typecheck(t, config, files);
}

QuadBifunction evaluate(const Term& t, const EvalConfig& config, FileCache& files) {
  typecheck(t, config, files);
  return eval_node(t, config, files);
}

QuadBifunction evaluate(const Term& t, const EvalConfig& config) {
  FileCache files(config.base_dir);
  return evaluate(t, config, files);
}

}  // namespace bifun::dsl
