#pragma once

// Convex and concave bifunctions with PCQF graphs.
//
// A bifunction F : R^m -> R^n is stored as its graph function on R^(m+n),
// inputs first. Concave bifunctions store the negation of their graph, so a
// concave F with stored PCQF g has F(x, y) = -g(x, y); every operation then
// runs on convex data and sup-composition becomes inf-composition of the
// stored graphs.

#include <string>

#include "bifun/pcqf.hpp"

namespace bifun {

enum class Polarity { convex, concave };

constexpr Polarity opposite(Polarity p) {
  return p == Polarity::convex ? Polarity::concave : Polarity::convex;
}

constexpr const char* to_string(Polarity p) { return p == Polarity::convex ? "convex" : "concave"; }

class QuadBifunction {
 public:
  QuadBifunction() = default;
  QuadBifunction(Index src_dim, Index dst_dim, Pcqf stored_graph, Polarity polarity);

  Index src_dim() const { return src_; }
  Index dst_dim() const { return dst_; }
  Polarity polarity() const { return polarity_; }
  bool is_convex() const { return polarity_ == Polarity::convex; }
  /// The stored convex PCQF (the graph itself, or its negation when concave).
  const Pcqf& stored() const { return graph_; }

  /// Value F(x, y); concave bifunctions return -stored(x, y).
  ExtReal operator()(const Vector& x, const Vector& y) const;

 private:
  Index src_ = 0;
  Index dst_ = 0;
  Pcqf graph_;
  Polarity polarity_ = Polarity::convex;
};

/// Convex state I -> R^n with graph f, and convex effect R^n -> I.
QuadBifunction state(const Pcqf& f);
QuadBifunction effect(const Pcqf& f);
/// Value of a scalar bifunction I -> I.
ExtReal scalar_value(const QuadBifunction& f);

QuadBifunction identity(Index n);

/// f o g: first g : R^m -> R^n, then f : R^n -> R^k. Infimizes (convex) or
/// supremizes (concave) over the shared variable. Throws PolarityMismatch,
/// DimensionMismatch, and UnboundedBelow / UnboundedAbove for improper
/// composites.
QuadBifunction compose(const QuadBifunction& f, const QuadBifunction& g,
                       double tol = linalg::kDefaultTol);

/// (F (x) G)((x1,x2),(y1,y2)) = F(x1,y1) + G(x2,y2).
QuadBifunction tensor(const QuadBifunction& f, const QuadBifunction& g,
                      double tol = linalg::kDefaultTol);

/// Adjoint: F*(y*, x*) = inf_{x,y} F(x,y) + <x*,x> - <y*,y> for convex F
/// (sup for concave F). Reverses direction and flips polarity.
QuadBifunction adjoint(const QuadBifunction& f, double tol = linalg::kDefaultTol);

/// F^dagger(y, x) = F(x, y).
QuadBifunction dagger(const QuadBifunction& f, double tol = linalg::kDefaultTol);

/// F_*(x, y) = -F(y, x); flips polarity.
QuadBifunction inverse(const QuadBifunction& f, double tol = linalg::kDefaultTol);

/// -F; flips polarity. Turns indicator bifunctions into their concave variants.
QuadBifunction negate(const QuadBifunction& f);

/// Symmetry R^m (x) R^n -> R^n (x) R^m.
QuadBifunction swap(Index m, Index n);

enum class GeneratorKind { copy, comp, discard, unit, add, coadd, zero, cozero };

/// Convex generators of the two hypergraph structures:
///   additive (black):    copy, comp, discard, unit
///   co-additive (white): coadd, add, cozero, zero
/// Concave variants are negate(generator(...)).
QuadBifunction generator(GeneratorKind kind, Index n);

/// F_A(x, y) = [y = A x] for A : R^m -> R^n.
QuadBifunction from_linear_map(const Matrix& a, double tol = linalg::kDefaultTol);

/// Indicator of the linear relation spanned by the columns of `spanning`,
/// which live in R^(src_dim + dst_dim).
QuadBifunction from_linear_relation(const Matrix& spanning, Index src_dim,
                                    double tol = linalg::kDefaultTol);

/// discard o F: the parametric optimal value x -> inf_y F(x, y).
QuadBifunction perturbation_function(const QuadBifunction& f, double tol = linalg::kDefaultTol);

/// Same dimensions, same polarity, equal stored graphs within tol.
bool equal_within(const QuadBifunction& f, const QuadBifunction& g, double tol = 1e-7);

enum class Hypergraph { additive, coadditive };

struct Discardability {
  bool discardable = false;
  std::string diagnostic;
};

/// Whether discard_Y o F = discard_X in the chosen hypergraph structure.
///   additive:   opt_y F(x, y) = 0 for all x (opt = inf / sup by polarity)
///   coadditive: F(x, 0) = [x = 0] (convex) or -[x = 0] (concave)
/// An improper infimum yields false with the diagnostic filled in.
Discardability is_discardable(const QuadBifunction& f, Hypergraph structure = Hypergraph::additive,
                              double tol = 1e-7);

}  // namespace bifun
