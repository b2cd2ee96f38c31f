#pragma once

// Seeded random instances with controlled spectra, shared by the property
// tests and the `check` suites.

#include <cstdint>
#include <random>

#include "bifun/gauss.hpp"

namespace bifun::random {

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  /// Uniform integer in [lo, hi].
  Index integer(Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(engine_); }
  bool chance(double p) { return uniform(0.0, 1.0) < p; }

  Matrix matrix(Index rows, Index cols);
  Vector vector(Index n);
  /// Haar-ish orthogonal matrix (QR of a Gaussian matrix with sign fix).
  Matrix orthogonal(Index n);
  /// V diag(l) V^T with `rank` eigenvalues in [lo, hi] and the rest zero.
  Matrix psd(Index n, Index rank, double lo, double hi);
  /// Rank drawn uniformly from [0, n] when `allow_singular`, else n.
  Matrix psd_maybe_singular(Index n, bool allow_singular, double lo, double hi);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// PCQF on R^n: random affine domain (possibly a point, occasionally with
/// redundant equations), curvature eigenvalues in {0} u [0.25, 4].
Pcqf random_pcqf(Generator& gen, Index n);

/// Gaussian map R^m -> R^n with covariance eigenvalues in {0} u [0.3, 3].
GaussMap random_gauss(Generator& gen, Index m, Index n, bool allow_singular = true);

/// Linear-relation bifunction R^m -> R^n of random rank.
QuadBifunction random_linear_relation(Generator& gen, Index m, Index n);

}  // namespace bifun::random
