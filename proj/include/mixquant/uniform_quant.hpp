#pragma once

// Closed-form quantizers on a single constant-density interval: the free
// n-point solution, and the variant where one codepoint is pinned to an
// endpoint of the interval.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mixquant/density.hpp"

namespace mixquant {

/// One constant-density piece: level t on [a, b].
struct UniformPiece {
  double a;
  double b;
  double t;

  UniformPiece(double a_, double b_, double t_) : a(a_), b(b_), t(t_) {
    if (!(a < b)) throw std::invalid_argument("UniformPiece: need a < b");
    if (!(t >= 0.0)) throw std::invalid_argument("UniformPiece: need t >= 0");
  }

  StepDensity as_step_density() const { return StepDensity({a, b}, {t}); }
};

struct UniformResult {
  Codebook codebook;
  double error;
};

struct EndpointResult {
  Codebook codebook;       // n+1 points, pinned endpoint included
  double free_first_point; // the free point adjacent to the far end
  double error;
};

/// Error of the optimal n-point quantizer on [a, b] with level t: (b-a)^3 t / (12 n^2).
inline double uniform_optimal_error(const UniformPiece& piece, int n) {
  const double len = piece.b - piece.a;
  return len * len * len * piece.t / (12.0 * n * n);
}

/// Optimal n-point codebook on a constant-density interval:
/// points a + (2j-1)(b-a)/(2n), j = 1..n.
inline UniformResult uniform_optimal(const UniformPiece& piece, int n) {
  if (n < 1) throw std::invalid_argument("uniform_optimal: need n >= 1");
  std::vector<double> pts(n);
  for (int j = 1; j <= n; ++j)
    pts[j - 1] = piece.a + (2.0 * j - 1.0) * (piece.b - piece.a) / (2.0 * n);
  return {Codebook(std::move(pts)), uniform_optimal_error(piece, n)};
}

/// Optimal (n+1)-point codebook on [a, b] constrained to contain b. The n free
/// points are equally spaced with common gap 2(a1 - a); the pinning makes a1
/// the solution of a single linear equation: a1 = (2n a + b) / (2n + 1).
inline EndpointResult endpoint_constrained_right(const UniformPiece& piece, int n) {
  if (n < 1) throw std::invalid_argument("endpoint_constrained_right: need n >= 1");
  const double a1 = (2.0 * n * piece.a + piece.b) / (2.0 * n + 1.0);
  std::vector<double> pts(n + 1);
  for (int j = 1; j <= n; ++j)
    pts[j - 1] = piece.a + (2.0 * j - 1.0) * (piece.b - a1) / (2.0 * n);
  pts[n] = piece.b;
  const double d1 = piece.b - a1, d0 = a1 - piece.a;
  const double error = piece.t * d1 * d1 * d1 / (12.0 * n * n) + piece.t * d0 * d0 * d0 / 3.0;
  return {Codebook(std::move(pts)), a1, error};
}

/// Mirror image of endpoint_constrained_right: the pinned point is the left
/// endpoint a. Obtained by reflecting the right-endpoint solution about the
/// interval midpoint.
inline EndpointResult endpoint_constrained_left(const UniformPiece& piece, int n) {
  EndpointResult right = endpoint_constrained_right(piece, n);
  const double center = 0.5 * (piece.a + piece.b);
  return {right.codebook.reflected(center), 2.0 * center - right.free_first_point,
          right.error};
}

}  // namespace mixquant
