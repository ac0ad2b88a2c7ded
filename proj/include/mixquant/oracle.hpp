#pragma once

// Independent numerical verification: Lloyd-Max fixed-point iteration on the
// step density with multi-restart, reporting the best restart by exact
// distortion. Restart 0 always starts from equal-mass quantiles; the others
// from sorted uniform draws of a deterministic PRNG.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <type_traits>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixquant/density.hpp"
#include "mixquant/selector.hpp"

namespace mixquant {

struct OracleReport {
  int n = 0;
  Codebook codebook{{0.0}};
  double error = 0.0;
  int iterations = 0;
  int restart_index = 0;
  bool converged = false;
  std::uint64_t seed = 0;
  std::string rng = "mt19937_64";  // restart r draws from mt19937_64(seed ^ golden*(r+1))
};

namespace detail {

inline std::uint64_t restart_seed(std::uint64_t seed, int restart) {
  return seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(restart + 1));
}

inline std::vector<double> lloyd_init(const StepDensity& d, int n, int restart,
                                      std::uint64_t seed) {
  std::vector<double> pts(n);
  if (restart == 0) {
    for (int i = 0; i < n; ++i) pts[i] = d.quantile((2.0 * i + 1.0) / (2.0 * n));
    return pts;
  }
  std::mt19937_64 gen(restart_seed(seed, restart));
  std::uniform_real_distribution<double> uni(d.support_lo(), d.support_hi());
  const double min_gap = 1e-9 * (d.support_hi() - d.support_lo());
  for (int attempt = 0; attempt < 1000; ++attempt) {
    for (double& x : pts) x = uni(gen);
    std::sort(pts.begin(), pts.end());
    bool distinct = true;
    for (int i = 1; i < n; ++i)
      if (pts[i] - pts[i - 1] < min_gap) distinct = false;
    if (distinct) return pts;
  }
  throw std::runtime_error("lloyd: failed to draw distinct starting points");
}

/// One Lloyd run from given sorted starting points: alternate midpoint
/// boundaries and cell centroids until the sup-norm update drops below tol or
/// the budget runs out. `observer`, when set, sees the points after every
/// iteration.
struct LloydRun {
  int iterations = 0;
  bool converged = false;
};

template <class Observer = std::nullptr_t>
inline LloydRun lloyd_iterate(const StepDensity& d, std::vector<double>& pts,
                              int max_iters, double tol, Observer observer = nullptr) {
  const int n = static_cast<int>(pts.size());
  std::vector<double> next(n);
  LloydRun run;
  while (run.iterations < max_iters) {
    ++run.iterations;
    double lo = d.support_lo();
    double delta = 0.0;
    for (int i = 0; i < n; ++i) {
      const double hi = (i + 1 < n) ? 0.5 * (pts[i] + pts[i + 1]) : d.support_hi();
      next[i] = d.conditional_mean(lo, hi);
      delta = std::max(delta, std::abs(next[i] - pts[i]));
      lo = hi;
    }
    pts.swap(next);
    if constexpr (!std::is_same_v<Observer, std::nullptr_t>) observer(run.iterations, pts);
    if (delta < tol) {
      run.converged = true;
      break;
    }
  }
  return run;
}

}  // namespace detail

/// Multi-restart Lloyd-Max: restart 0 from equal-mass quantiles, the rest from
/// sorted uniform draws. The best restart by exact distortion wins; ties go to
/// the lower restart index.
inline OracleReport lloyd(const StepDensity& d, int n, int restarts = 64,
                          int max_iters = 100000, double tol = 1e-12,
                          std::uint64_t seed = 0) {
  if (n < 1) throw std::invalid_argument("lloyd: need n >= 1");
  if (restarts < 1) throw std::invalid_argument("lloyd: need restarts >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("lloyd: need tol > 0");

  OracleReport best;
  best.n = n;
  best.seed = seed;
  double best_error = std::numeric_limits<double>::infinity();

  for (int r = 0; r < restarts; ++r) {
    std::vector<double> pts = detail::lloyd_init(d, n, r, seed);
    const detail::LloydRun run = detail::lloyd_iterate(d, pts, max_iters, tol);
    const Codebook cb(pts);
    const double err = d.distortion(cb);
    if (err < best_error) {
      best_error = err;
      best.codebook = cb;
      best.error = err;
      best.iterations = run.iterations;
      best.restart_index = r;
      best.converged = run.converged;
    }
  }
  return best;
}

/// Closed-form solve(n) vs the Lloyd oracle on the same density.
struct VerifyReport {
  QuantizationResult closed_form;
  OracleReport oracle;
  double max_point_gap = 0.0;
  double error_gap = 0.0;
};

inline VerifyReport verify(int n, int restarts = 64, double tol = 1e-12,
                           std::uint64_t seed = 0, int max_iters = 100000) {
  const StepDensity d = StepDensity::mixture(0.5);
  QuantizationResult closed = solve(n);
  OracleReport rep = lloyd(d, n, restarts, max_iters, tol, seed);
  double point_gap = 0.0;
  for (std::size_t i = 0; i < closed.codebook.size(); ++i)
    point_gap = std::max(point_gap, std::abs(closed.codebook[i] - rep.codebook[i]));
  const double error_gap = std::abs(closed.error - rep.error);
  return {std::move(closed), std::move(rep), point_gap, error_gap};
}

}  // namespace mixquant
