#pragma once

// Optimal codebooks and quantization errors for the symmetric mixed
// distribution (mixture weight 1/2): explicit solutions for n <= 6 and the
// general (k, m)-split stationarity systems for larger n. A split places k
// codepoints in [0, 1/2] and m in (1/2, 3/4); the remaining points are the
// reflection about 3/4 (plus the center point 3/4 itself when n is odd).
//
// Each split case reduces to a single scalar unknown:
//   case V1 (cell boundary (a_k + b_1)/2 <= 1/2): unknown b_1, with
//     a_k = (2k-1) b_1 / (2k+1) and b_2 linear in b_1;
//   case V2 (boundary >= 1/2): unknown a_k, with
//     a_{k-1} = (2k-3) a_k / (2k-1) and b_1 linear in a_k.
// The unknown satisfies a centroid condition solved by damped fixed-point
// iteration with a bisection fallback.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixquant/density.hpp"
#include "mixquant/uniform_quant.hpp"

namespace mixquant {

enum class Parity { even, odd };
enum class SplitCase { v1, v2 };

constexpr double kCenter = 0.75;

/// Identifies one branch of the split machinery: k points in [0, 1/2],
/// m in (1/2, 3/4), the parity of n, and which midpoint case applies.
struct SplitConfig {
  int k = 1;
  int m = 1;
  Parity parity = Parity::even;
  SplitCase split_case = SplitCase::v1;

  int n() const { return parity == Parity::even ? 2 * (k + m) : 2 * (k + m) + 1; }
};

inline const char* to_string(SplitCase c) { return c == SplitCase::v1 ? "V1" : "V2"; }
inline const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

struct QuantizationResult {
  int n;
  Codebook codebook;
  double error;
  std::optional<SplitConfig> split;  // empty for the explicit small-n solutions
};

/// min over the two cases; infeasible cases count as +infinity.
struct FValue {
  double value = std::numeric_limits<double>::infinity();
  std::optional<QuantizationResult> result;
};

namespace detail {

inline const StepDensity& symmetric_mixture() {
  static const StepDensity d = StepDensity::mixture(0.5);
  return d;
}

// Geometry of one assembled left half. `boundary_right` is the right edge of
// the driven point's Voronoi cell; for V1 the driven point is b_1, for V2 a_k.
struct LeftHalf {
  std::vector<double> a;
  std::vector<double> b;  // excludes the center 3/4
  double cell_lo = 0.0;
  double cell_hi = 0.0;
  double mid_c = 0.0;  // (a_k + b_1)/2, the case-defining midpoint
};

inline double linear_b_from(double u, int block, Parity parity) {
  // Solves b = (b_prev + b)/2 + step for the first point of the trailing
  // uniform block; `block` is the point count of that block.
  const double q = 1.0 / (2.0 * block);
  if (parity == Parity::even) return ((1.0 - q) * u + 1.5 * q) / (1.0 + q);
  return (u + 1.5 * q) / (1.0 + 2.0 * q);
}

inline LeftHalf assemble_v1(int k, int m, Parity parity, double b1) {
  LeftHalf lh;
  const double ak = (2.0 * k - 1.0) * b1 / (2.0 * k + 1.0);
  const double c = 0.5 * (ak + b1);
  lh.mid_c = c;
  lh.a.resize(k);
  for (int j = 1; j <= k; ++j) lh.a[j - 1] = (2.0 * j - 1.0) * c / (2.0 * k);
  lh.b.push_back(b1);
  lh.cell_lo = c;
  if (m == 1) {
    lh.cell_hi = (parity == Parity::even) ? kCenter : 0.5 * (b1 + kCenter);
  } else {
    const double b2 = linear_b_from(b1, m - 1, parity);
    const double s = 0.5 * (b1 + b2);
    lh.cell_hi = s;
    lh.b.push_back(b2);
    const double span = (parity == Parity::even) ? (kCenter - s) : (kCenter - b2);
    for (int j = 2; j <= m - 1; ++j)
      lh.b.push_back(s + (2.0 * j - 1.0) * span / (2.0 * (m - 1)));
  }
  return lh;
}

inline LeftHalf assemble_v2(int k, int m, Parity parity, double ak) {
  LeftHalf lh;
  double lo = 0.0;
  lh.a.resize(k);
  if (k >= 2) {
    const double ak1 = (2.0 * k - 3.0) * ak / (2.0 * k - 1.0);
    lo = 0.5 * (ak1 + ak);
    for (int j = 1; j <= k - 1; ++j) lh.a[j - 1] = (2.0 * j - 1.0) * lo / (2.0 * (k - 1));
  }
  lh.a[k - 1] = ak;
  const double b1 = linear_b_from(ak, m, parity);
  const double c = 0.5 * (ak + b1);
  lh.mid_c = c;
  lh.cell_lo = lo;
  lh.cell_hi = c;
  lh.b.push_back(b1);
  const double span = (parity == Parity::even) ? (kCenter - c) : (kCenter - b1);
  for (int j = 2; j <= m; ++j) lh.b.push_back(c + (2.0 * j - 1.0) * span / (2.0 * m));
  return lh;
}

// Centroid target for the driven point of a config at scalar value u.
inline double centroid_target(const SplitConfig& cfg, double u) {
  const StepDensity& d = symmetric_mixture();
  const LeftHalf lh = (cfg.split_case == SplitCase::v1)
                          ? assemble_v1(cfg.k, cfg.m, cfg.parity, u)
                          : assemble_v2(cfg.k, cfg.m, cfg.parity, u);
  if (lh.cell_hi - lh.cell_lo < 1e-13) return u;  // degenerate cell, stalls out
  return d.conditional_mean(lh.cell_lo, lh.cell_hi);
}

// Damped fixed-point iteration for u = centroid_target(u), bisection fallback.
inline std::optional<double> solve_scalar(const SplitConfig& cfg, double init, double lo,
                                          double hi) {
  constexpr double kDamping = 0.5;
  constexpr double kTol = 1e-13;
  constexpr int kBudget = 100000;
  double u = std::clamp(init, lo, hi);
  for (int it = 0; it < kBudget; ++it) {
    const double target = centroid_target(cfg, u);
    if (std::abs(target - u) < kTol) return u;
    u = std::clamp(u + kDamping * (target - u), lo, hi);
  }
  // Bisection on g(u) = target(u) - u over a sign-change bracket.
  auto g = [&](double x) { return centroid_target(cfg, x) - x; };
  constexpr int kScan = 128;
  double prev_x = lo, prev_g = g(lo);
  for (int i = 1; i <= kScan; ++i) {
    const double x = lo + (hi - lo) * i / kScan;
    const double gx = g(x);
    if (prev_g == 0.0) return prev_x;
    if (prev_g * gx < 0.0) {
      double a = prev_x, b = x, ga = prev_g;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        const double gm = g(mid);
        if (std::abs(gm) < kTol || b - a < 1e-16) return mid;
        if (ga * gm < 0.0)
          b = mid;
        else
          a = mid, ga = gm;
      }
      return 0.5 * (a + b);
    }
    prev_x = x;
    prev_g = gx;
  }
  return std::nullopt;  // no stationary point in range
}

inline bool feasible(const SplitConfig& cfg, const LeftHalf& lh) {
  constexpr double kSlack = 1e-9;
  constexpr double kEdge = 1e-12;
  double prev = 0.0;
  for (double x : lh.a) {
    if (!(x > prev - kEdge) || !std::isfinite(x)) return false;
    prev = x;
  }
  if (lh.a.front() <= 0.0) return false;
  if (lh.a.back() > 0.5 + kSlack) return false;
  for (double x : lh.b) {
    if (!(x > prev + kEdge) || !std::isfinite(x)) return false;
    prev = x;
  }
  if (lh.b.front() < 0.5 - kSlack) return false;
  if (lh.b.back() >= kCenter - kEdge) return false;
  if (cfg.split_case == SplitCase::v1) {
    if (lh.mid_c > 0.5 + kEdge) return false;
  } else {
    if (lh.mid_c < 0.5 - kEdge) return false;
    if (cfg.k >= 2 && lh.cell_lo > 0.5 + kSlack) return false;
  }
  return true;
}

// Quantization error via the proposition-style assembly: closed-form uniform
// block errors plus exact integrals over the two transition cells, doubled by
// symmetry. Cross-checked elsewhere against StepDensity::distortion.
inline double split_error(const SplitConfig& cfg, const LeftHalf& lh) {
  const StepDensity& d = symmetric_mixture();
  const int k = cfg.k, m = cfg.m;
  double half = 0.0;
  if (cfg.split_case == SplitCase::v1) {
    const double c = lh.mid_c;
    half += c * c * c * 0.5 / (12.0 * k * k);  // a-block on [0, c], level 1/2
    const double b1 = lh.b[0];
    half += d.cell_distortion(b1, lh.cell_lo, lh.cell_hi);
    if (m == 1) {
      if (cfg.parity == Parity::odd)
        half += d.cell_distortion(kCenter, lh.cell_hi, kCenter);
    } else {
      const double s = lh.cell_hi;
      if (cfg.parity == Parity::even) {
        const double len = kCenter - s;
        half += len * len * len / (12.0 * (m - 1) * (m - 1));
      } else {
        const double b2 = lh.b[1];
        const double d1 = kCenter - b2, d0 = b2 - s;
        half += d1 * d1 * d1 / (12.0 * (m - 1) * (m - 1)) + d0 * d0 * d0 / 3.0;
      }
    }
  } else {
    const double lo = lh.cell_lo, c = lh.cell_hi;
    if (k >= 2) half += lo * lo * lo * 0.5 / (12.0 * (k - 1) * (k - 1));
    half += d.cell_distortion(lh.a[k - 1], lo, c);
    if (cfg.parity == Parity::even) {
      const double len = kCenter - c;
      half += len * len * len / (12.0 * m * m);
    } else {
      const double b1 = lh.b[0];
      const double d1 = kCenter - b1, d0 = b1 - c;
      half += d1 * d1 * d1 / (12.0 * m * m) + d0 * d0 * d0 / 3.0;
    }
  }
  return 2.0 * half;
}

inline Codebook complete_codebook(const LeftHalf& lh, Parity parity) {
  std::vector<double> pts;
  pts.reserve(2 * (lh.a.size() + lh.b.size()) + 1);
  pts.insert(pts.end(), lh.a.begin(), lh.a.end());
  pts.insert(pts.end(), lh.b.begin(), lh.b.end());
  std::vector<double> left = pts;
  if (parity == Parity::odd) pts.push_back(kCenter);
  for (auto it = left.rbegin(); it != left.rend(); ++it)
    pts.push_back(2.0 * kCenter - *it);
  return Codebook(std::move(pts));
}

// Equal-mass quantile seed for the driven point.
inline double seed_point(const SplitConfig& cfg) {
  const StepDensity& d = symmetric_mixture();
  const int n = cfg.n();
  const int idx = (cfg.split_case == SplitCase::v1) ? cfg.k + 1 : cfg.k;
  return d.quantile((2.0 * idx - 1.0) / (2.0 * n));
}

}  // namespace detail

/// Solves the stationarity system of one split configuration. Returns empty
/// when the converged solution violates the case's own constraints (midpoint
/// side, interval occupancy, ordering). Throws on domain errors.
inline std::optional<QuantizationResult> solve_split(const SplitConfig& cfg) {
  if (cfg.k < 1 || cfg.m < 1) throw std::invalid_argument("solve_split: need k, m >= 1");
  if (cfg.k == 1 && cfg.m == 1)
    throw std::invalid_argument("solve_split: (k, m) = (1, 1) is outside the split domain");
  const double lo = (cfg.split_case == SplitCase::v1) ? 0.30 : 1e-9;
  const double hi = (cfg.split_case == SplitCase::v1) ? kCenter - 1e-9 : 0.70;
  const auto u = detail::solve_scalar(cfg, detail::seed_point(cfg), lo, hi);
  if (!u) return std::nullopt;
  const detail::LeftHalf lh = (cfg.split_case == SplitCase::v1)
                                  ? detail::assemble_v1(cfg.k, cfg.m, cfg.parity, *u)
                                  : detail::assemble_v2(cfg.k, cfg.m, cfg.parity, *u);
  if (!detail::feasible(cfg, lh)) return std::nullopt;
  return QuantizationResult{cfg.n(), detail::complete_codebook(lh, cfg.parity),
                            detail::split_error(cfg, lh), cfg};
}

/// F(k, m) = min{V1(k, m), V2(k, m)} with infeasible cases treated as
/// +infinity. Ties within 1e-12 resolve to the V1 solution.
inline FValue f_split(int k, int m, Parity parity) {
  if (k == 1 && m == 1)
    throw std::invalid_argument("f_split: (k, m) = (1, 1) is outside the domain");
  FValue out;
  const auto v1 = solve_split({k, m, parity, SplitCase::v1});
  const auto v2 = solve_split({k, m, parity, SplitCase::v2});
  if (v1) {
    out.value = v1->error;
    out.result = v1;
  }
  if (v2 && v2->error < out.value - 1e-12) {
    out.value = v2->error;
    out.result = v2;
  }
  return out;
}

namespace detail {

// Bivariate polynomial in (a1, a2): the printed case-wise distortion
// expressions for four- and five-point codebooks.
struct Poly2 {
  struct Term {
    int i, j;
    double c;
  };
  std::vector<Term> terms;

  double eval(double x, double y) const {
    double s = 0.0;
    for (const auto& t : terms)
      s += t.c * std::pow(x, t.i) * std::pow(y, t.j);
    return s;
  }
  Poly2 dx() const {
    Poly2 p;
    for (const auto& t : terms)
      if (t.i > 0) p.terms.push_back({t.i - 1, t.j, t.c * t.i});
    return p;
  }
  Poly2 dy() const {
    Poly2 p;
    for (const auto& t : terms)
      if (t.j > 0) p.terms.push_back({t.i, t.j - 1, t.c * t.j});
    return p;
  }
};

// Safeguarded Newton on the gradient system from a grid seed; step halving
// keeps the objective non-increasing.
inline std::optional<std::pair<double, double>> minimize_poly2(const Poly2& p) {
  const Poly2 gx = p.dx(), gy = p.dy();
  const Poly2 gxx = gx.dx(), gxy = gx.dy(), gyy = gy.dy();

  double bx = 0.1, by = 0.2, bv = std::numeric_limits<double>::infinity();
  constexpr int kGrid = 80;
  for (int i = 1; i < kGrid; ++i) {
    for (int j = i + 1; j < kGrid; ++j) {
      const double x = 0.75 * i / kGrid, y = 0.75 * j / kGrid;
      const double v = p.eval(x, y);
      if (v < bv) bv = v, bx = x, by = y;
    }
  }
  double x = bx, y = by;
  for (int it = 0; it < 200; ++it) {
    const double g1 = gx.eval(x, y), g2 = gy.eval(x, y);
    if (std::abs(g1) < 1e-15 && std::abs(g2) < 1e-15) break;
    const double h11 = gxx.eval(x, y), h12 = gxy.eval(x, y), h22 = gyy.eval(x, y);
    const double det = h11 * h22 - h12 * h12;
    double dx1, dy1;
    if (std::abs(det) > 1e-14 && h11 > 0.0) {
      dx1 = -(h22 * g1 - h12 * g2) / det;
      dy1 = -(h11 * g2 - h12 * g1) / det;
    } else {
      dx1 = -g1;
      dy1 = -g2;
    }
    double step = 1.0;
    const double v0 = p.eval(x, y);
    while (step > 1e-12 && p.eval(x + step * dx1, y + step * dy1) > v0) step *= 0.5;
    x += step * dx1;
    y += step * dy1;
  }
  if (!std::isfinite(x) || !std::isfinite(y)) return std::nullopt;
  return std::make_pair(x, y);
}

}  // namespace detail

/// Optimal n-point codebooks for n = 1..6. The n = 4 and n = 5 solutions are
/// produced by minimizing the case-wise cubic distortion expressions rather
/// than returned as literal decimals; the others are exact closed forms.
inline QuantizationResult small_n(int n) {
  using detail::Poly2;
  switch (n) {
    case 1:
      return {1, Codebook({0.75}), 7.0 / 48.0, std::nullopt};
    case 2:
      return {2, Codebook({7.0 / 16.0, 17.0 / 16.0}), 37.0 / 768.0, std::nullopt};
    case 3:
      return {3, Codebook({0.25, 0.75, 1.25}), 1.0 / 48.0, std::nullopt};
    case 6:
      return {6, Codebook({0.125, 0.375, 0.625, 0.875, 1.125, 1.375}), 1.0 / 192.0,
              SplitConfig{2, 1, Parity::even, SplitCase::v1}};
    case 4: {
      // Boundary at or left of 1/2 vs right of 1/2.
      const Poly2 pa{{{3, 0, 24}, {2, 1, 24}, {1, 2, -24}, {0, 3, -24},
                      {0, 2, 96}, {0, 1, -84}, {0, 0, 23}}};
      const Poly2 pb{{{3, 0, 48}, {2, 1, 48}, {2, 0, -48}, {1, 2, -48}, {1, 0, 24},
                      {0, 3, -48}, {0, 2, 144}, {0, 1, -108}, {0, 0, 23}}};
      double best = std::numeric_limits<double>::infinity();
      double a1 = 0, a2 = 0;
      if (auto s = detail::minimize_poly2(pa)) {
        const double v = pa.eval(s->first, s->second) / 96.0;
        if (0.5 * (s->first + s->second) <= 0.5 + 1e-9 && v < best)
          best = v, a1 = s->first, a2 = s->second;
      }
      if (auto s = detail::minimize_poly2(pb)) {
        const double v = pb.eval(s->first, s->second) / 96.0;
        if (0.5 * (s->first + s->second) >= 0.5 - 1e-9 && v < best)
          best = v, a1 = s->first, a2 = s->second;
      }
      return {4, Codebook({a1, a2, 1.5 - a2, 1.5 - a1}), best, std::nullopt};
    }
    case 5: {
      const Poly2 pc{{{3, 0, 192}, {2, 1, 192}, {1, 2, -192},
                      {0, 2, 144}, {0, 1, -108}, {0, 0, 31}}};
      const Poly2 pd{{{3, 0, 96}, {2, 1, 96}, {1, 2, -96}, {0, 3, 96},
                      {0, 2, -48}, {0, 1, -12}, {0, 0, 11}}};
      const Poly2 pe{{{3, 0, 192}, {2, 1, 192}, {2, 0, -192}, {1, 2, -192},
                      {1, 0, 96}, {0, 2, 144}, {0, 1, -108}, {0, 0, 11}}};
      double best = std::numeric_limits<double>::infinity();
      double a1 = 0, a2 = 0;
      if (auto s = detail::minimize_poly2(pc)) {
        const double v = pc.eval(s->first, s->second) / 768.0;
        if (s->second <= 0.25 + 1e-9 && v < best) best = v, a1 = s->first, a2 = s->second;
      }
      if (auto s = detail::minimize_poly2(pd)) {
        const double v = pd.eval(s->first, s->second) / 384.0;
        if (0.5 * (s->first + s->second) <= 0.5 + 1e-9 && s->second >= 0.25 - 1e-9 &&
            v < best)
          best = v, a1 = s->first, a2 = s->second;
      }
      if (auto s = detail::minimize_poly2(pe)) {
        const double v = pe.eval(s->first, s->second) / 384.0;
        if (0.5 * (s->first + s->second) >= 0.5 - 1e-9 && v < best)
          best = v, a1 = s->first, a2 = s->second;
      }
      return {5, Codebook({a1, a2, 0.75, 1.5 - a2, 1.5 - a1}), best, std::nullopt};
    }
    default:
      throw std::invalid_argument("small_n: n must lie in 1..6, got " + std::to_string(n));
  }
}

}  // namespace mixquant
