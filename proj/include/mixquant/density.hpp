#pragma once

// Piecewise-constant densities on the line: measures, moments, conditional
// means, and exact squared-distance distortion for a codebook. All integrals
// use closed-form polynomial antiderivatives per piece, so results are exact
// up to floating rounding.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mixquant {

/// Raised when a conditional expectation is requested over an interval whose
/// mass is below the zero-mass tolerance.
struct zero_mass_error : std::domain_error {
  using std::domain_error::domain_error;
};

/// Strictly increasing finite list of codepoints. Voronoi boundaries are the
/// midpoints of consecutive points.
class Codebook {
 public:
  explicit Codebook(std::vector<double> points) : points_(std::move(points)) {
    if (points_.empty()) throw std::invalid_argument("Codebook: empty point list");
    for (std::size_t i = 1; i < points_.size(); ++i) {
      if (!(points_[i - 1] < points_[i]))
        throw std::invalid_argument("Codebook: points must be strictly increasing");
    }
  }

  std::size_t size() const { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }
  const std::vector<double>& points() const { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  /// Mirror image about `center` (order reverses so the result is sorted).
  Codebook reflected(double center) const {
    std::vector<double> r(points_.rbegin(), points_.rend());
    for (double& x : r) x = 2.0 * center - x;
    return Codebook(std::move(r));
  }

 private:
  std::vector<double> points_;
};

/// Piecewise-constant density: levels[i] on [breakpoints[i], breakpoints[i+1]].
/// Atomless, so closed vs half-open pieces is immaterial.
class StepDensity {
 public:
  StepDensity(std::vector<double> breakpoints, std::vector<double> levels)
      : breakpoints_(std::move(breakpoints)), levels_(std::move(levels)) {
    if (breakpoints_.size() < 2 || levels_.size() + 1 != breakpoints_.size())
      throw std::invalid_argument("StepDensity: need r+1 breakpoints for r levels");
    for (std::size_t i = 1; i < breakpoints_.size(); ++i) {
      if (!(breakpoints_[i - 1] < breakpoints_[i]))
        throw std::invalid_argument("StepDensity: breakpoints must be strictly increasing");
    }
    for (double t : levels_) {
      if (!(t >= 0.0)) throw std::invalid_argument("StepDensity: levels must be nonnegative");
    }
  }

  /// The three-piece mixed density: p on [0, 1/2], 1 on [1/2, 1], 1-p on [1, 3/2].
  static StepDensity mixture(double p) {
    if (!(p > 0.0 && p < 1.0))
      throw std::invalid_argument("mixture density: weight p must lie in (0, 1), got " +
                                  std::to_string(p));
    StepDensity d({0.0, 0.5, 1.0, 1.5}, {p, 1.0, 1.0 - p});
    d.mixture_weight_ = p;
    return d;
  }

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& levels() const { return levels_; }
  double support_lo() const { return breakpoints_.front(); }
  double support_hi() const { return breakpoints_.back(); }

  /// Mixture weight p when built by mixture(); NaN otherwise.
  double mixture_weight() const { return mixture_weight_; }

  double value_at(double x) const {
    if (x < support_lo() || x > support_hi()) return 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i)
      if (x <= breakpoints_[i + 1]) return levels_[i];
    return 0.0;
  }

  /// P([c, e]) = integral of f over [c, e], clipped to the support.
  double measure(double c, double e) const {
    if (!(c <= e)) throw std::invalid_argument("measure: need c <= e");
    double total = 0.0;
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      const double lo = std::max(c, breakpoints_[i]);
      const double hi = std::min(e, breakpoints_[i + 1]);
      if (hi > lo) total += levels_[i] * (hi - lo);
    }
    return total;
  }

  /// Integral of x f(x) over [c, e].
  double first_moment(double c, double e) const {
    double total = 0.0;
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      const double lo = std::max(c, breakpoints_[i]);
      const double hi = std::min(e, breakpoints_[i + 1]);
      if (hi > lo) total += levels_[i] * 0.5 * (hi * hi - lo * lo);
    }
    return total;
  }

  /// E(X : X in [c, e]). Throws zero_mass_error when the interval mass is
  /// below 1e-14 (0/0 amplification guard).
  double conditional_mean(double c, double e) const {
    const double mass = measure(c, e);
    if (mass < kZeroMassTol)
      throw zero_mass_error("conditional_mean: interval [" + std::to_string(c) + ", " +
                            std::to_string(e) + "] carries no mass");
    return first_moment(c, e) / mass;
  }

  double mean() const { return first_moment(support_lo(), support_hi()); }

  double variance() const {
    return cell_distortion(mean(), support_lo(), support_hi());
  }

  std::pair<double, double> moments() const { return {mean(), variance()}; }

  /// Integral of (x - a)^2 f(x) over [c, e], exact cubic antiderivative per piece.
  double cell_distortion(double a, double c, double e) const {
    double total = 0.0;
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      const double lo = std::max(c, breakpoints_[i]);
      const double hi = std::min(e, breakpoints_[i + 1]);
      if (hi > lo) {
        const double u = hi - a, v = lo - a;
        total += levels_[i] * (u * u * u - v * v * v) / 3.0;
      }
    }
    return total;
  }

  /// Distortion error V(P; alpha) = integral of min_a (x - a)^2 f(x) dx.
  double distortion(const Codebook& alpha) const {
    double total = 0.0;
    double lo = support_lo();
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      const double hi =
          (i + 1 < alpha.size()) ? 0.5 * (alpha[i] + alpha[i + 1]) : support_hi();
      total += cell_distortion(alpha[i], lo, hi);
      lo = hi;
    }
    return total;
  }

  /// Inverse CDF: smallest x with P([support_lo, x]) = u * total mass.
  double quantile(double u) const {
    if (!(u >= 0.0 && u <= 1.0)) throw std::invalid_argument("quantile: u outside [0, 1]");
    const double target = u * measure(support_lo(), support_hi());
    double acc = 0.0;
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      const double piece = levels_[i] * (breakpoints_[i + 1] - breakpoints_[i]);
      if (acc + piece >= target && levels_[i] > 0.0)
        return breakpoints_[i] + (target - acc) / levels_[i];
      acc += piece;
    }
    return support_hi();
  }

  static constexpr double kZeroMassTol = 1e-14;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> levels_;
  double mixture_weight_ = std::numeric_limits<double>::quiet_NaN();
};

}  // namespace mixquant
