#pragma once

// The integer seed sequence a(n), the descent over k that locates the optimal
// split, and the top-level solve(n).

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "mixquant/mixed_quant.hpp"

namespace mixquant {

namespace detail {

// Exact floor of floor(n/2) / sum_{k<=h} 1/k^2 via rational arithmetic.
inline long long seed_sequence_exact(int h) {
  mpq_class sum = 0;
  for (int k = 1; k <= h; ++k) sum += mpq_class(1, static_cast<long>(k) * k);
  // floor(h / (num/den)) = floor(h * den / num), all terms positive.
  mpz_class numer = h * sum.get_den();
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), numer.get_mpz_t(), sum.get_num().get_mpz_t());
  return q.get_si();
}

}  // namespace detail

/// a(1) = 0; a(n) = floor( floor(n/2) / sum_{k=1}^{floor(n/2)} 1/k^2 ) for
/// n >= 2. The partial sum is accumulated in compensated long double; when the
/// ratio lands within 1e-9 of an integer the floor is re-evaluated exactly in
/// rational arithmetic.
inline long long seed_sequence(int n) {
  if (n < 1) throw std::invalid_argument("seed_sequence: need n >= 1");
  if (n == 1) return 0;
  const int h = n / 2;
  long double sum = 0.0L, comp = 0.0L;
  for (int k = 1; k <= h; ++k) {
    const long double term = 1.0L / (static_cast<long double>(k) * k);
    const long double y = term - comp;
    const long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  const long double ratio = static_cast<long double>(h) / sum;
  const long double fl = std::floor(ratio);
  if (ratio - fl < 1e-9L || (fl + 1.0L) - ratio < 1e-9L)
    return detail::seed_sequence_exact(h);
  return static_cast<long long>(fl);
}

/// Record of one descent run: every (k, F) evaluation in order plus the seed
/// and the resting k.
struct SelectorTrace {
  int n = 0;
  long long a_n = 0;
  std::vector<std::pair<int, double>> visited;
  int chosen_k = 0;
};

/// Descent over k from the seed a(n): move to k-1 or k+1 while F strictly
/// decreases, re-entering the comparison after each accepted move; stop when
/// neither neighbor improves. k stays within [1, floor(n/2) - 1] so m >= 1.
inline std::pair<int, SelectorTrace> select_k(int n) {
  if (n < 5) throw std::invalid_argument("select_k: need n >= 5");
  const int h = n / 2;
  const Parity parity = (n % 2 == 0) ? Parity::even : Parity::odd;
  SelectorTrace trace;
  trace.n = n;
  trace.a_n = seed_sequence(n);
  if (h == 2) {  // n = 5: the split (1, 1) is forced, nothing to evaluate
    trace.chosen_k = 1;
    return {1, trace};
  }
  const int k_max = h - 1;
  std::map<int, double> cache;
  auto F = [&](int k) {
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    const double v = f_split(k, h - k, parity).value;
    cache.emplace(k, v);
    trace.visited.emplace_back(k, v);
    return v;
  };
  int k = std::clamp(static_cast<int>(std::max(1LL, trace.a_n)), 1, k_max);
  double fk = F(k);
  for (;;) {
    if (k - 1 >= 1 && F(k - 1) < fk) {
      fk = F(--k);
      continue;
    }
    if (k + 1 <= k_max && F(k + 1) < fk) {
      fk = F(++k);
      continue;
    }
    break;
  }
  trace.chosen_k = k;
  return {k, trace};
}

/// Optimal n-point codebook and quantization error for the symmetric mixed
/// distribution: explicit solutions up to n = 5, the split machinery beyond.
inline QuantizationResult solve(int n) {
  if (n < 1) throw std::invalid_argument("solve: need n >= 1");
  if (n <= 5) return small_n(n);
  const auto [k, trace] = select_k(n);
  const int h = n / 2;
  const Parity parity = (n % 2 == 0) ? Parity::even : Parity::odd;
  FValue best = f_split(k, h - k, parity);
  if (!best.result)
    throw std::runtime_error("solve: both split cases infeasible at the selected k=" +
                             std::to_string(k) + " for n=" + std::to_string(n));
  return *best.result;
}

}  // namespace mixquant
