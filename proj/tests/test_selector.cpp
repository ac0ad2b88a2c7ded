#include <catch2/catch_amalgamated.hpp>

#include "mixquant/selector.hpp"

using namespace mixquant;
using Catch::Approx;

TEST_CASE("seed sequence: frozen 50-term prefix") {
  const std::vector<long long> want{
      0, 1, 1, 1, 1, 2, 2, 2, 2, 3, 3, 4, 4, 4, 4, 5, 5, 5, 5, 6,
      6, 7, 7, 7, 7, 8, 8, 8, 8, 9, 9, 10, 10, 10, 10, 11, 11, 11, 11, 12,
      12, 13, 13, 13, 13, 14, 14, 14, 14, 15};
  for (int n = 1; n <= 50; ++n) {
    INFO("n=" << n);
    CHECK(seed_sequence(n) == want[n - 1]);
  }
}

TEST_CASE("seed sequence: spot values and domain") {
  CHECK(seed_sequence(50) == 15);
  CHECK(seed_sequence(1001) == 304);
  CHECK_THROWS_AS(seed_sequence(0), std::invalid_argument);
}

TEST_CASE("seed sequence grows without skips") {
  long long prev = 0;
  for (int n = 2; n <= 400; ++n) {
    const long long a = seed_sequence(n);
    CHECK(a >= prev);
    CHECK(a - prev <= 1);
    prev = a;
  }
}

TEST_CASE("split selection: endpoints of the descent") {
  CHECK(select_k(5).first == 1);
  CHECK(select_k(6).first == 2);
  CHECK(select_k(9).first == 3);
  CHECK(select_k(50).first == 15);
  CHECK(select_k(1001).first == 307);
  CHECK_THROWS_AS(select_k(4), std::invalid_argument);
}

TEST_CASE("split selection: trace records the walk") {
  const auto [k, trace] = select_k(1001);
  CHECK(trace.n == 1001);
  CHECK(trace.a_n == 304);
  CHECK(trace.chosen_k == 307);
  CHECK(k == trace.chosen_k);
  REQUIRE_FALSE(trace.visited.empty());
  CHECK(trace.visited.front().first == 304);
  bool saw_chosen = false;
  for (const auto& [kk, f] : trace.visited) {
    CHECK(kk >= 1);
    CHECK(f > 0.0);
    if (kk == trace.chosen_k) saw_chosen = true;
  }
  CHECK(saw_chosen);
}

TEST_CASE("split selection matches a brute-force sweep over k") {
  for (int n = 5; n <= 40; ++n) {
    const int h = n / 2;
    const Parity parity = (n % 2 == 0) ? Parity::even : Parity::odd;
    const int chosen = select_k(n).first;
    if (h == 2) {
      CHECK(chosen == 1);
      continue;
    }
    int best_k = -1;
    double best_v = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= h - 1; ++k) {
      if (k == 1 && h - k == 1) continue;
      const double v = f_split(k, h - k, parity).value;
      if (v < best_v) best_v = v, best_k = k;
    }
    INFO("n=" << n);
    CHECK(chosen == best_k);
  }
}

TEST_CASE("solve: small n passthrough and the first split case") {
  const auto r1 = solve(1);
  CHECK(r1.codebook.points() == std::vector<double>{0.75});

  const auto r6 = solve(6);
  REQUIRE(r6.split.has_value());
  CHECK(r6.split->k == 2);
  CHECK(r6.error == Approx(1.0 / 192.0).margin(1e-10));
  const std::vector<double> want{0.125, 0.375, 0.625, 0.875, 1.125, 1.375};
  for (std::size_t i = 0; i < want.size(); ++i)
    CHECK(r6.codebook[i] == Approx(want[i]).margin(1e-8));
}

TEST_CASE("solve: twelve points, sandwiched error and symmetry") {
  const auto r12 = solve(12);
  CHECK(r12.error < solve(6).error);
  CHECK(r12.error > solve(24).error);
  for (std::size_t i = 0; i < r12.codebook.size(); ++i)
    CHECK(r12.codebook[i] ==
          Approx(1.5 - r12.codebook[r12.codebook.size() - 1 - i]).margin(1e-10));
}

TEST_CASE("solve: errors decrease strictly in n") {
  double prev = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= 60; ++n) {
    const auto r = solve(n);
    CHECK(r.n == n);
    CHECK(r.codebook.size() == static_cast<std::size_t>(n));
    CHECK(r.error < prev);
    prev = r.error;
  }
  CHECK_THROWS_AS(solve(0), std::invalid_argument);
}
