#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mixquant/mixed_quant.hpp"
#include "quadrature_oracle.hpp"

using namespace mixquant;
using Catch::Approx;

namespace {

const StepDensity& density() {
  static const StepDensity d = StepDensity::mixture(0.5);
  return d;
}

void check_result_invariants(const QuantizationResult& r, double point_tol = 1e-10) {
  const StepDensity& d = density();
  const auto& cb = r.codebook;
  REQUIRE(cb.size() == static_cast<std::size_t>(r.n));

  // Mirror symmetry about 3/4, center point present for odd n.
  for (std::size_t i = 0; i < cb.size(); ++i)
    CHECK(cb[i] == Approx(1.5 - cb[cb.size() - 1 - i]).margin(point_tol));
  if (r.n % 2 == 1) CHECK(cb[cb.size() / 2] == Approx(0.75).margin(point_tol));

  // Centroid stationarity on Voronoi cells.
  for (std::size_t i = 0; i < cb.size(); ++i) {
    const double lo = (i == 0) ? 0.0 : 0.5 * (cb[i - 1] + cb[i]);
    const double hi = (i + 1 == cb.size()) ? 1.5 : 0.5 * (cb[i] + cb[i + 1]);
    CHECK(cb[i] == Approx(d.conditional_mean(lo, hi)).margin(1e-9));
  }

  // The reported error is the exact distortion of the reported codebook.
  CHECK(r.error == Approx(d.distortion(cb)).margin(1e-10));
}

}  // namespace

TEST_CASE("explicit small-n solutions") {
  const auto r1 = small_n(1);
  CHECK(r1.codebook.points() == std::vector<double>{0.75});
  CHECK(r1.error == Approx(7.0 / 48.0).margin(1e-15));

  const auto r2 = small_n(2);
  CHECK(r2.codebook[0] == Approx(7.0 / 16.0).margin(1e-15));
  CHECK(r2.codebook[1] == Approx(17.0 / 16.0).margin(1e-15));
  CHECK(r2.error == Approx(37.0 / 768.0).margin(1e-15));

  const auto r3 = small_n(3);
  CHECK(r3.codebook[0] == Approx(0.25).margin(1e-15));
  CHECK(r3.codebook[1] == Approx(0.75).margin(1e-15));
  CHECK(r3.codebook[2] == Approx(1.25).margin(1e-15));
  CHECK(r3.error == Approx(1.0 / 48.0).margin(1e-15));

  const auto r4 = small_n(4);
  CHECK(r4.codebook[0] == Approx(0.198223).margin(1e-6));
  CHECK(r4.codebook[1] == Approx(0.594670).margin(1e-6));
  CHECK(r4.codebook[2] == Approx(0.905330).margin(1e-6));
  CHECK(r4.codebook[3] == Approx(1.301777).margin(1e-6));
  CHECK(r4.error == Approx(0.0105699857).margin(1e-8));

  const auto r5 = small_n(5);
  CHECK(r5.codebook[0] == Approx(0.169821).margin(1e-6));
  CHECK(r5.codebook[1] == Approx(0.509464).margin(1e-6));
  CHECK(r5.codebook[2] == Approx(0.75).margin(1e-12));
  CHECK(r5.codebook[3] == Approx(0.990536).margin(1e-6));
  CHECK(r5.codebook[4] == Approx(1.330179).margin(1e-6));
  CHECK(r5.error == Approx(0.0072172797).margin(1e-8));

  const auto r6 = small_n(6);
  CHECK(r6.codebook.points() ==
        std::vector<double>{0.125, 0.375, 0.625, 0.875, 1.125, 1.375});
  CHECK(r6.error == Approx(1.0 / 192.0).margin(1e-15));
  REQUIRE(r6.split.has_value());
  CHECK(r6.split->k == 2);
  CHECK(r6.split->m == 1);
}

TEST_CASE("small_n invariants and domain") {
  for (int n = 1; n <= 6; ++n) check_result_invariants(small_n(n));
  CHECK_THROWS_AS(small_n(0), std::invalid_argument);
  CHECK_THROWS_AS(small_n(7), std::invalid_argument);
}

TEST_CASE("split solver reproduces the six-point stationary codebook") {
  const auto r = solve_split({2, 1, Parity::even, SplitCase::v1});
  REQUIRE(r.has_value());
  CHECK(r->n == 6);
  const std::vector<double> want{0.125, 0.375, 0.625, 0.875, 1.125, 1.375};
  for (std::size_t i = 0; i < want.size(); ++i)
    CHECK(r->codebook[i] == Approx(want[i]).margin(1e-8));
  CHECK(r->error == Approx(1.0 / 192.0).margin(1e-10));
}

TEST_CASE("split solver domain errors") {
  CHECK_THROWS_AS(solve_split({1, 1, Parity::even, SplitCase::v1}), std::invalid_argument);
  CHECK_THROWS_AS(solve_split({0, 2, Parity::even, SplitCase::v1}), std::invalid_argument);
  CHECK_THROWS_AS(f_split(1, 1, Parity::even), std::invalid_argument);
}

TEST_CASE("case minimum picks the right branch for n = 6") {
  const FValue f21 = f_split(2, 1, Parity::even);
  CHECK(f21.value == Approx(1.0 / 192.0).margin(1e-10));
  const FValue f12 = f_split(1, 2, Parity::even);
  CHECK(f21.value < f12.value);
}

TEST_CASE("n = 10: the chosen split beats every alternative") {
  const FValue best = f_split(3, 2, Parity::even);
  REQUIRE(best.result.has_value());
  for (int k = 1; k <= 4; ++k) {
    if (k == 3) continue;
    if (k == 1 && 5 - k == 1) continue;
    const FValue other = f_split(k, 5 - k, Parity::even);
    CHECK(best.value <= other.value + 1e-12);
  }
}

TEST_CASE("stationary-point invariants across a range of splits") {
  for (Parity parity : {Parity::even, Parity::odd}) {
    for (int k = 1; k <= 6; ++k) {
      for (int m = 1; m <= 4; ++m) {
        if (k == 1 && m == 1) continue;
        for (SplitCase c : {SplitCase::v1, SplitCase::v2}) {
          const auto r = solve_split({k, m, parity, c});
          if (!r) continue;
          INFO("k=" << k << " m=" << m << " case=" << to_string(c)
                    << " parity=" << to_string(parity));
          check_result_invariants(*r);
          CHECK(r->error ==
                Approx(testing::distortion_by_quadrature(density(), r->codebook))
                    .margin(1e-10));
        }
      }
    }
  }
}

TEST_CASE("heavily lopsided splits are reported infeasible") {
  CHECK_FALSE(solve_split({9, 1, Parity::even, SplitCase::v1}).has_value());
  CHECK_FALSE(solve_split({1, 9, Parity::even, SplitCase::v2}).has_value());
}
