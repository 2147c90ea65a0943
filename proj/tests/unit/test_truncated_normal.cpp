#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "gmrf/error.hpp"
#include "gmrf/truncated_normal.hpp"
#include "support/oracles.hpp"

using namespace gmrf;

namespace {

double truncated_cdf(double x, double lo, double hi) {
  const double a = testing::normal_cdf(lo);
  const double b = testing::normal_cdf(hi);
  return (testing::normal_cdf(x) - a) / (b - a);
}

}  // namespace

TEST_CASE("standard truncated normal matches its CDF") {
  const double inf = std::numeric_limits<double>::infinity();
  struct Interval {
    double lo, hi;
  };
  // wide around 0, narrow around 0, one-sided, upper tail, lower tail, far tail
  const std::vector<Interval> intervals{{-3, 3},   {-0.2, 0.5}, {0, inf},
                                        {1.5, 2.5}, {-4, -1},   {5, 5.5}};
  Rng rng(2024);
  const std::size_t n = 20000;
  for (const auto& iv : intervals) {
    CAPTURE(iv.lo);
    CAPTURE(iv.hi);
    std::vector<double> draws(n);
    for (double& d : draws) {
      d = standard_truncated_normal(rng, iv.lo, iv.hi);
      REQUIRE(d >= iv.lo);
      REQUIRE(d <= iv.hi);
    }
    if (iv.lo > 4) continue;  // CDF differences lose precision this far out
    const double ks = testing::ks_statistic(
        draws, [&](double x) { return truncated_cdf(x, iv.lo, iv.hi); });
    CHECK(ks < testing::ks_critical_01(n));
  }
}

TEST_CASE("far tail draws stay in range with the right mean") {
  Rng rng(5);
  double sum = 0.0;
  const int n = 20000;
  for (int k = 0; k < n; ++k) sum += standard_truncated_normal(rng, 8.0, 9.0);
  // Mean of N(0,1) truncated to [8, 9] is close to 8 + 1/8.
  CHECK(sum / n == doctest::Approx(8.1213).epsilon(2e-3));
}

TEST_CASE("scaled truncated normal") {
  Rng rng(17);
  for (int k = 0; k < 1000; ++k) {
    const double x = truncated_normal(rng, 10.0, 2.0, 9.0, 13.0);
    REQUIRE(x >= 9.0);
    REQUIRE(x <= 13.0);
  }
  CHECK_THROWS_AS(truncated_normal(rng, 0.0, 0.0, -1.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(truncated_normal(rng, 0.0, 1.0, 1.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(standard_truncated_normal(rng, 2.0, 1.0), InvalidArgument);
}
