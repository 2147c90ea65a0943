#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gmrf/cycle.hpp"
#include "gmrf/error.hpp"
#include "gmrf/patch_stats.hpp"
#include "support/oracles.hpp"

using namespace gmrf;

namespace {

CycleConfig small_config() {
  CycleConfig c;
  c.side = 32;
  c.half_cycle_steps = 40;
  c.delta_beta = 0.004;
  c.seed = 3;
  return c;
}

std::vector<CycleRecord> records_from_k(const std::vector<double>& ks) {
  std::vector<CycleRecord> out;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    CycleRecord r;
    r.iteration = static_cast<int>(i);
    r.beta = 0.01 * static_cast<double>(i);
    r.gaussian_k = ks[i];
    out.push_back(r);
  }
  return out;
}

}  // namespace

TEST_CASE("default cycle schedule") {
  const CycleConfig c;
  CHECK(c.side == 512);
  CHECK(c.delta_beta == 0.0006);
  CHECK(c.half_cycle_steps == 500);
  CHECK(c.sweeps_per_step == 1);
  CHECK(c.iterations() == 1000);
  CHECK(std::abs(c.beta_max() - 0.3) < 1e-12);
  CHECK(std::abs(cycle_beta(c, 500) - 0.3) < 1e-12);
  CHECK(cycle_beta(c, 0) == 0.0);
  CHECK(std::abs(cycle_beta(c, 999) - 0.0006) < 1e-15);

  double peak = 0.0;
  for (int i = 0; i < c.iterations(); ++i) {
    const double b = cycle_beta(c, i);
    CHECK(b >= 0.0);
    CHECK(b <= c.beta_max() + 1e-12);
    CHECK(std::abs(b - cycle_beta(c, c.iterations() - 1 - i)) <= c.delta_beta + 1e-12);
    peak = std::max(peak, b);
  }
  CHECK(peak == cycle_beta(c, 500));
}

TEST_CASE("cycle config validation") {
  CHECK_NOTHROW(validate(CycleConfig{}));
  auto broken = [](auto mutate) {
    CycleConfig c;
    mutate(c);
    return c;
  };
  CHECK_THROWS_AS(validate(broken([](CycleConfig& c) { c.side = 4; })), InvalidArgument);
  CHECK_THROWS_AS(validate(broken([](CycleConfig& c) { c.delta_beta = -1; })), InvalidArgument);
  CHECK_THROWS_AS(validate(broken([](CycleConfig& c) { c.delta_beta = 0; })), InvalidArgument);
  CHECK_THROWS_AS(validate(broken([](CycleConfig& c) { c.half_cycle_steps = 0; })),
                  InvalidArgument);
  CHECK_THROWS_AS(validate(broken([](CycleConfig& c) { c.sweeps_per_step = 0; })),
                  InvalidArgument);
  CHECK_THROWS_AS(validate(broken([](CycleConfig& c) { c.init_sigma_sq = 0; })),
                  InvalidArgument);
  CHECK_THROWS_AS(validate(broken([](CycleConfig& c) { c.ridge = -1e-9; })), InvalidArgument);
  CHECK_THROWS_AS(validate(broken([](CycleConfig& c) { c.sampler.proposal_std = -1; })),
                  InvalidArgument);
}

TEST_CASE("run_cycle record structure") {
  const CycleConfig c = small_config();
  int observed = 0;
  const auto records = run_cycle(c, [&](const CycleRecord& r, const Lattice& l) {
    CHECK(r.iteration == observed);
    CHECK(l.side() == c.side);
    ++observed;
  });
  REQUIRE(records.size() == 80);
  CHECK(observed == 80);
  for (const CycleRecord& r : records) {
    CHECK(r.beta == cycle_beta(c, r.iteration));
    CHECK(r.phase == (r.iteration < 40 ? Phase::heating : Phase::cooling));
    CHECK(r.estimate.beta == r.beta);
    CHECK(r.estimate.sigma_sq > 0.0);
    const double product = r.principal[0] * r.principal[1] * r.principal[2];
    CHECK(std::abs(r.gaussian_k - product) <= 1e-9 * std::abs(r.gaussian_k) + 1e-15);
  }
}

TEST_CASE("cycle starts at the information-equality limit") {
  CycleConfig c;
  c.side = 128;
  c.half_cycle_steps = 2;
  const auto records = run_cycle(c);
  CHECK(records[0].gaussian_k == doctest::Approx(-1.0).epsilon(0.02));
  CHECK(records[0].mean_h == doctest::Approx(-3.0).epsilon(0.02));
  CHECK(records[0].beta == 0.0);
  CHECK(records[0].entropy == gaussian_entropy(records[0].estimate.sigma_sq));
}

TEST_CASE("run_cycle is deterministic") {
  const CycleConfig c = small_config();
  const auto a = run_cycle(c);
  const auto b = run_cycle(c);
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].gaussian_k == b[k].gaussian_k);
    CHECK(a[k].entropy == b[k].entropy);
    CHECK(a[k].forms.I == b[k].forms.I);
  }
  CycleConfig other = c;
  other.seed = 4;
  CHECK(run_cycle(other)[5].entropy != a[5].entropy);
}

TEST_CASE("analyze_lattice") {
  testing::Gen gen(70);
  const Lattice lattice = gen.lattice(16, 2, 2.0, 1.0);
  const CycleRecord r = analyze_lattice(lattice, 0.1, 1e-9);
  const ModelParams est = estimate_params(lattice, 0.1);
  CHECK(r.estimate.mu == est.mu);
  CHECK(r.estimate.sigma_sq == est.sigma_sq);
  const PatchCovariance cov = patch_covariance(lattice);
  CHECK(r.entropy == entropy(cov, est));
  CHECK(r.forms.T == doctest::Approx(plus_norm(cov.sigma_minus) / est.sigma_sq));

  CHECK_THROWS_AS(analyze_lattice(Lattice(6, std::vector<double>(36, 1.0)), 0.0, 1e-9),
                  InvalidArgument);
}

TEST_CASE("sign change detection") {
  SUBCASE("example series") {
    const auto records = records_from_k({-1, -0.5, 0.2, 0.3, -0.1});
    const auto events = detect_sign_changes(records);
    REQUIRE(events.size() == 2);
    CHECK(events[0].iteration == 2);
    CHECK(events[0].direction == SignDirection::negative_to_positive);
    CHECK(events[0].beta == records[2].beta);
    CHECK(events[1].iteration == 4);
    CHECK(events[1].direction == SignDirection::positive_to_negative);
  }
  SUBCASE("monotone negative series") {
    CHECK(detect_sign_changes(records_from_k({-3, -2, -1, -0.5})).empty());
  }
  SUBCASE("zeros attach to the next transition") {
    const auto events = detect_sign_changes(records_from_k({-1, 0, 0, 2, 0, 3}));
    REQUIRE(events.size() == 1);
    CHECK(events[0].iteration == 3);
    CHECK(detect_sign_changes(records_from_k({-1, 0, -1})).empty());
  }
  SUBCASE("empty and single") {
    CHECK(detect_sign_changes({}).empty());
    CHECK(detect_sign_changes(records_from_k({1})).empty());
  }
}

TEST_CASE("hysteresis path") {
  auto make = [](const std::vector<std::pair<double, double>>& heat,
                 const std::vector<std::pair<double, double>>& cool) {
    std::vector<CycleRecord> out;
    int i = 0;
    for (const auto& [k, h] : heat) {
      CycleRecord r;
      r.iteration = i++;
      r.gaussian_k = k;
      r.mean_h = 2 * k;
      r.entropy = h;
      r.phase = Phase::heating;
      out.push_back(r);
    }
    for (const auto& [k, h] : cool) {
      CycleRecord r;
      r.iteration = i++;
      r.gaussian_k = k;
      r.mean_h = 2 * k;
      r.entropy = h;
      r.phase = Phase::cooling;
      out.push_back(r);
    }
    return out;
  };
  SUBCASE("retraced path encloses nothing") {
    const auto records = make({{0, 0}, {1, 1}, {2, 3}}, {{2, 3}, {1, 1}, {0, 0}});
    const auto path = hysteresis_path(records, CurvatureQuantity::gaussian_k);
    CHECK(path.heating.size() == 3);
    CHECK(path.cooling.size() == 3);
    CHECK(path.signed_area == 0.0);
  }
  SUBCASE("unit square") {
    const auto records = make({{0, 0}, {1, 0}}, {{1, 1}, {0, 1}});
    CHECK(hysteresis_path(records, CurvatureQuantity::gaussian_k).signed_area == 1.0);
    CHECK(hysteresis_path(records, CurvatureQuantity::mean_h).signed_area == 2.0);
    auto reversed = records;
    std::reverse(reversed.begin(), reversed.end());
    CHECK(hysteresis_path(reversed, CurvatureQuantity::gaussian_k).signed_area == -1.0);
  }
  SUBCASE("reversal flips sign on a real cycle") {
    const auto records = run_cycle(small_config());
    auto reversed = records;
    std::reverse(reversed.begin(), reversed.end());
    const double area = hysteresis_path(records, CurvatureQuantity::mean_h).signed_area;
    CHECK(hysteresis_path(reversed, CurvatureQuantity::mean_h).signed_area ==
          doctest::Approx(-area).epsilon(1e-12));
  }
}
