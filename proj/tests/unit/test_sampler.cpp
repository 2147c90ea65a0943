#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

#include "gmrf/error.hpp"
#include "gmrf/sampler.hpp"
#include "support/oracles.hpp"

using namespace gmrf;

namespace {

double lattice_mean(const Lattice& l) {
  double s = 0.0;
  for (double v : l.values()) s += v;
  return s / static_cast<double>(l.size());
}

double lattice_var(const Lattice& l) {
  const double m = lattice_mean(l);
  double s = 0.0;
  for (double v : l.values()) s += (v - m) * (v - m);
  return s / static_cast<double>(l.size());
}

// Mean correlation between each site and its right and lower neighbors.
double nearest_neighbor_correlation(const Lattice& l) {
  const double m = lattice_mean(l);
  const double var = lattice_var(l);
  double s = 0.0;
  for (int r = 0; r < l.side(); ++r) {
    for (int c = 0; c < l.side(); ++c) {
      s += (l(r, c) - m) * (l.wrapped(r, c + 1) - m) + (l(r, c) - m) * (l.wrapped(r + 1, c) - m);
    }
  }
  return s / (2.0 * static_cast<double>(l.size()) * var);
}

const double kHalfLog2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

}  // namespace

TEST_CASE("local conditional log density") {
  const std::vector<double> ones(8, 1.0);
  CHECK(local_conditional_logdensity(0.0, ones, {0.0, 1.0, 0.0}) ==
        doctest::Approx(-0.9189385332046727).epsilon(1e-15));
  CHECK(local_conditional_logdensity(0.0, ones, {0.0, 1.0, 0.1}) ==
        doctest::Approx(-kHalfLog2Pi - 0.5 * 0.8 * 0.8).epsilon(1e-14));

  testing::Gen gen(8);
  for (int k = 0; k < 20; ++k) {
    const ModelParams p = gen.params();
    std::vector<double> nb(8);
    double centered = 0.0;
    for (double& v : nb) {
      v = gen.uniform(-2.0, 2.0);
      centered += v - p.mu;
    }
    const double mode = p.mu + p.beta * centered;
    CHECK(local_conditional_logdensity(mode, nb, p) ==
          doctest::Approx(-0.5 * std::log(2.0 * std::numbers::pi * p.sigma_sq)).epsilon(1e-13));
  }

  CHECK_THROWS_AS(local_conditional_logdensity(NAN, ones, {}), InvalidArgument);
  const std::vector<double> bad{1.0, INFINITY};
  CHECK_THROWS_AS(local_conditional_logdensity(0.0, bad, {}), InvalidArgument);
  CHECK_THROWS_AS(local_conditional_logdensity(0.0, ones, {0.0, 0.0, 0.0}), InvalidArgument);
}

TEST_CASE("sampler config validation") {
  SamplerConfig c;
  CHECK_NOTHROW(validate(c));
  c.proposal_std = 0.0;
  CHECK_THROWS_AS(validate(c), InvalidArgument);
  c.proposal_std = 0.5;
  c.support_sds = 0.0;
  CHECK_THROWS_AS(validate(c), InvalidArgument);
}

TEST_CASE("gibbs at beta = 0 reproduces N(mu, sigma^2)") {
  for (SweepOrder order : {SweepOrder::raster, SweepOrder::checkerboard}) {
    CAPTURE(static_cast<int>(order));
    Lattice lattice(64);
    const ModelParams p{3.0, 2.0, 0.0};
    SamplerConfig config;
    config.sweep_order = order;
    Rng rng(1);
    const SweepStats stats = metropolis_sweep(lattice, p, config, rng);
    CHECK(stats.proposed == lattice.size());
    CHECK(stats.acceptance_rate() == 1.0);
    const double n = static_cast<double>(lattice.size());
    CHECK(std::abs(lattice_mean(lattice) - 3.0) < 3.0 * std::sqrt(2.0 / n));
    CHECK(std::abs(lattice_var(lattice) - 2.0) < 3.0 * 2.0 * std::sqrt(2.0 / n));
  }
}

TEST_CASE("single-site marginal over a long chain passes KS at 0.01") {
  Lattice lattice(6);
  const ModelParams p{-1.0, 0.5, 0.0};
  Rng rng(77);
  std::vector<double> trace;
  for (int s = 0; s < 4000; ++s) {
    metropolis_sweep(lattice, p, SamplerConfig{}, rng);
    trace.push_back(lattice(2, 3));
  }
  const double sd = std::sqrt(p.sigma_sq);
  const double ks = testing::ks_statistic(
      trace, [&](double x) { return testing::normal_cdf((x - p.mu) / sd); });
  CHECK(ks < testing::ks_critical_01(trace.size()));
}

TEST_CASE("random-walk MH with a tiny proposal barely moves") {
  testing::Gen gen(4);
  Lattice lattice = gen.lattice(16);
  const Lattice before = lattice;
  SamplerConfig config;
  config.mode = SamplerMode::random_walk_mh;
  config.proposal_std = 1e-7;
  Rng rng(9);
  const SweepStats stats = metropolis_sweep(lattice, {0.0, 1.0, 0.1}, config, rng);
  CHECK(stats.acceptance_rate() > 0.99);
  double max_change = 0.0;
  for (std::size_t k = 0; k < lattice.size(); ++k) {
    max_change = std::max(max_change, std::abs(lattice.values()[k] - before.values()[k]));
  }
  CHECK(max_change < 1e-5);
}

TEST_CASE("random-walk MH targets the conditional at beta = 0") {
  Lattice lattice(32);
  SamplerConfig config;
  config.mode = SamplerMode::random_walk_mh;
  const ModelParams p{1.0, 1.0, 0.0};
  Rng rng(12);
  for (int s = 0; s < 200; ++s) metropolis_sweep(lattice, p, config, rng);
  CHECK(std::abs(lattice_mean(lattice) - 1.0) < 0.2);
  CHECK(lattice_var(lattice) == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("finite support confines every site") {
  testing::Gen gen(6);
  // Random-walk moves only enter the support from nearby, so it starts closer.
  for (SamplerMode mode : {SamplerMode::gibbs, SamplerMode::random_walk_mh}) {
    const bool gibbs = mode == SamplerMode::gibbs;
    Lattice lattice = gen.lattice(16, 2, 0.0, gibbs ? 5.0 : 1.0);
    SamplerConfig config;
    config.mode = mode;
    config.support_sds = 2.0;
    Rng rng(3);
    std::vector<bool> inside(lattice.values().size());
    for (std::size_t i = 0; i < inside.size(); ++i)
      inside[i] = std::abs(lattice.values()[i]) <= 2.0;
    for (int s = 0; s < (gibbs ? 1 : 300); ++s) {
      metropolis_sweep(lattice, {0.0, 1.0, 0.2}, config, rng);
      for (std::size_t i = 0; i < inside.size(); ++i) {
        const bool now = std::abs(lattice.values()[i]) <= 2.0;
        CHECK_FALSE((inside[i] && !now));
        inside[i] = now;
      }
    }
    for (double v : lattice.values()) {
      CHECK(v >= -2.0);
      CHECK(v <= 2.0);
    }
  }
}

TEST_CASE("nearest-neighbor correlation grows with beta") {
  SamplerConfig config;
  config.support_sds = 3.0;
  auto correlation_at = [&](double beta) {
    Lattice lattice = init_lattice(128, {0.0, 1.0, 0.0}, 21);
    Rng rng(22);
    for (int s = 0; s < 100; ++s) metropolis_sweep(lattice, {0.0, 1.0, beta}, config, rng);
    return nearest_neighbor_correlation(lattice);
  };
  const double weak = correlation_at(0.05);
  const double strong = correlation_at(0.2);
  CHECK(weak > 0.0);
  CHECK(strong > weak);
}

TEST_CASE("sweeps are deterministic") {
  for (SweepOrder order : {SweepOrder::raster, SweepOrder::checkerboard}) {
    for (SamplerMode mode : {SamplerMode::gibbs, SamplerMode::random_walk_mh}) {
      SamplerConfig config;
      config.mode = mode;
      config.sweep_order = order;
      config.support_sds = 3.0;
      auto run = [&] {
        Lattice lattice = init_lattice(24, {0.5, 1.5, 0.0}, 5);
        Rng rng(6);
        for (int s = 0; s < 5; ++s) metropolis_sweep(lattice, {0.5, 1.5, 0.1}, config, rng);
        return lattice;
      };
      CHECK(run() == run());
    }
  }
}

TEST_CASE("checkerboard results do not depend on the thread count") {
  SamplerConfig config;
  config.sweep_order = SweepOrder::checkerboard;
  auto run = [&](const char* threads) {
    setenv("RF_CURVATURE_THREADS", threads, 1);
    Lattice lattice = init_lattice(30, {0.0, 1.0, 0.0}, 8, Neighborhood(3));
    Rng rng(9);
    for (int s = 0; s < 3; ++s) metropolis_sweep(lattice, {0.0, 1.0, 0.05}, config, rng);
    return lattice;
  };
  const Lattice one = run("1");
  const Lattice four = run("4");
  unsetenv("RF_CURVATURE_THREADS");
  CHECK(one == four);
}

TEST_CASE("checkerboard needs a side divisible by the colour period") {
  SamplerConfig config;
  config.sweep_order = SweepOrder::checkerboard;
  Rng rng(1);
  Lattice odd(7);
  CHECK_THROWS_AS(metropolis_sweep(odd, {}, config, rng), InvalidArgument);
  Lattice third(8, Neighborhood(3));
  CHECK_THROWS_AS(metropolis_sweep(third, {}, config, rng), InvalidArgument);
  Lattice ok(9, Neighborhood(3));
  CHECK_NOTHROW(metropolis_sweep(ok, {}, config, rng));
}

TEST_CASE("estimate_params") {
  SUBCASE("constant lattice has zero variance") {
    const Lattice lattice(6, std::vector<double>(36, 7.0));
    const ModelParams p = estimate_params(lattice, 0.2);
    CHECK(p.mu == 7.0);
    CHECK(p.sigma_sq == 0.0);
    CHECK(p.beta == 0.2);
  }
  SUBCASE("two-point checkerboard") {
    std::vector<double> values(36);
    for (int r = 0; r < 6; ++r) {
      for (int c = 0; c < 6; ++c) values[static_cast<std::size_t>(r * 6 + c)] = (r + c) % 2;
    }
    const ModelParams p = estimate_params(Lattice(6, values), 0.0);
    CHECK(p.mu == 0.5);
    CHECK(p.sigma_sq == 0.25);
  }
  SUBCASE("invariant under site permutation") {
    testing::Gen gen(14);
    for (int k = 0; k < 10; ++k) {
      const Lattice lattice = gen.lattice(gen.integer(5, 20), 2, gen.uniform(-5, 5), 2.0);
      std::vector<double> shuffled(lattice.values().begin(), lattice.values().end());
      std::shuffle(shuffled.begin(), shuffled.end(), gen.rng());
      const ModelParams a = estimate_params(lattice, 0.1);
      const ModelParams b = estimate_params(Lattice(lattice.side(), shuffled), 0.1);
      CHECK(a.mu == doctest::Approx(b.mu).epsilon(1e-12));
      CHECK(a.sigma_sq == doctest::Approx(b.sigma_sq).epsilon(1e-12));
    }
  }
}

TEST_CASE("natural decomposition") {
  SUBCASE("beta = 0 reduces to the Gaussian family") {
    const NaturalDecomposition nd =
        natural_decomposition(Lattice(5), {2.0, 4.0, 0.0});
    CHECK(nd.c[0] == 2.0 / 4.0);
    CHECK(nd.c[1] == -1.0 / 8.0);
    CHECK(nd.c[2] == 0.0);
    CHECK(nd.c[3] == 0.0);
    CHECK(nd.c[4] == 0.0);
  }
  SUBCASE("zero lattice has zero statistics") {
    const NaturalDecomposition nd = natural_decomposition(Lattice(5), {0.0, 1.0, 0.1});
    for (double t : nd.t) CHECK(t == 0.0);
  }
  SUBCASE("dot(c, t) + d equals the pseudo log-likelihood") {
    testing::Gen gen(31);
    for (int k = 0; k < 20; ++k) {
      const Lattice lattice = gen.lattice(8, 2, gen.uniform(-2, 2), gen.uniform(0.5, 2));
      const ModelParams p = gen.params();
      const double expected = testing::brute_force_pseudo_log_likelihood(lattice, p);
      CHECK(natural_decomposition(lattice, p).log_likelihood() ==
            doctest::Approx(expected).epsilon(1e-8));
      CHECK(pseudo_log_likelihood(lattice, p) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
  SUBCASE("identity holds for other neighborhood orders") {
    testing::Gen gen(32);
    for (int order : {1, 3}) {
      const Lattice lattice = gen.lattice(9, order, 1.0, 1.0);
      const ModelParams p = gen.params(0.2);
      CHECK(natural_decomposition(lattice, p).log_likelihood() ==
            doctest::Approx(testing::brute_force_pseudo_log_likelihood(lattice, p))
                .epsilon(1e-8));
    }
  }
  SUBCASE("sigma^2 = 0 is rejected") {
    CHECK_THROWS_AS(natural_decomposition(Lattice(5), {0.0, 0.0, 0.0}), InvalidArgument);
    CHECK_THROWS_AS(pseudo_log_likelihood(Lattice(5), {0.0, 0.0, 0.0}), InvalidArgument);
  }
}

TEST_CASE("pseudo log-likelihood") {
  CHECK(pseudo_log_likelihood(Lattice(5), {0.0, 1.0, 0.0}) ==
        doctest::Approx(-25.0 * kHalfLog2Pi).epsilon(1e-14));

  testing::Gen gen(40);
  const Lattice lattice = gen.lattice(10, 2, 1.5, 1.0);
  const double mean = estimate_params(lattice, 0.0).mu;
  const double at_mean = pseudo_log_likelihood(lattice, {mean, 1.0, 0.0});
  for (double shift : {-0.1, -1e-3, 1e-3, 0.1}) {
    CHECK(pseudo_log_likelihood(lattice, {mean + shift, 1.0, 0.0}) < at_mean);
  }
}
