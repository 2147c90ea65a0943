#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>

#include "gmrf/lattice.hpp"

namespace gmrf {

enum class SamplerMode { random_walk_mh, gibbs };
enum class SweepOrder { raster, checkerboard };

/// Single-site update dynamics.
///
/// `support_sds` confines site values to mu +/- support_sds * sigma. With the
/// default (infinite) support the target is the bare local conditional; note
/// that for beta * delta > 1 that conditional no longer defines a proper
/// joint field and the chain diverges, so cycles that cross this threshold
/// need a finite support.
struct SamplerConfig {
  SamplerMode mode = SamplerMode::gibbs;
  SweepOrder sweep_order = SweepOrder::raster;
  std::optional<double> proposal_std;  // random-walk scale, defaults to sigma
  double support_sds = std::numeric_limits<double>::infinity();
};

void validate(const SamplerConfig& config);

struct SweepStats {
  std::size_t proposed = 0;
  std::size_t accepted = 0;

  double acceptance_rate() const {
    return proposed == 0 ? 0.0
                         : static_cast<double>(accepted) /
                               static_cast<double>(proposed);
  }
};

/// log p(x_i | eta_i, theta) of the Gaussian local conditional.
double local_conditional_logdensity(double x_center,
                                    std::span<const double> neighbor_values,
                                    const ModelParams& params);

/// Visits every site once and updates it in place.
///
/// Raster order is a row-major scan. Checkerboard order partitions the
/// lattice into m*m colour classes by (row mod m, col mod m), with m = 2 for
/// neighborhood orders 1 and 2 and m = 3 for order 3; same-colour sites never
/// neighbor each other, so each class is updated in parallel with one child
/// generator per row, seeded from `rng` in row order. The king's-move graph
/// of order 2 contains 4-cliques, hence 4 colours rather than 3.
/// Checkerboard requires side % m == 0.
SweepStats metropolis_sweep(Lattice& lattice, const ModelParams& params,
                            const SamplerConfig& config, Rng& rng);

/// Sample mean and biased (1/n^2) sample variance of the lattice; beta is
/// passed through. A constant lattice yields sigma_sq == 0, which downstream
/// operations reject.
ModelParams estimate_params(const Lattice& lattice, double beta);

/// Curved exponential family form of the pseudo-likelihood:
/// log F = dot(c, t) + d.
struct NaturalDecomposition {
  std::array<double, 5> c{};
  std::array<double, 5> t{};
  double d = 0.0;

  double log_likelihood() const;
};

NaturalDecomposition natural_decomposition(const Lattice& lattice,
                                           const ModelParams& params);

/// Sum over all sites of local_conditional_logdensity.
double pseudo_log_likelihood(const Lattice& lattice, const ModelParams& params);

}  // namespace gmrf
