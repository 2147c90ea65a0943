#pragma once

#include "gmrf/lattice.hpp"

namespace gmrf {

// Exact draw from N(0, 1) restricted to [lower, upper]. Either bound may be
// infinite. Uses Robert's (1995) mixed uniform / exponential rejection, so
// acceptance stays bounded away from zero even for intervals deep in a tail.
double standard_truncated_normal(Rng& rng, double lower, double upper);

// Exact draw from N(mean, sd^2) restricted to [lower, upper].
double truncated_normal(Rng& rng, double mean, double sd, double lower,
                        double upper);

}  // namespace gmrf
