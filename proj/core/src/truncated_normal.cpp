#include "gmrf/truncated_normal.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "gmrf/error.hpp"

namespace gmrf {
namespace {

double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

// lower >= 0.
double upper_tail(Rng& rng, double lower, double upper) {
  const double root = std::sqrt(lower * lower + 4.0);
  const double uniform_width =
      2.0 / (lower + root) *
      std::exp((lower * lower - lower * root) / 4.0 + 0.5);
  if (upper - lower < uniform_width) {
    for (;;) {
      const double z = lower + (upper - lower) * uniform01(rng);
      if (uniform01(rng) <= std::exp((lower * lower - z * z) / 2.0)) return z;
    }
  }
  const double rate = (lower + root) / 2.0;
  std::exponential_distribution<double> exponential(rate);
  for (;;) {
    const double z = lower + exponential(rng);
    if (z > upper) continue;
    const double gap = z - rate;
    if (uniform01(rng) <= std::exp(-gap * gap / 2.0)) return z;
  }
}

}  // namespace

double standard_truncated_normal(Rng& rng, double lower, double upper) {
  if (std::isnan(lower) || std::isnan(upper) || !(lower < upper)) {
    throw InvalidArgument("truncated normal needs lower < upper");
  }
  if (lower >= 0.0) return upper_tail(rng, lower, upper);
  if (upper <= 0.0) return -upper_tail(rng, -upper, -lower);

  const double width = upper - lower;
  if (width >= std::sqrt(2.0 * std::numbers::pi)) {
    std::normal_distribution<double> normal;
    for (;;) {
      const double z = normal(rng);
      if (z >= lower && z <= upper) return z;
    }
  }
  for (;;) {
    const double z = lower + width * uniform01(rng);
    if (uniform01(rng) <= std::exp(-z * z / 2.0)) return z;
  }
}

double truncated_normal(Rng& rng, double mean, double sd, double lower,
                        double upper) {
  if (!(sd > 0.0)) throw InvalidArgument("truncated normal needs sd > 0");
  return mean + sd * standard_truncated_normal(rng, (lower - mean) / sd,
                                               (upper - mean) / sd);
}

}  // namespace gmrf
