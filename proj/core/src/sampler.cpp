#include "gmrf/sampler.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "gmrf/error.hpp"
#include "gmrf/parallel.hpp"
#include "gmrf/truncated_normal.hpp"
#include "moments.hpp"

namespace gmrf {
namespace {

struct SiteUpdater {
  const ModelParams& params;
  const SamplerConfig& config;
  double sigma;
  double proposal_std;
  double lower;
  double upper;
  bool bounded;
  double delta;

  SiteUpdater(const ModelParams& p, const SamplerConfig& c, int neighbor_count)
      : params(p),
        config(c),
        sigma(std::sqrt(p.sigma_sq)),
        proposal_std(c.proposal_std.value_or(sigma)),
        lower(p.mu - c.support_sds * sigma),
        upper(p.mu + c.support_sds * sigma),
        bounded(std::isfinite(c.support_sds)),
        delta(neighbor_count) {}

  // Returns true when the site value changed.
  bool update(double& x, double neighbor_sum, Rng& rng,
              std::normal_distribution<double>& normal) const {
    const double mean =
        params.mu + params.beta * (neighbor_sum - delta * params.mu);
    if (config.mode == SamplerMode::gibbs) {
      x = bounded ? truncated_normal(rng, mean, sigma, lower, upper)
                  : mean + sigma * normal(rng);
      return true;
    }
    const double proposal = x + proposal_std * normal(rng);
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    if (bounded && (proposal < lower || proposal > upper)) return false;
    if (bounded && (x < lower || x > upper)) {
      // Current state carries zero target density; any in-support move wins.
      x = proposal;
      return true;
    }
    const double log_ratio =
        ((x - mean) * (x - mean) - (proposal - mean) * (proposal - mean)) /
        (2.0 * params.sigma_sq);
    if (log_ratio >= 0.0 || std::log(u) < log_ratio) {
      x = proposal;
      return true;
    }
    return false;
  }
};

SweepStats update_row(Lattice& lattice, const SiteUpdater& updater, int row,
                      int first_col, int col_step, Rng& rng) {
  std::normal_distribution<double> normal;
  SweepStats stats;
  for (int col = first_col; col < lattice.side(); col += col_step) {
    const double sum = lattice.neighbor_sum(row, col);
    ++stats.proposed;
    if (updater.update(lattice(row, col), sum, rng, normal)) ++stats.accepted;
  }
  return stats;
}

}  // namespace

void validate(const SamplerConfig& config) {
  if (config.proposal_std && !(*config.proposal_std > 0.0)) {
    throw InvalidArgument("proposal_std must be positive");
  }
  if (!(config.support_sds > 0.0)) {
    throw InvalidArgument("support_sds must be positive (inf for unbounded)");
  }
}

double local_conditional_logdensity(double x_center,
                                    std::span<const double> neighbor_values,
                                    const ModelParams& params) {
  validate(params);
  if (!std::isfinite(x_center)) {
    throw InvalidArgument("site value must be finite");
  }
  double centered_sum = 0.0;
  for (double v : neighbor_values) {
    if (!std::isfinite(v)) throw InvalidArgument("neighbor value must be finite");
    centered_sum += v - params.mu;
  }
  const double residual = x_center - params.mu - params.beta * centered_sum;
  return -0.5 * std::log(2.0 * std::numbers::pi * params.sigma_sq) -
         residual * residual / (2.0 * params.sigma_sq);
}

SweepStats metropolis_sweep(Lattice& lattice, const ModelParams& params,
                            const SamplerConfig& config, Rng& rng) {
  validate(params);
  validate(config);
  const SiteUpdater updater(params, config, lattice.neighborhood().delta());
  const int side = lattice.side();

  if (config.sweep_order == SweepOrder::raster) {
    std::normal_distribution<double> normal;
    SweepStats stats;
    for (int row = 0; row < side; ++row) {
      for (int col = 0; col < side; ++col) {
        const double sum = lattice.neighbor_sum(row, col);
        ++stats.proposed;
        if (updater.update(lattice(row, col), sum, rng, normal)) ++stats.accepted;
      }
    }
    return stats;
  }

  const int period = lattice.neighborhood().order() == 3 ? 3 : 2;
  if (side % period != 0) {
    throw InvalidArgument("checkerboard sweep needs side divisible by " +
                          std::to_string(period));
  }
  SweepStats total;
  const int rows_per_class = side / period;
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(rows_per_class));
  std::vector<SweepStats> row_stats(seeds.size());
  for (int color_row = 0; color_row < period; ++color_row) {
    for (int color_col = 0; color_col < period; ++color_col) {
      for (auto& s : seeds) s = rng();
      parallel_for(seeds.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
          Rng child(seeds[k]);
          const int row = color_row + static_cast<int>(k) * period;
          row_stats[k] = update_row(lattice, updater, row, color_col, period, child);
        }
      });
      for (const SweepStats& s : row_stats) {
        total.proposed += s.proposed;
        total.accepted += s.accepted;
      }
    }
  }
  return total;
}

ModelParams estimate_params(const Lattice& lattice, double beta) {
  const double mean = detail::lattice_mean(lattice);
  return {mean, detail::lag_covariance(lattice, mean, 0, 0), beta};
}

double NaturalDecomposition::log_likelihood() const {
  double total = d;
  for (std::size_t k = 0; k < c.size(); ++k) total += c[k] * t[k];
  return total;
}

NaturalDecomposition natural_decomposition(const Lattice& lattice,
                                           const ModelParams& params) {
  validate(params);
  const double mu = params.mu;
  const double s2 = params.sigma_sq;
  const double beta = params.beta;
  const double delta = lattice.neighborhood().delta();
  const double n = static_cast<double>(lattice.size());

  NaturalDecomposition out;
  const double coupling = 1.0 - beta * delta;
  out.c = {mu * coupling / s2, -1.0 / (2.0 * s2), beta / s2,
           -beta * mu * coupling / s2, -beta * beta / (2.0 * s2)};

  for (int row = 0; row < lattice.side(); ++row) {
    for (int col = 0; col < lattice.side(); ++col) {
      const double x = lattice(row, col);
      const double s = lattice.neighbor_sum(row, col);
      out.t[0] += x;
      out.t[1] += x * x;
      out.t[2] += x * s;
      out.t[3] += s;
      out.t[4] += s * s;
    }
  }
  out.d = -n / 2.0 * (std::log(2.0 * std::numbers::pi * s2) + mu * mu / s2) +
          beta * delta * mu * mu * n * (1.0 - beta * delta / 2.0) / s2;
  return out;
}

double pseudo_log_likelihood(const Lattice& lattice, const ModelParams& params) {
  validate(params);
  double total = 0.0;
  for (int row = 0; row < lattice.side(); ++row) {
    for (int col = 0; col < lattice.side(); ++col) {
      const auto values = neighbor_values(lattice, row, col);
      total += local_conditional_logdensity(lattice(row, col), values, params);
    }
  }
  return total;
}

}  // namespace gmrf
