#include "gmrf/cycle.hpp"

#include <algorithm>
#include <cmath>

#include "gmrf/error.hpp"
#include "gmrf/patch_stats.hpp"
#include "moments.hpp"

namespace gmrf {
namespace {

// Keeps the sampler stream separate from the one that draws the initial
// lattice.
constexpr std::uint64_t kSamplerStream = 0x9e3779b97f4a7c15ULL;

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

void validate(const CycleConfig& config) {
  if (config.side < Lattice::kMinSide) {
    throw InvalidArgument("side must be at least 5");
  }
  if (!(config.delta_beta > 0.0) || !std::isfinite(config.delta_beta)) {
    throw InvalidArgument("delta_beta must be positive and finite");
  }
  if (config.half_cycle_steps < 1) {
    throw InvalidArgument("half_cycle_steps must be at least 1");
  }
  if (config.sweeps_per_step < 1) {
    throw InvalidArgument("sweeps_per_step must be at least 1");
  }
  if (!std::isfinite(config.init_mu)) {
    throw InvalidArgument("init_mu must be finite");
  }
  if (!(config.init_sigma_sq > 0.0) || !std::isfinite(config.init_sigma_sq)) {
    throw InvalidArgument("init_sigma_sq must be positive and finite");
  }
  if (!(config.ridge >= 0.0) || !std::isfinite(config.ridge)) {
    throw InvalidArgument("ridge must be finite and non-negative");
  }
  validate(config.sampler);
}

double cycle_beta(const CycleConfig& config, int iteration) {
  const int h = config.half_cycle_steps;
  const int step = iteration <= h ? iteration : 2 * h - iteration;
  return std::max(0, step) * config.delta_beta;
}

CycleRecord analyze_lattice(const Lattice& lattice, double beta,
                            double relative_ridge) {
  const ModelParams estimate = estimate_params(lattice, beta);
  if (!(estimate.sigma_sq > 0.0)) {
    throw InvalidArgument("lattice is constant; sample variance is zero");
  }
  const PatchCovariance cov = patch_covariance(lattice);
  const FundamentalForms forms = fundamental_forms(cov, estimate);
  const CurvatureReport report =
      curvatures(forms, relative_ridge * forms.first.norm());

  CycleRecord record;
  record.beta = beta;
  record.entropy = entropy(cov, estimate);
  record.forms = forms.components();
  record.gaussian_k = report.gaussian_k;
  record.mean_h = report.mean_h;
  record.principal = report.principal;
  record.estimate = estimate;
  return record;
}

std::vector<CycleRecord> run_cycle(const CycleConfig& config,
                                   const CycleObserver& observer) {
  validate(config);
  Lattice lattice = init_lattice(
      config.side, {config.init_mu, config.init_sigma_sq, 0.0}, config.seed);
  Rng rng(config.seed ^ kSamplerStream);

  std::vector<CycleRecord> records;
  records.reserve(static_cast<std::size_t>(config.iterations()));
  for (int i = 0; i < config.iterations(); ++i) {
    const double beta = cycle_beta(config, i);
    ModelParams driver{config.init_mu, config.init_sigma_sq, beta};
    if (config.feedback != SamplerFeedback::none) {
      driver.mu = detail::lattice_mean(lattice);
    }
    if (config.feedback == SamplerFeedback::mean_and_variance) {
      const double var = detail::lag_covariance(lattice, driver.mu, 0, 0);
      if (var > 0.0) driver.sigma_sq = var;
    }
    for (int s = 0; s < config.sweeps_per_step; ++s) {
      metropolis_sweep(lattice, driver, config.sampler, rng);
    }
    CycleRecord record = analyze_lattice(lattice, beta, config.ridge);
    record.iteration = i;
    record.phase = i < config.half_cycle_steps ? Phase::heating : Phase::cooling;
    if (observer) observer(record, lattice);
    records.push_back(record);
  }
  return records;
}

std::vector<SignChangeEvent> detect_sign_changes(
    std::span<const CycleRecord> records) {
  std::vector<SignChangeEvent> events;
  int previous = 0;
  for (const CycleRecord& record : records) {
    const int current = sign_of(record.gaussian_k);
    if (current == 0) continue;
    if (previous != 0 && current != previous) {
      events.push_back({record.iteration, record.beta,
                        current > 0 ? SignDirection::negative_to_positive
                                    : SignDirection::positive_to_negative});
    }
    previous = current;
  }
  return events;
}

HysteresisPath hysteresis_path(std::span<const CycleRecord> records,
                               CurvatureQuantity quantity) {
  HysteresisPath path;
  auto curvature = [quantity](const CycleRecord& r) {
    return quantity == CurvatureQuantity::gaussian_k ? r.gaussian_k : r.mean_h;
  };
  for (const CycleRecord& r : records) {
    auto& target = r.phase == Phase::heating ? path.heating : path.cooling;
    target.emplace_back(curvature(r), r.entropy);
  }
  const std::size_t n = records.size();
  double twice_area = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const CycleRecord& a = records[k];
    const CycleRecord& b = records[(k + 1) % n];
    twice_area += curvature(a) * b.entropy - curvature(b) * a.entropy;
  }
  path.signed_area = 0.5 * twice_area;
  return path;
}

}  // namespace gmrf
