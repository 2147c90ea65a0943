#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "gmrf/fisher_geometry.hpp"
#include "gmrf/lattice.hpp"
#include "gmrf/sampler.hpp"

namespace gmrf {

/// Which re-estimated parameters drive the sampler at each iteration.
///
/// `none` keeps the initial (mu, sigma^2). `mean` recenters the conditional
/// (and the support window) on the current sample mean while keeping the
/// initial sigma^2. `mean_and_variance` also feeds back the sample variance,
/// which makes the field scale grow without bound once beta * delta > 1.
enum class SamplerFeedback { none, mean, mean_and_variance };

struct CycleConfig {
  int side = 512;
  double delta_beta = 0.0006;
  int half_cycle_steps = 500;
  int sweeps_per_step = 1;
  std::uint64_t seed = 1;
  double init_mu = 0.0;
  double init_sigma_sq = 1.0;
  SamplerConfig sampler{SamplerMode::gibbs, SweepOrder::raster, std::nullopt, 3.0};
  SamplerFeedback feedback = SamplerFeedback::mean;
  // Relative ridge: the shape operator uses ridge * ||I||_F when the first
  // form is singular. Zero disables it and lets SingularFirstForm escape.
  double ridge = 1e-9;

  double beta_max() const {
    return delta_beta * static_cast<double>(half_cycle_steps);
  }
  int iterations() const { return 2 * half_cycle_steps; }
};

void validate(const CycleConfig& config);

enum class Phase { heating, cooling };

struct CycleRecord {
  int iteration = 0;
  double beta = 0.0;
  double entropy = 0.0;
  FormComponents forms;
  double gaussian_k = 0.0;
  double mean_h = 0.0;
  std::array<double, 3> principal{};
  Phase phase = Phase::heating;
  ModelParams estimate;  // (mu-hat, sigma-hat^2, beta) used for the forms
};

enum class SignDirection { negative_to_positive, positive_to_negative };

struct SignChangeEvent {
  int iteration = 0;
  double beta = 0.0;
  SignDirection direction = SignDirection::negative_to_positive;
};

/// Called after each iteration with the record and the lattice it was
/// computed from.
using CycleObserver = std::function<void(const CycleRecord&, const Lattice&)>;

/// Beta at a given iteration: i * delta_beta while heating, then stepping
/// back down; the record at iteration half_cycle_steps holds beta_max.
double cycle_beta(const CycleConfig& config, int iteration);

/// Runs one full information cycle, 0 -> beta_max -> 0.
///
/// Each iteration runs `sweeps_per_step` sweeps at the current beta,
/// re-estimates (mu, sigma^2) from the lattice, and records the patch
/// covariance geometry. Deterministic for a given config.
std::vector<CycleRecord> run_cycle(const CycleConfig& config,
                                   const CycleObserver& observer = {});

/// Record for a single lattice state (shared by run_cycle and `forms`).
CycleRecord analyze_lattice(const Lattice& lattice, double beta,
                            double relative_ridge);

/// One event per consecutive pair of records whose Gaussian curvatures have
/// opposite signs. Exact zeros carry the previous sign forward, so they
/// attach to the next transition.
std::vector<SignChangeEvent> detect_sign_changes(
    std::span<const CycleRecord> records);

enum class CurvatureQuantity { gaussian_k, mean_h };

/// (curvature, entropy) polylines for each phase plus the signed area of the
/// closed loop traced by the records in order (shoelace formula).
struct HysteresisPath {
  std::vector<std::pair<double, double>> heating;
  std::vector<std::pair<double, double>> cooling;
  double signed_area = 0.0;
};

HysteresisPath hysteresis_path(std::span<const CycleRecord> records,
                               CurvatureQuantity quantity);

}  // namespace gmrf
