#pragma once

#include <string>

#include "gmrf/cycle.hpp"
#include "gmrf/error.hpp"

namespace gmrf::report {

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Parses a flat `key = value` file into a CycleConfig. Blank lines and
/// `#` comments are ignored; omitted keys keep their defaults.
///
/// Keys: side, delta_beta, half_cycle_steps, sweeps_per_step, seed,
/// init_mu, init_sigma_sq, ridge, sampler.mode (gibbs | random_walk_mh),
/// sampler.proposal_std, sampler.sweep_order (raster | checkerboard),
/// sampler.support_sds (number or inf), sampler.feedback
/// (none | mean | mean_and_variance).
CycleConfig parse_config(const std::string& path);
CycleConfig parse_config_text(const std::string& text);

/// Inverse of parse_config_text: every key, one per line.
std::string format_config(const CycleConfig& config);

std::string to_string(SamplerMode mode);
std::string to_string(SweepOrder order);
std::string to_string(SamplerFeedback feedback);
std::string to_string(Phase phase);
std::string to_string(SignDirection direction);

}  // namespace gmrf::report
