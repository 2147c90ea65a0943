#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "gmrf/fisher_geometry.hpp"
#include "gmrf/patch_stats.hpp"

namespace gmrf::oracle {

/// Ground-truth Gaussian law of a 3x3 patch (center at index 4). The model's
/// sigma^2 is the center variance cov9(4, 4).
struct SyntheticPatchModel {
  Matrix9 cov9 = Matrix9::Identity();
  double mu = 0.0;
  double beta = 0.0;

  double sigma_sq() const { return cov9(kPatchCenter, kPatchCenter); }
  ModelParams params() const { return {mu, sigma_sq(), beta}; }
  PatchCovariance patch_covariance() const {
    return PatchCovariance::from_matrix(cov9);
  }
};

enum class FisherOrder { first, second };

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo estimates of all nine entries of both forms.
struct McFisher {
  std::array<McEstimate, 9> first{};
  std::array<McEstimate, 9> second{};
  std::size_t draws = 0;

  const McEstimate& at(FisherOrder order, Param row, Param col) const;
};

/// Analytic gradient of log p(x_i | eta_i, theta) in (mu, sigma^2, beta).
Eigen::Vector3d score(double x_center, std::span<const double> neighbors,
                      const ModelParams& params);

/// Analytic Hessian of log p(x_i | eta_i, theta).
Eigen::Matrix3d hessian(double x_center, std::span<const double> neighbors,
                        const ModelParams& params);

/// Samples patches from the model and averages score outer products (first
/// order) and negated Hessians (second order). Draws are split into fixed
/// shards, each seeded from (seed, shard index) and combined in shard order.
/// Requires draws >= 1e5 and a positive definite cov9.
McFisher mc_fisher(const SyntheticPatchModel& model, std::size_t draws,
                   std::uint64_t seed);

McEstimate mc_fisher_entry(const SyntheticPatchModel& model, Param row,
                           Param col, FisherOrder order, std::size_t draws,
                           std::uint64_t seed);

/// Builds the Kronecker product of a and b entry by entry and sums it. Rejects products with more than
/// 1e4 entries.
double materialized_kron_sum(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Random positive definite patch model with center variance in
/// [0.5, 4] and beta in [0, beta_max].
SyntheticPatchModel random_patch_model(std::uint64_t seed,
                                       double beta_max = 0.3);

struct OracleCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Checks every form component against Monte Carlo (3 standard errors),
/// the tensorial path against nested loops, kron_plus_norm against the
/// materialized product, and the analytic scores against finite differences.
std::vector<OracleCheck> run_oracle_suite(std::size_t draws, std::uint64_t seed,
                                          int models = 5);

}  // namespace gmrf::oracle
