#include "gmrf/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/Cholesky>

#include "gmrf/error.hpp"
#include "gmrf/lattice.hpp"
#include "gmrf/parallel.hpp"

namespace gmrf::oracle {
namespace {

constexpr std::size_t kMinDraws = 100000;
constexpr std::size_t kShards = 64;
constexpr int kNeighbors = 8;

// Welford accumulator; shards are merged with Chan's update in shard order.
struct Running {
  double n = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    n += 1.0;
    const double delta = x - mean;
    mean += delta / n;
    m2 += delta * (x - mean);
  }

  void merge(const Running& other) {
    if (other.n == 0.0) return;
    const double total = n + other.n;
    const double delta = other.mean - mean;
    mean += delta * other.n / total;
    m2 += other.m2 + delta * delta * n * other.n / total;
    n = total;
  }

  McEstimate estimate() const {
    const double var = n > 1.0 ? m2 / (n - 1.0) : 0.0;
    return {mean, std::sqrt(var / n)};
  }
};

struct ShardResult {
  std::array<Running, 9> first;
  std::array<Running, 9> second;
};

struct Residuals {
  double u;  // x_i - mu
  double s;  // sum_j (x_j - mu)
  double r;  // u - beta s
  double delta;
};

Residuals residuals(double x_center, std::span<const double> neighbors,
                    const ModelParams& params) {
  Residuals out{x_center - params.mu, 0.0, 0.0,
                static_cast<double>(neighbors.size())};
  for (double v : neighbors) out.s += v - params.mu;
  out.r = out.u - params.beta * out.s;
  return out;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const char* kParamNames[] = {"mu", "sigma_sq", "beta"};

}  // namespace

const McEstimate& McFisher::at(FisherOrder order, Param row, Param col) const {
  const auto index =
      static_cast<std::size_t>(static_cast<int>(row) * 3 + static_cast<int>(col));
  return order == FisherOrder::first ? first[index] : second[index];
}

Eigen::Vector3d score(double x_center, std::span<const double> neighbors,
                      const ModelParams& params) {
  const Residuals q = residuals(x_center, neighbors, params);
  const double s2 = params.sigma_sq;
  const double coupling = 1.0 - params.beta * q.delta;
  return {q.r * coupling / s2, -1.0 / (2.0 * s2) + q.r * q.r / (2.0 * s2 * s2),
          q.r * q.s / s2};
}

Eigen::Matrix3d hessian(double x_center, std::span<const double> neighbors,
                        const ModelParams& params) {
  const Residuals q = residuals(x_center, neighbors, params);
  const double s2 = params.sigma_sq;
  const double s4 = s2 * s2;
  const double coupling = 1.0 - params.beta * q.delta;
  Eigen::Matrix3d h;
  h(0, 0) = -coupling * coupling / s2;
  h(0, 1) = h(1, 0) = -q.r * coupling / s4;
  h(0, 2) = h(2, 0) = -(q.s * coupling + q.delta * q.r) / s2;
  h(1, 1) = 1.0 / (2.0 * s4) - q.r * q.r / (s4 * s2);
  h(1, 2) = h(2, 1) = -q.r * q.s / s4;
  h(2, 2) = -q.s * q.s / s2;
  return h;
}

McFisher mc_fisher(const SyntheticPatchModel& model, std::size_t draws,
                   std::uint64_t seed) {
  if (draws < kMinDraws) {
    throw InvalidArgument("Monte Carlo oracle needs at least 1e5 draws");
  }
  const Eigen::LLT<Matrix9> llt(model.cov9);
  if (llt.info() != Eigen::Success || !model.cov9.isApprox(model.cov9.transpose())) {
    throw InvalidArgument("patch covariance must be symmetric positive definite");
  }
  const Matrix9 chol = llt.matrixL();
  const ModelParams params = model.params();
  validate(params);

  std::vector<ShardResult> shards(kShards);
  parallel_for(kShards, [&](std::size_t begin, std::size_t end) {
    for (std::size_t shard = begin; shard < end; ++shard) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed),
                        static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(shard)};
      Rng rng(seq);
      std::normal_distribution<double> normal;
      const std::size_t count =
          draws / kShards + (shard < draws % kShards ? 1 : 0);
      ShardResult& acc = shards[shard];
      Vector9 z;
      std::array<double, kNeighbors> neighbors{};
      for (std::size_t d = 0; d < count; ++d) {
        for (int k = 0; k < 9; ++k) z(k) = normal(rng);
        const Vector9 patch = (chol * z).array() + model.mu;
        for (int k = 0, j = 0; k < 9; ++k) {
          if (k != kPatchCenter) neighbors[static_cast<std::size_t>(j++)] = patch(k);
        }
        const double x = patch(kPatchCenter);
        const Eigen::Vector3d g = score(x, neighbors, params);
        const Eigen::Matrix3d h = hessian(x, neighbors, params);
        for (int r = 0; r < 3; ++r) {
          for (int c = 0; c < 3; ++c) {
            acc.first[static_cast<std::size_t>(r * 3 + c)].add(g(r) * g(c));
            acc.second[static_cast<std::size_t>(r * 3 + c)].add(-h(r, c));
          }
        }
      }
    }
  });

  ShardResult total;
  for (const ShardResult& shard : shards) {
    for (std::size_t k = 0; k < 9; ++k) {
      total.first[k].merge(shard.first[k]);
      total.second[k].merge(shard.second[k]);
    }
  }
  McFisher out;
  out.draws = draws;
  for (std::size_t k = 0; k < 9; ++k) {
    out.first[k] = total.first[k].estimate();
    out.second[k] = total.second[k].estimate();
  }
  return out;
}

McEstimate mc_fisher_entry(const SyntheticPatchModel& model, Param row,
                           Param col, FisherOrder order, std::size_t draws,
                           std::uint64_t seed) {
  return mc_fisher(model, draws, seed).at(order, row, col);
}

double materialized_kron_sum(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const Eigen::Index rows = a.rows() * b.rows();
  const Eigen::Index cols = a.cols() * b.cols();
  if (rows * cols > 10000) {
    throw InvalidArgument("Kronecker product larger than 1e4 entries");
  }
  Eigen::MatrixXd product(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      product.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  double total = 0.0;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) total += product(i, j);
  }
  return total;
}

SyntheticPatchModel random_patch_model(std::uint64_t seed, double beta_max) {
  Rng rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // A shared factor gives every pair a positive baseline correlation, as in a
  // coupled field; the idiosyncratic part keeps the matrix well conditioned.
  Eigen::Matrix<double, 9, 4> loadings;
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 4; ++j) loadings(i, j) = normal(rng);
  }
  const double shared = 0.5 * unit(rng);
  Matrix9 cov = loadings * loadings.transpose() / 4.0 * 0.3 +
                shared * Matrix9::Ones() + Matrix9::Identity();
  const double target = 0.5 + 3.5 * unit(rng);
  cov *= target / cov(kPatchCenter, kPatchCenter);

  SyntheticPatchModel model;
  model.cov9 = 0.5 * (cov + cov.transpose());
  model.cov9(kPatchCenter, kPatchCenter) = target;
  model.mu = 4.0 * unit(rng) - 2.0;
  model.beta = beta_max * unit(rng);
  return model;
}

std::vector<OracleCheck> run_oracle_suite(std::size_t draws, std::uint64_t seed,
                                          int models) {
  std::vector<OracleCheck> checks;

  for (int m = 0; m < models; ++m) {
    const SyntheticPatchModel model =
        random_patch_model(seed + static_cast<std::uint64_t>(m));
    const FundamentalForms forms =
        fundamental_forms(model.patch_covariance(), model.params());
    const McFisher mc = mc_fisher(model, draws, seed * 1000003ULL + static_cast<std::uint64_t>(m));
    for (FisherOrder order : {FisherOrder::first, FisherOrder::second}) {
      const Eigen::Matrix3d& closed =
          order == FisherOrder::first ? forms.first : forms.second;
      for (int r = 0; r < 3; ++r) {
        for (int c = r; c < 3; ++c) {
          const McEstimate& e = mc.at(order, static_cast<Param>(r), static_cast<Param>(c));
          const double expected = closed(r, c);
          const double gap = std::abs(e.estimate - expected);
          const double allowed = 3.0 * e.std_error + 1e-12 * std::abs(expected);
          OracleCheck check;
          check.name = "model " + std::to_string(m) +
                       (order == FisherOrder::first ? " first " : " second ") + "(" +
                       kParamNames[r] + "," + kParamNames[c] + ")";
          check.passed = gap <= allowed;
          check.detail = "closed " + format_double(expected) + " mc " +
                         format_double(e.estimate) + " se " +
                         format_double(e.std_error);
          checks.push_back(check);
        }
      }
    }
  }

  {
    Rng rng(seed);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const SyntheticPatchModel model =
          random_patch_model(rng(), 0.3);
      const PatchCovariance cov = model.patch_covariance();
      const ModelParams p = model.params();
      worst = std::max(worst, (first_form_nested(cov, p) - first_form_tensorial(cov, p))
                                  .cwiseAbs().maxCoeff());
      worst = std::max(worst, (second_form_nested(cov, p) - second_form_tensorial(cov, p))
                                  .cwiseAbs().maxCoeff());
    }
    checks.push_back({"nested vs tensorial forms (100 models)", worst <= 1e-10,
                      "max abs gap " + format_double(worst)});
  }

  {
    Rng rng(seed + 17);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      Eigen::MatrixXd a(8, 8), b(8, 8);
      for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = unit(rng);
      for (Eigen::Index i = 0; i < b.size(); ++i) b(i) = unit(rng);
      const double scale = std::max(1.0, a.cwiseAbs().sum() * b.cwiseAbs().sum());
      worst = std::max(worst,
                       std::abs(materialized_kron_sum(a, b) - kron_plus_norm(a, b)) / scale);
    }
    checks.push_back({"kron_plus_norm vs materialized product", worst <= 1e-12,
                      "max scaled gap " + format_double(worst)});
  }

  {
    Rng rng(seed + 29);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst_score = 0.0;
    double worst_hessian = 0.0;
    for (int k = 0; k < 10; ++k) {
      ModelParams p{4.0 * unit(rng) - 2.0, 0.5 + 3.5 * unit(rng), 0.3 * unit(rng)};
      std::array<double, kNeighbors> nb{};
      for (double& v : nb) v = p.mu + 2.0 * unit(rng) - 1.0;
      const double x = p.mu + 2.0 * unit(rng) - 1.0;
      const Eigen::Vector3d g = score(x, nb, p);
      const Eigen::Matrix3d h = hessian(x, nb, p);
      for (int j = 0; j < 3; ++j) {
        const double step = 1e-5;
        ModelParams lo = p, hi = p;
        double* plo = j == 0 ? &lo.mu : j == 1 ? &lo.sigma_sq : &lo.beta;
        double* phi = j == 0 ? &hi.mu : j == 1 ? &hi.sigma_sq : &hi.beta;
        *plo -= step;
        *phi += step;
        const auto logp = [&](const ModelParams& q) {
          double s = 0.0;
          for (double v : nb) s += v - q.mu;
          const double r = x - q.mu - q.beta * s;
          return -0.5 * std::log(2.0 * std::numbers::pi * q.sigma_sq) -
                 r * r / (2.0 * q.sigma_sq);
        };
        const double fd = (logp(hi) - logp(lo)) / (2.0 * step);
        worst_score = std::max(worst_score, std::abs(fd - g(j)) / std::max(1.0, std::abs(g(j))));
        const Eigen::Vector3d fd_h = (score(x, nb, hi) - score(x, nb, lo)) / (2.0 * step);
        for (int i = 0; i < 3; ++i) {
          worst_hessian = std::max(
              worst_hessian, std::abs(fd_h(i) - h(i, j)) / std::max(1.0, std::abs(h(i, j))));
        }
      }
    }
    checks.push_back({"scores vs finite differences", worst_score <= 1e-5,
                      "max scaled gap " + format_double(worst_score)});
    checks.push_back({"hessians vs finite differences", worst_hessian <= 1e-5,
                      "max scaled gap " + format_double(worst_hessian)});
  }
  return checks;
}

}  // namespace gmrf::oracle
