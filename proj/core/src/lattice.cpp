#include "gmrf/lattice.hpp"

#include <cmath>
#include <random>
#include <string>

#include "gmrf/error.hpp"

namespace gmrf {

void validate(const ModelParams& params) {
  if (!std::isfinite(params.mu) || !std::isfinite(params.sigma_sq) ||
      !std::isfinite(params.beta)) {
    throw InvalidArgument("model parameters must be finite");
  }
  if (params.sigma_sq <= 0.0) {
    throw InvalidArgument("sigma_sq must be positive, got " +
                          std::to_string(params.sigma_sq));
  }
  if (params.beta < 0.0) {
    throw InvalidArgument("beta must be non-negative, got " +
                          std::to_string(params.beta));
  }
}

Neighborhood::Neighborhood(int order) : order_(order) {
  if (order < 1 || order > 3) {
    throw InvalidArgument("neighborhood order must be 1, 2 or 3, got " +
                          std::to_string(order));
  }
  // order 1: |d|^2 <= 1, order 2: Chebyshev radius 1, order 3: |d|^2 <= 4
  const int r = radius();
  for (int dr = -r; dr <= r; ++dr) {
    for (int dc = -r; dc <= r; ++dc) {
      if (dr == 0 && dc == 0) continue;
      const int d2 = dr * dr + dc * dc;
      const bool member = order == 1 ? d2 <= 1 : order == 2 ? d2 <= 2 : d2 <= 4;
      if (member) offsets_.push_back({dr, dc});
    }
  }
}

Lattice::Lattice(int side, Neighborhood neighborhood)
    : Lattice(side,
              std::vector<double>(side > 0 ? static_cast<std::size_t>(side) *
                                                 static_cast<std::size_t>(side)
                                           : 0),
              std::move(neighborhood)) {}

Lattice::Lattice(int side, std::vector<double> values, Neighborhood neighborhood)
    : side_(side),
      neighborhood_(std::move(neighborhood)),
      values_(std::move(values)) {
  if (side < kMinSide) {
    throw InvalidArgument("lattice side must be at least " +
                          std::to_string(kMinSide) + ", got " +
                          std::to_string(side));
  }
  if (values_.size() !=
      static_cast<std::size_t>(side) * static_cast<std::size_t>(side)) {
    throw InvalidArgument("lattice needs side^2 values");
  }
}

double Lattice::neighbor_sum(int row, int col) const {
  double sum = 0.0;
  for (const Offset& o : neighborhood_.offsets()) {
    sum += wrapped(row + o.drow, col + o.dcol);
  }
  return sum;
}

std::vector<Site> neighbors(const Lattice& lattice, int row, int col) {
  std::vector<Site> out;
  out.reserve(lattice.neighborhood().offsets().size());
  for (const Offset& o : lattice.neighborhood().offsets()) {
    out.push_back({lattice.wrap(row + o.drow), lattice.wrap(col + o.dcol)});
  }
  return out;
}

std::vector<double> neighbor_values(const Lattice& lattice, int row, int col) {
  std::vector<double> out;
  out.reserve(lattice.neighborhood().offsets().size());
  for (const Offset& o : lattice.neighborhood().offsets()) {
    out.push_back(lattice.wrapped(row + o.drow, col + o.dcol));
  }
  return out;
}

Lattice init_lattice(int side, const ModelParams& params, std::uint64_t seed,
                     Neighborhood neighborhood) {
  validate(params);
  Lattice lattice(side, std::move(neighborhood));
  Rng rng(seed);
  std::normal_distribution<double> normal(params.mu, std::sqrt(params.sigma_sq));
  for (double& v : lattice.values()) v = normal(rng);
  return lattice;
}

}  // namespace gmrf
