#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace gmrf {

using Rng = std::mt19937_64;

/// Parameter vector (mu, sigma^2, beta) of the pairwise isotropic GMRF.
struct ModelParams {
  double mu = 0.0;
  double sigma_sq = 1.0;
  double beta = 0.0;
};

// Throws InvalidArgument unless sigma_sq > 0, beta >= 0 and all are finite.
void validate(const ModelParams& params);

struct Offset {
  int drow;
  int dcol;
};

struct Site {
  int row;
  int col;
  friend bool operator==(const Site&, const Site&) = default;
  friend auto operator<=>(const Site&, const Site&) = default;
};

/// Neighborhood system of order 1, 2 or 3 (4, 8 or 12 neighbors).
///
/// Offsets are listed in row-major order over the (2r+1)x(2r+1) window
/// around the center, center excluded. Patch vectorization and every
/// neighbor sum rely on this order.
class Neighborhood {
 public:
  explicit Neighborhood(int order = 2);

  int order() const { return order_; }
  int delta() const { return static_cast<int>(offsets_.size()); }
  int radius() const { return order_ == 3 ? 2 : 1; }
  std::span<const Offset> offsets() const { return offsets_; }

  friend bool operator==(const Neighborhood& a, const Neighborhood& b) {
    return a.order_ == b.order_;
  }

 private:
  int order_;
  std::vector<Offset> offsets_;
};

/// Square n x n lattice of real-valued sites with toroidal boundaries.
class Lattice {
 public:
  static constexpr int kMinSide = 5;

  explicit Lattice(int side, Neighborhood neighborhood = Neighborhood{});
  Lattice(int side, std::vector<double> values,
          Neighborhood neighborhood = Neighborhood{});

  int side() const { return side_; }
  std::size_t size() const { return values_.size(); }
  const Neighborhood& neighborhood() const { return neighborhood_; }

  double operator()(int row, int col) const {
    return values_[index(row, col)];
  }
  double& operator()(int row, int col) { return values_[index(row, col)]; }

  // Toroidal access; any integer coordinates are accepted.
  double wrapped(int row, int col) const {
    return values_[index(wrap(row), wrap(col))];
  }
  int wrap(int coord) const {
    const int r = coord % side_;
    return r < 0 ? r + side_ : r;
  }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  // Sum of neighbor values around (row, col).
  double neighbor_sum(int row, int col) const;

  friend bool operator==(const Lattice&, const Lattice&) = default;

 private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(side_) +
           static_cast<std::size_t>(col);
  }

  int side_;
  Neighborhood neighborhood_;
  std::vector<double> values_;
};

/// Neighbor coordinates of (row, col), wrapped, in the fixed offset order.
std::vector<Site> neighbors(const Lattice& lattice, int row, int col);

/// Neighbor values of (row, col) in the fixed offset order.
std::vector<double> neighbor_values(const Lattice& lattice, int row, int col);

/// Lattice with sites drawn i.i.d. from N(mu, sigma^2).
Lattice init_lattice(int side, const ModelParams& params, std::uint64_t seed,
                     Neighborhood neighborhood = Neighborhood{});

}  // namespace gmrf
