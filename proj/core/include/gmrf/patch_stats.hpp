#pragma once

#include <Eigen/Core>

#include "gmrf/lattice.hpp"

namespace gmrf {

using Vector8 = Eigen::Matrix<double, 8, 1>;
using Vector9 = Eigen::Matrix<double, 9, 1>;
using Matrix8 = Eigen::Matrix<double, 8, 8>;
using Matrix9 = Eigen::Matrix<double, 9, 9>;

/// Index of the patch center in a row-major 3x3 patch vector.
inline constexpr int kPatchCenter = 4;

/// Pooled 9x9 covariance of all 3x3 patches, split into the center/neighbor
/// covariances `rho` and the neighbor/neighbor block `sigma_minus`.
struct PatchCovariance {
  Matrix9 sigma_p = Matrix9::Zero();
  Vector8 rho = Vector8::Zero();
  Matrix8 sigma_minus = Matrix8::Zero();
  double sigma_sq_center = 0.0;

  // Splits a symmetric 9x9 matrix into the decomposition fields.
  static PatchCovariance from_matrix(const Matrix9& sigma_p);

  // True when every entry is zero (constant lattice).
  bool degenerate() const;
};

/// Row-major flattening of the toroidal 3x3 window centered at (row, col).
/// Requires a second-order neighborhood.
Vector9 patch_vectorize(const Lattice& lattice, int row, int col);

/// Biased (1/n^2) covariance of all n^2 patch vectors.
///
/// Every site is a patch center under toroidal wrap, so entry (a, b) depends
/// only on the displacement between patch positions a and b; the 25 distinct
/// lag autocovariances are reduced per row and combined with pairwise_sum,
/// giving results independent of the worker thread count.
PatchCovariance patch_covariance(const Lattice& lattice);

/// ||a||_+ : the sum of all entries (signed).
template <typename Derived>
double plus_norm(const Eigen::DenseBase<Derived>& a) {
  return a.sum();
}

/// ||a (x) b||_+ without forming the Kronecker product.
template <typename DerivedA, typename DerivedB>
double kron_plus_norm(const Eigen::DenseBase<DerivedA>& a,
                      const Eigen::DenseBase<DerivedB>& b) {
  return plus_norm(a) * plus_norm(b);
}

}  // namespace gmrf
