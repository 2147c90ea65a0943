#pragma once

#include <array>

#include <Eigen/Core>

#include "gmrf/lattice.hpp"
#include "gmrf/patch_stats.hpp"

namespace gmrf {

// Rows and columns of every 3x3 form are ordered (mu, sigma^2, beta).
enum class Param { mu = 0, sigma_sq = 1, beta = 2 };

/// The eight non-trivial scalars of the two fundamental forms.
struct FormComponents {
  double A = 0, E = 0, F = 0, I = 0;  // first form
  double L = 0, P = 0, Q = 0, T = 0;  // second form
};

struct FundamentalForms {
  Eigen::Matrix3d first = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d second = Eigen::Matrix3d::Zero();

  FormComponents components() const;
};

// Both routes evaluate the same closed forms. The nested route loops over
// neighbor indices j, k, l, m exactly as the Isserlis expansions are
// written; the tensorial route collapses each sum to plus-norms of rho,
// sigma_minus and their Kronecker products.
Eigen::Matrix3d first_form_nested(const PatchCovariance& cov,
                                  const ModelParams& params);
Eigen::Matrix3d first_form_tensorial(const PatchCovariance& cov,
                                     const ModelParams& params);
Eigen::Matrix3d second_form_nested(const PatchCovariance& cov,
                                   const ModelParams& params);
Eigen::Matrix3d second_form_tensorial(const PatchCovariance& cov,
                                      const ModelParams& params);

inline Eigen::Matrix3d first_form(const PatchCovariance& cov,
                                  const ModelParams& params) {
  return first_form_tensorial(cov, params);
}
inline Eigen::Matrix3d second_form(const PatchCovariance& cov,
                                   const ModelParams& params) {
  return second_form_tensorial(cov, params);
}

FundamentalForms fundamental_forms(const PatchCovariance& cov,
                                   const ModelParams& params);

/// |det(first)| below 1e-12 * ||first||_F^3.
bool is_numerically_singular(const Eigen::Matrix3d& first);

/// 1e-9 * ||first||_F.
double default_ridge(const Eigen::Matrix3d& first);

/// P = -(II)(I)^{-1}.
///
/// When `first` is numerically singular the ridge is added to the diagonal
/// of both forms, P = -(II + rI)(I + rI)^{-1}, so that II == I still maps to
/// -identity. A singular `first` with ridge == 0 throws SingularFirstForm.
Eigen::Matrix3d shape_operator(const Eigen::Matrix3d& first,
                               const Eigen::Matrix3d& second,
                               double ridge = 0.0);

/// Gaussian (det), mean (trace) and principal (eigenvalue) curvatures.
struct CurvatureReport {
  double gaussian_k = 0.0;
  double mean_h = 0.0;
  std::array<double, 3> principal{};  // descending
  Eigen::Matrix3d shape_operator = Eigen::Matrix3d::Zero();
};

/// Curvatures of an arbitrary shape operator. Throws MalformedShapeOperator
/// if an eigenvalue has an imaginary part above 1e-8 (relative to ||p||).
CurvatureReport curvatures(const Eigen::Matrix3d& p);

/// Curvatures from the forms. Principal curvatures come from the symmetric
/// generalized problem II v = lambda I v (negated), which keeps them real
/// whenever the (ridged) first form is positive definite.
CurvatureReport curvatures(const FundamentalForms& forms, double ridge = 0.0);

/// Differential entropy of N(mu, sigma^2): (log(2 pi sigma^2) + 1) / 2.
double gaussian_entropy(double sigma_sq);

/// H_beta = H_G - (beta/sigma^2) ||rho||_+ + (beta^2 / 2 sigma^2)
/// ||sigma_minus||_+, which equals H_G - beta sigma^2 Q - beta^2 T / 2.
double entropy(const PatchCovariance& cov, const ModelParams& params);

}  // namespace gmrf
