#include "gmrf/fisher_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "gmrf/error.hpp"

namespace gmrf {
namespace {

constexpr int kNeighbors = 8;

void check_params(const ModelParams& params) {
  validate(params);
}

struct Moments {
  double a;   // ||rho||_+
  double b;   // ||sigma_minus||_+
  double rr;  // ||rho (x) rho||_+
  double rs;  // ||rho (x) sigma_minus||_+
  double ss;  // ||sigma_minus (x) sigma_minus||_+
};

Moments tensorial_moments(const PatchCovariance& cov) {
  return {plus_norm(cov.rho), plus_norm(cov.sigma_minus),
          kron_plus_norm(cov.rho, cov.rho), kron_plus_norm(cov.rho, cov.sigma_minus),
          kron_plus_norm(cov.sigma_minus, cov.sigma_minus)};
}

// The same quantities as sums over neighbor indices; rs and ss carry the
// three Isserlis pairings, so they are three times their tensorial
// counterparts.
Moments nested_moments(const PatchCovariance& cov) {
  const auto& r = cov.rho;
  const auto& s = cov.sigma_minus;
  Moments m{0, 0, 0, 0, 0};
  for (int j = 0; j < kNeighbors; ++j) {
    m.a += r(j);
    for (int k = 0; k < kNeighbors; ++k) {
      m.b += s(j, k);
      m.rr += r(j) * r(k);
      for (int l = 0; l < kNeighbors; ++l) {
        m.rs += r(j) * s(k, l) + r(k) * s(j, l) + r(l) * s(j, k);
        for (int q = 0; q < kNeighbors; ++q) {
          m.ss += s(j, k) * s(l, q) + s(j, l) * s(k, q) + s(j, q) * s(k, l);
        }
      }
    }
  }
  return m;
}

Eigen::Matrix3d assemble(double a, double e, double f, double i) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  m(0, 0) = a;
  m(1, 1) = e;
  m(1, 2) = m(2, 1) = f;
  m(2, 2) = i;
  return m;
}

// rs_terms and ss_terms are the full Isserlis sums (3ab and 3b^2 for the
// tensorial route).
Eigen::Matrix3d first_from(const Moments& m, double rs_terms, double ss_terms,
                           const ModelParams& params, int delta) {
  const double s2 = params.sigma_sq;
  const double s4 = s2 * s2;
  const double s6 = s4 * s2;
  const double s8 = s4 * s4;
  const double beta = params.beta;
  const double coupling = 1.0 - beta * delta;
  const double w = 2.0 * beta * m.a - beta * beta * m.b;

  const double a = coupling * coupling / s2 * (1.0 - w / s2);
  const double e = 1.0 / (2.0 * s4) - w / s6 +
                   (3.0 * beta * beta * m.rr - beta * beta * beta * rs_terms +
                    0.25 * std::pow(beta, 4) * ss_terms) /
                       s8;
  const double f = (m.a - beta * m.b) / s4 -
                   (6.0 * beta * m.rr - 3.0 * beta * beta * rs_terms +
                    beta * beta * beta * ss_terms) /
                       (2.0 * s6);
  const double i = m.b / s2 +
                   (2.0 * m.rr - 2.0 * beta * rs_terms + beta * beta * ss_terms) / s4;
  return assemble(a, e, f, i);
}

Eigen::Matrix3d second_from(double a, double b, const ModelParams& params,
                            int delta) {
  const double s2 = params.sigma_sq;
  const double s4 = s2 * s2;
  const double beta = params.beta;
  const double coupling = 1.0 - beta * delta;
  const double l = coupling * coupling / s2;
  const double p = 1.0 / (2.0 * s4) - (2.0 * beta * a - beta * beta * b) / (s4 * s2);
  const double q = (a - beta * b) / s4;
  const double t = b / s2;
  return assemble(l, p, q, t);
}

double relative_tolerance(const Eigen::Matrix3d& p) {
  return 1e-8 * std::max(1.0, p.norm());
}

std::array<double, 3> sorted_descending(std::array<double, 3> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

}  // namespace

FormComponents FundamentalForms::components() const {
  return {first(0, 0),  first(1, 1),  first(1, 2),  first(2, 2),
          second(0, 0), second(1, 1), second(1, 2), second(2, 2)};
}

Eigen::Matrix3d first_form_nested(const PatchCovariance& cov,
                                  const ModelParams& params) {
  check_params(params);
  const Moments m = nested_moments(cov);
  return first_from(m, m.rs, m.ss, params, kNeighbors);
}

Eigen::Matrix3d first_form_tensorial(const PatchCovariance& cov,
                                     const ModelParams& params) {
  check_params(params);
  const Moments m = tensorial_moments(cov);
  return first_from(m, 3.0 * m.rs, 3.0 * m.ss, params, kNeighbors);
}

Eigen::Matrix3d second_form_nested(const PatchCovariance& cov,
                                   const ModelParams& params) {
  check_params(params);
  double a = 0.0;
  double b = 0.0;
  for (int j = 0; j < kNeighbors; ++j) {
    a += cov.rho(j);
    for (int k = 0; k < kNeighbors; ++k) b += cov.sigma_minus(j, k);
  }
  return second_from(a, b, params, kNeighbors);
}

Eigen::Matrix3d second_form_tensorial(const PatchCovariance& cov,
                                      const ModelParams& params) {
  check_params(params);
  return second_from(plus_norm(cov.rho), plus_norm(cov.sigma_minus), params,
                     kNeighbors);
}

FundamentalForms fundamental_forms(const PatchCovariance& cov,
                                   const ModelParams& params) {
  return {first_form(cov, params), second_form(cov, params)};
}

bool is_numerically_singular(const Eigen::Matrix3d& first) {
  const double norm = first.norm();
  return std::abs(first.determinant()) < 1e-12 * norm * norm * norm;
}

double default_ridge(const Eigen::Matrix3d& first) { return 1e-9 * first.norm(); }

namespace {

std::pair<Eigen::Matrix3d, Eigen::Matrix3d> regularized(
    const Eigen::Matrix3d& first, const Eigen::Matrix3d& second, double ridge) {
  if (!(ridge >= 0.0) || !std::isfinite(ridge)) {
    throw InvalidArgument("ridge must be finite and non-negative");
  }
  if (!first.allFinite() || !second.allFinite()) {
    throw InvalidArgument("fundamental forms must be finite");
  }
  if (!is_numerically_singular(first)) return {first, second};
  if (ridge == 0.0) {
    throw SingularFirstForm("first fundamental form is numerically singular");
  }
  const Eigen::Matrix3d shift = ridge * Eigen::Matrix3d::Identity();
  return {first + shift, second + shift};
}

}  // namespace

Eigen::Matrix3d shape_operator(const Eigen::Matrix3d& first,
                               const Eigen::Matrix3d& second, double ridge) {
  const auto [i, ii] = regularized(first, second, ridge);
  // ii * i^{-1} == (i^{-1} * ii)^T for symmetric arguments.
  const Eigen::Matrix3d solved = i.partialPivLu().solve(ii);
  return -solved.transpose();
}

CurvatureReport curvatures(const Eigen::Matrix3d& p) {
  if (!p.allFinite()) throw MalformedShapeOperator("shape operator is not finite");
  Eigen::EigenSolver<Eigen::Matrix3d> solver(p, false);
  if (solver.info() != Eigen::Success) {
    throw MalformedShapeOperator("eigen decomposition failed");
  }
  const auto values = solver.eigenvalues();
  const double tol = relative_tolerance(p);
  std::array<double, 3> principal{};
  for (int k = 0; k < 3; ++k) {
    if (std::abs(values(k).imag()) > tol) {
      throw MalformedShapeOperator("shape operator has complex eigenvalues");
    }
    principal[static_cast<std::size_t>(k)] = values(k).real();
  }
  CurvatureReport report;
  report.gaussian_k = p.determinant();
  report.mean_h = p.trace();
  report.principal = sorted_descending(principal);
  report.shape_operator = p;
  return report;
}

CurvatureReport curvatures(const FundamentalForms& forms, double ridge) {
  const auto [i, ii] = regularized(forms.first, forms.second, ridge);
  const Eigen::Matrix3d p = -i.partialPivLu().solve(ii).transpose();

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::Matrix3d> solver(
      ii, i, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    // First form not positive definite; fall back to the product.
    return curvatures(p);
  }
  CurvatureReport report;
  report.gaussian_k = p.determinant();
  report.mean_h = p.trace();
  report.principal = sorted_descending({-solver.eigenvalues()(0),
                                        -solver.eigenvalues()(1),
                                        -solver.eigenvalues()(2)});
  report.shape_operator = p;
  return report;
}

double gaussian_entropy(double sigma_sq) {
  if (!(sigma_sq > 0.0) || !std::isfinite(sigma_sq)) {
    throw InvalidArgument("sigma_sq must be positive and finite");
  }
  return 0.5 * (std::log(2.0 * std::numbers::pi * sigma_sq) + 1.0);
}

double entropy(const PatchCovariance& cov, const ModelParams& params) {
  check_params(params);
  const double a = plus_norm(cov.rho);
  const double b = plus_norm(cov.sigma_minus);
  const double beta = params.beta;
  return gaussian_entropy(params.sigma_sq) - beta * a / params.sigma_sq +
         beta * beta * b / (2.0 * params.sigma_sq);
}

}  // namespace gmrf
