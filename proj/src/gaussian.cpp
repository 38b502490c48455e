// SPDX-License-Identifier: Apache-2.0
#include "gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "error.hpp"

namespace jacdep {
namespace {

using Cholesky = Eigen::LLT<CMatrix>;

void require_same_dim(int a, int b, const char* where) {
  if (a != b) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(where) + ": " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

void require_square(const CMatrix& m, int n, const char* where) {
  if (m.rows() != n || m.cols() != n) {
    throw Error(ErrorCode::kDimensionMismatch, std::string(where) + ": matrix is not " +
                                                    std::to_string(n) + "x" + std::to_string(n));
  }
}

// 1x1 shortcut matching is_hermitian + Cholesky: v is the real pivot.
bool scalar_pd(const CMatrix& m, double& v) {
  const Complex c = m(0, 0);
  v = c.real();
  if (!std::isfinite(v) || !std::isfinite(c.imag())) return false;
  if (2.0 * std::abs(c.imag()) > kHermitianTol * std::abs(c)) return false;
  return v > 0.0;
}

// Factorizes m when it is Hermitian PD; returns false otherwise.
bool try_cholesky(const CMatrix& m, Cholesky& llt) {
  if (m.rows() == 0 || m.rows() != m.cols() || !m.allFinite() || !is_hermitian(m)) return false;
  llt.compute(m);
  if (llt.info() != Eigen::Success) return false;
  const auto diag = llt.matrixLLT().diagonal();
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    const double d = diag(i).real();
    if (!(d > 0.0) || !std::isfinite(d)) return false;
  }
  return true;
}

double log_det_from_cholesky(const Cholesky& llt) {
  double s = 0.0;
  const auto diag = llt.matrixLLT().diagonal();
  for (Eigen::Index i = 0; i < diag.size(); ++i) s += std::log(diag(i).real());
  return 2.0 * s;
}

CMatrix identity(int n) { return CMatrix::Identity(n, n); }

}  // namespace

GaussianMoment GaussianMoment::standard(int n) {
  return {CVector::Zero(n), CMatrix::Identity(n, n)};
}

GaussianNatural GaussianNatural::zero(int n) { return {CVector::Zero(n), CMatrix::Zero(n, n)}; }

bool is_hermitian(const CMatrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = m.cwiseAbs().maxCoeff();
  if (m.size() == 0 || scale == 0.0) return true;
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  return asym <= rel_tol * scale;
}

bool is_hermitian_pd(const CMatrix& m) {
  if (m.rows() == 1 && m.cols() == 1) {
    double v;
    return scalar_pd(m, v);
  }
  Cholesky llt;
  return try_cholesky(m, llt);
}

CMatrix hermitian_part(const CMatrix& m) {
  if (m.rows() == 1 && m.cols() == 1) return CMatrix::Constant(1, 1, Complex(m(0, 0).real()));
  return 0.5 * (m + m.adjoint());
}

GaussianNatural natural_from_moment(const GaussianMoment& g) {
  require_square(g.cov, g.dim(), "natural_from_moment");
  if (g.dim() == 1) {
    double v;
    if (!scalar_pd(g.cov, v)) {
      throw Error(ErrorCode::kSingularCovariance, "covariance is not Hermitian positive definite");
    }
    return {g.mean / v, CMatrix::Constant(1, 1, Complex(1.0 / v))};
  }
  Cholesky llt;
  if (!try_cholesky(g.cov, llt)) {
    throw Error(ErrorCode::kSingularCovariance, "covariance is not Hermitian positive definite");
  }
  GaussianNatural out;
  out.lambda = hermitian_part(llt.solve(identity(g.dim())));
  out.gamma = llt.solve(g.mean);
  return out;
}

GaussianMoment moment_from_natural(const GaussianNatural& g) {
  require_square(g.lambda, g.dim(), "moment_from_natural");
  if (g.dim() == 1) {
    double v;
    if (!scalar_pd(g.lambda, v)) {
      throw Error(ErrorCode::kImproperMessage, "precision is not Hermitian positive definite");
    }
    return {g.gamma / v, CMatrix::Constant(1, 1, Complex(1.0 / v))};
  }
  Cholesky llt;
  if (!try_cholesky(g.lambda, llt)) {
    throw Error(ErrorCode::kImproperMessage, "precision is not Hermitian positive definite");
  }
  GaussianMoment out;
  out.cov = hermitian_part(llt.solve(identity(g.dim())));
  out.mean = llt.solve(g.gamma);
  return out;
}

ProductResult gaussian_product(const GaussianMoment& a, const GaussianMoment& b) {
  require_same_dim(a.dim(), b.dim(), "gaussian_product");
  const GaussianNatural na = natural_from_moment(a);
  const GaussianNatural nb = natural_from_moment(b);
  GaussianNatural sum{na.gamma + nb.gamma, hermitian_part(na.lambda + nb.lambda)};

  ProductResult out;
  out.g = moment_from_natural(sum);
  out.log_scale = gaussian_log_density_at_zero(a.mean - b.mean, hermitian_part(a.cov + b.cov));
  out.scale = std::exp(out.log_scale);
  return out;
}

GaussianNatural gaussian_quotient(const GaussianNatural& num, const GaussianNatural& den) {
  require_same_dim(num.dim(), den.dim(), "gaussian_quotient");
  return {num.gamma - den.gamma, hermitian_part(num.lambda - den.lambda)};
}

GaussianMoment gaussian_scale(const GaussianMoment& g, Complex c) {
  if (c == Complex(0.0, 0.0)) throw Error(ErrorCode::kZeroScale, "scale factor is zero");
  return {c * g.mean, std::norm(c) * g.cov};
}

double gaussian_log_density(const CVector& x, const GaussianMoment& g) {
  require_same_dim(static_cast<int>(x.size()), g.dim(), "gaussian_log_density");
  require_square(g.cov, g.dim(), "gaussian_log_density");
  Cholesky llt;
  if (!try_cholesky(g.cov, llt)) {
    throw Error(ErrorCode::kSingularCovariance, "density of an improper Gaussian");
  }
  const CVector w = llt.matrixL().solve(CVector(x - g.mean));
  return -g.dim() * std::log(std::numbers::pi) - log_det_from_cholesky(llt) - w.squaredNorm();
}

double gaussian_density(const CVector& x, const GaussianMoment& g) {
  return std::exp(gaussian_log_density(x, g));
}

double gaussian_log_density_at_zero(const CVector& mean, const CMatrix& cov) {
  return gaussian_log_density(CVector::Zero(mean.size()), GaussianMoment{mean, cov});
}

MixtureMoments mixture_moments(const GaussianMixture& m) {
  if (m.weights.size() != m.components.size() || m.components.empty()) {
    throw Error(ErrorCode::kDimensionMismatch, "mixture weights and components differ in count");
  }
  std::vector<double> logw(m.weights.size());
  for (std::size_t i = 0; i < m.weights.size(); ++i) {
    const double w = m.weights[i];
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(ErrorCode::kAllZeroWeights, "mixture weights must be finite and nonnegative");
    }
    logw[i] = w > 0.0 ? std::log(w) : -std::numeric_limits<double>::infinity();
  }
  return mixture_moments_log(logw, m.components);
}

MixtureMoments mixture_moments_log(std::span<const double> log_weights,
                                   std::span<const GaussianMoment> components) {
  if (log_weights.size() != components.size() || components.empty()) {
    throw Error(ErrorCode::kDimensionMismatch, "mixture weights and components differ in count");
  }
  const int n = components.front().dim();
  double max_lw = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < components.size(); ++i) {
    require_same_dim(components[i].dim(), n, "mixture_moments");
    if (std::isnan(log_weights[i]) || log_weights[i] == std::numeric_limits<double>::infinity()) {
      throw Error(ErrorCode::kAllZeroWeights, "mixture log-weight is NaN or +inf");
    }
    max_lw = std::max(max_lw, log_weights[i]);
  }
  if (!std::isfinite(max_lw)) throw Error(ErrorCode::kAllZeroWeights, "all mixture weights are zero");

  double total = 0.0;
  CVector mean = CVector::Zero(n);
  CMatrix second = CMatrix::Zero(n, n);
  for (std::size_t i = 0; i < components.size(); ++i) {
    const double w = std::exp(log_weights[i] - max_lw);
    if (w == 0.0) continue;
    const GaussianMoment& c = components[i];
    total += w;
    mean += w * c.mean;
    second += w * (c.cov + c.mean * c.mean.adjoint());
  }
  MixtureMoments out;
  out.log_z = max_lw + std::log(total);
  out.z = std::exp(out.log_z);
  out.mean = mean / total;
  out.cov = hermitian_part(second / total - out.mean * out.mean.adjoint());
  return out;
}

GaussianNatural damp_natural(const GaussianNatural& old_msg, const GaussianNatural& new_msg,
                             double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw Error(ErrorCode::kEtaOutOfRange, "damping factor must lie in [0, 1]");
  }
  require_same_dim(old_msg.dim(), new_msg.dim(), "damp_natural");
  if (eta == 1.0) return new_msg;
  if (eta == 0.0) return old_msg;
  return {eta * new_msg.gamma + (1.0 - eta) * old_msg.gamma,
          eta * new_msg.lambda + (1.0 - eta) * old_msg.lambda};
}

}  // namespace jacdep
