// SPDX-License-Identifier: Apache-2.0
//
// Circularly-symmetric complex Gaussians in moment form (mean, covariance) and
// natural form (transformed mean gamma = C^-1 mu, precision Lambda = C^-1),
// together with the product/quotient/scaling lemmas and mixture moment
// matching that every message update is assembled from.
#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace jacdep {

/// Largest supported antenna count per access point.
inline constexpr int kMaxDim = 8;

using Complex = std::complex<double>;
// Runtime-sized with a compile-time bound, so temporaries never hit the heap.
using CVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using CMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;

inline constexpr double kHermitianTol = 1e-12;

struct GaussianMoment {
  CVector mean;
  CMatrix cov;

  int dim() const { return static_cast<int>(mean.size()); }
  static GaussianMoment standard(int n);
};

struct GaussianNatural {
  CVector gamma;
  CMatrix lambda;

  int dim() const { return static_cast<int>(gamma.size()); }
  /// Zero mean, zero precision: the uninformative message.
  static GaussianNatural zero(int n);
};

/// Weighted sum of Gaussians. Component covariances only need to be PSD: a
/// zero-covariance component is a point mass at its mean.
struct GaussianMixture {
  std::vector<double> weights;
  std::vector<GaussianMoment> components;
};

struct MixtureMoments {
  double z = 0.0;      // total weight
  double log_z = 0.0;  // log of total weight (exact when built from log weights)
  CVector mean;
  CMatrix cov;
};

struct ProductResult {
  GaussianMoment g;
  double scale = 0.0;      // CN(0 | mu1 - mu2, C1 + C2)
  double log_scale = 0.0;
};

bool is_hermitian(const CMatrix& m, double rel_tol = kHermitianTol);
/// Hermitian within tolerance and a Cholesky factorization with positive pivots exists.
bool is_hermitian_pd(const CMatrix& m);
/// (m + m^H) / 2
CMatrix hermitian_part(const CMatrix& m);

GaussianNatural natural_from_moment(const GaussianMoment& g);
GaussianMoment moment_from_natural(const GaussianNatural& g);

ProductResult gaussian_product(const GaussianMoment& a, const GaussianMoment& b);
GaussianNatural gaussian_quotient(const GaussianNatural& num, const GaussianNatural& den);
/// Distribution of c * x for x ~ g.
GaussianMoment gaussian_scale(const GaussianMoment& g, Complex c);

double gaussian_density(const CVector& x, const GaussianMoment& g);
double gaussian_log_density(const CVector& x, const GaussianMoment& g);
/// log CN(0 | mean, cov), the evidence term used by theta and vartheta.
double gaussian_log_density_at_zero(const CVector& mean, const CMatrix& cov);

MixtureMoments mixture_moments(const GaussianMixture& m);
/// Same as mixture_moments but with log-domain weights (max-shifted before
/// exponentiation); -inf entries drop their component.
MixtureMoments mixture_moments_log(std::span<const double> log_weights,
                                   std::span<const GaussianMoment> components);

GaussianNatural damp_natural(const GaussianNatural& old_msg, const GaussianNatural& new_msg,
                             double eta);

}  // namespace jacdep
