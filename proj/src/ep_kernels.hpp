// SPDX-License-Identifier: Apache-2.0
//
// Per-edge building blocks shared by the pilot-only and the joint message
// passing: symbol-conditioned and activity-conditioned Gaussian products,
// the tilted-distribution moments, the PD-guarded quotient and damping.
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "categorical.hpp"
#include "edge_state.hpp"
#include "gaussian.hpp"

namespace jacdep {

struct EpOptions {
  double eta = 0.5;
  int i_max = 20;
  bool damp_first_iteration = false;
  bool pc_correction = false;
  bool pc_xi_of_interferer = false;
};

/// For each hypothesis x: theta(x) = CN(0 | mu_y - x mu_g, C_y + |x|^2 C_g) and
/// the Gaussian CN(z | mu_y, C_y) CN(z | x mu_g, |x|^2 C_g) / theta(x).
/// Hypotheses with equal |x|^2 share one covariance.
struct SymbolConditioned {
  using MeanBlock =
      Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxSupport>;
  int count = 0;
  Complex symbol[kMaxSupport];
  double log_theta[kMaxSupport];
  int cov_of[kMaxSupport];
  MeanBlock means;  // N x count
  std::vector<CMatrix> covs;

  GaussianMoment post(int i) const { return {means.col(i), covs[static_cast<std::size_t>(cov_of[i])]}; }
};

/// y_msg must have PD covariance; g_msg may be a point mass.
SymbolConditioned symbol_conditioned(const GaussianMoment& y_msg, const GaussianMoment& g_msg,
                                     std::span<const Complex> symbols);

/// Moments of sum_x w(x) theta(x) post(x), with log w given per hypothesis.
MixtureMoments tilted_z_moments(const SymbolConditioned& scm, std::span<const double> log_w);
/// Same mixture seen through g = z / x.
MixtureMoments tilted_g_moments(const SymbolConditioned& scm, std::span<const double> log_w);

/// vartheta(0) = CN(0 | mu_g, C_g), vartheta(1) = CN(0 | mu_g - mu_h, C_g + C_h) and
/// the active-branch Gaussian CN(.|mu_g, C_g) CN(.|mu_h, C_h) / vartheta(1).
struct ActivityConditioned {
  double log_vartheta0 = 0.0;
  double log_vartheta1 = 0.0;
  GaussianMoment active;
};

/// g_msg must have PD covariance; h_prior may be singular.
ActivityConditioned activity_conditioned(const GaussianMoment& g_msg, const GaussianMoment& h_prior);

/// Two-component mixture: u_msg(0) vartheta(0) inactive + u_msg(1) vartheta(1) active.
MixtureMoments bernoulli_gaussian_moments(const ActivityConditioned& ac,
                                          const CategoricalMessage& u_msg,
                                          const GaussianMoment& inactive);

/// natural(tilted) - cavity, or nothing when the tilted covariance or the
/// resulting precision is not Hermitian PD.
std::optional<GaussianNatural> guarded_quotient(const GaussianMoment& tilted,
                                                const GaussianNatural& cavity);

/// Writes eta * fresh + (1 - eta) * old into edge i. An uninformative old value
/// (or one without natural form) is replaced outright unless damp_uninformative.
void damp_into(GaussianEdges& edges, int i, const GaussianNatural& fresh, double eta,
               bool damp_uninformative);
void damp_into(CategoricalMessage& old_msg, const CategoricalMessage& fresh, double eta,
               bool damp_uninformative);

/// Pilot-contamination covariance term for user k at AP l, channel use t.
CMatrix pilot_contamination_term(const NetworkScenario& s, int l, int k, int t,
                                 bool xi_of_interferer);

}  // namespace jacdep
