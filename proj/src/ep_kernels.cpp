// SPDX-License-Identifier: Apache-2.0
#include "ep_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "error.hpp"

namespace jacdep {
namespace {

using Cholesky = Eigen::LLT<CMatrix>;

bool factor_pd(const CMatrix& m, Cholesky& llt) {
  if (!m.allFinite()) return false;
  llt.compute(m);
  if (llt.info() != Eigen::Success) return false;
  const auto d = llt.matrixLLT().diagonal();
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (!(d(i).real() > 0.0)) return false;
  }
  return true;
}

double log_density_zero(const Cholesky& llt, const CVector& mean) {
  const auto d = llt.matrixLLT().diagonal();
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < d.size(); ++i) log_det += 2.0 * std::log(d(i).real());
  const CVector w = llt.matrixL().solve(mean);
  return -static_cast<double>(mean.size()) * std::log(std::numbers::pi) - log_det - w.squaredNorm();
}

// CN(.|a, A) CN(.|b, B) = CN(0|a - b, A + B) CN(.|m, C); A must be PD, B PSD.
// Written as C = A S^-1 B, m = B S^-1 a + A S^-1 b so a singular B is exact.
struct PairProduct {
  double log_scale;
  GaussianMoment g;
};

PairProduct pair_product(const CVector& a, const CMatrix& A, const CVector& b, const CMatrix& B) {
  const CMatrix S = hermitian_part(A + B);
  Cholesky llt;
  if (!factor_pd(S, llt)) {
    throw Error(ErrorCode::kImproperIncoming, "incoming covariances do not sum to a PD matrix");
  }
  PairProduct out;
  out.log_scale = log_density_zero(llt, CVector(a - b));
  const CMatrix sib = llt.solve(B);
  out.g.cov = hermitian_part(A * sib);
  out.g.mean = sib.adjoint() * a + A * llt.solve(b);
  return out;
}

}  // namespace

SymbolConditioned symbol_conditioned(const GaussianMoment& y_msg, const GaussianMoment& g_msg,
                                     std::span<const Complex> symbols) {
  if (symbols.empty() || symbols.size() > static_cast<std::size_t>(kMaxSupport)) {
    throw Error(ErrorCode::kSupportMismatch, "symbol hypotheses out of range");
  }
  const int n = y_msg.dim();
  if (n != g_msg.dim()) throw Error(ErrorCode::kDimensionMismatch, "symbol_conditioned dimensions differ");
  SymbolConditioned out;
  out.count = static_cast<int>(symbols.size());
  out.means.resize(n, out.count);
  const double log_pi_n = n * std::log(std::numbers::pi);

  // Hypotheses with equal |x|^2 share S = C_y + |x|^2 C_g, its factor and the
  // conditioned covariance; only the means and theta differ.
  double modulus = -1.0;
  Cholesky llt;
  double log_det = 0.0;
  CVector wa, wg, base_mean, gain;
  double cy = 0.0, cg = 0.0, sv = 0.0;
  for (int i = 0; i < out.count; ++i) {
    const Complex x = symbols[static_cast<std::size_t>(i)];
    if (x == Complex(0.0)) throw Error(ErrorCode::kZeroPilotSymbol, "zero symbol hypothesis");
    const double m2 = std::norm(x);
    if (m2 != modulus) {
      modulus = m2;
      if (n == 1) {
        // Scalar antennas: same formulas without the factorization.
        cy = y_msg.cov(0, 0).real();
        cg = g_msg.cov(0, 0).real();
        sv = cy + m2 * cg;
        if (!(sv > 0.0) || !std::isfinite(sv)) {
          throw Error(ErrorCode::kImproperIncoming, "incoming covariances do not sum to a PD matrix");
        }
        log_det = std::log(sv);
        out.covs.push_back(CMatrix::Constant(1, 1, Complex(cy * m2 * cg / sv)));
      } else {
        const CMatrix B = m2 * g_msg.cov;
        if (!factor_pd(hermitian_part(y_msg.cov + B), llt)) {
          throw Error(ErrorCode::kImproperIncoming, "incoming covariances do not sum to a PD matrix");
        }
        const auto d = llt.matrixLLT().diagonal();
        log_det = 0.0;
        for (Eigen::Index j = 0; j < d.size(); ++j) log_det += 2.0 * std::log(d(j).real());
        const CMatrix sib = llt.solve(B);
        out.covs.push_back(hermitian_part(y_msg.cov * sib));
        base_mean = sib.adjoint() * y_msg.mean;
        gain = y_msg.cov * llt.solve(g_msg.mean);
        wa = llt.matrixL().solve(y_msg.mean);
        wg = llt.matrixL().solve(g_msg.mean);
      }
    }
    out.symbol[i] = x;
    out.cov_of[i] = static_cast<int>(out.covs.size()) - 1;
    if (n == 1) {
      const Complex my = y_msg.mean(0);
      const Complex mg = g_msg.mean(0);
      out.log_theta[i] = -log_pi_n - log_det - std::norm(my - x * mg) / sv;
      out.means(0, i) = (m2 * cg * my + cy * x * mg) / sv;
    } else {
      out.log_theta[i] = -log_pi_n - log_det - (wa - x * wg).squaredNorm();
      out.means.col(i) = base_mean + x * gain;
    }
  }
  return out;
}

namespace {

// Moment matching over the hypotheses, optionally mapped through g = z / x.
MixtureMoments symbol_mixture(const SymbolConditioned& scm, std::span<const double> log_w,
                              bool per_channel) {
  if (log_w.size() != static_cast<std::size_t>(scm.count)) {
    throw Error(ErrorCode::kSupportMismatch, "weights do not match the hypotheses");
  }
  double lw[kMaxSupport];
  double max_lw = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < scm.count; ++i) {
    lw[i] = log_w[static_cast<std::size_t>(i)] + scm.log_theta[i];
    if (std::isnan(lw[i]) || lw[i] == std::numeric_limits<double>::infinity()) {
      throw Error(ErrorCode::kAllZeroWeights, "mixture log-weight is NaN or +inf");
    }
    max_lw = std::max(max_lw, lw[i]);
  }
  if (!std::isfinite(max_lw)) throw Error(ErrorCode::kAllZeroWeights, "all mixture weights are zero");

  const int n = static_cast<int>(scm.means.rows());
  double total = 0.0;
  CVector mean = CVector::Zero(n);
  CMatrix second = CMatrix::Zero(n, n);
  double cov_weight[kMaxSupport] = {};
  for (int i = 0; i < scm.count; ++i) {
    const double w = std::exp(lw[i] - max_lw);
    if (w == 0.0) continue;
    total += w;
    const Complex c = per_channel ? 1.0 / scm.symbol[i] : Complex(1.0);
    const CVector m = c * scm.means.col(i);
    mean += w * m;
    second += w * (m * m.adjoint());
    cov_weight[scm.cov_of[i]] += w * std::norm(c);
  }
  for (std::size_t j = 0; j < scm.covs.size(); ++j) {
    if (cov_weight[j] != 0.0) second += cov_weight[j] * scm.covs[j];
  }
  MixtureMoments out;
  out.log_z = max_lw + std::log(total);
  out.z = std::exp(out.log_z);
  out.mean = mean / total;
  out.cov = hermitian_part(second / total - out.mean * out.mean.adjoint());
  return out;
}

}  // namespace

MixtureMoments tilted_z_moments(const SymbolConditioned& scm, std::span<const double> log_w) {
  return symbol_mixture(scm, log_w, false);
}

MixtureMoments tilted_g_moments(const SymbolConditioned& scm, std::span<const double> log_w) {
  return symbol_mixture(scm, log_w, true);
}

ActivityConditioned activity_conditioned(const GaussianMoment& g_msg, const GaussianMoment& h_prior) {
  if (g_msg.dim() != h_prior.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "activity_conditioned dimensions differ");
  }
  Cholesky llt;
  if (!factor_pd(hermitian_part(g_msg.cov), llt)) {
    throw Error(ErrorCode::kImproperIncoming, "g -> Psi_g covariance is not PD");
  }
  ActivityConditioned out;
  out.log_vartheta0 = log_density_zero(llt, g_msg.mean);
  const PairProduct p = pair_product(g_msg.mean, g_msg.cov, h_prior.mean, h_prior.cov);
  out.log_vartheta1 = p.log_scale;
  out.active = p.g;
  return out;
}

MixtureMoments bernoulli_gaussian_moments(const ActivityConditioned& ac,
                                          const CategoricalMessage& u_msg,
                                          const GaussianMoment& inactive) {
  if (u_msg.size() != 2) throw Error(ErrorCode::kSupportMismatch, "activity message must be binary");
  const double lw[2] = {u_msg.log_prob(0) + ac.log_vartheta0, u_msg.log_prob(1) + ac.log_vartheta1};
  const GaussianMoment comps[2] = {inactive, ac.active};
  return mixture_moments_log(lw, comps);
}

std::optional<GaussianNatural> guarded_quotient(const GaussianMoment& tilted,
                                                const GaussianNatural& cavity) {
  if (!is_hermitian_pd(tilted.cov)) return std::nullopt;
  GaussianNatural q = gaussian_quotient(natural_from_moment(tilted), cavity);
  if (!q.gamma.allFinite() || !is_hermitian_pd(q.lambda)) return std::nullopt;
  return q;
}

void damp_into(GaussianEdges& edges, int i, const GaussianNatural& fresh, double eta,
               bool damp_uninformative) {
  if (!edges.has_natural(i) || (!edges.informative(i) && !damp_uninformative)) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw Error(ErrorCode::kEtaOutOfRange, "eta outside [0, 1]");
    edges.set_natural(i, fresh);
    return;
  }
  edges.set_natural(i, damp_natural(edges.natural(i), fresh, eta));
}

void damp_into(CategoricalMessage& old_msg, const CategoricalMessage& fresh, double eta,
               bool damp_uninformative) {
  if (!old_msg.informative() && !damp_uninformative) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw Error(ErrorCode::kEtaOutOfRange, "eta outside [0, 1]");
    old_msg = fresh;
    return;
  }
  old_msg = damp_categorical(old_msg, fresh, eta);
}

CMatrix pilot_contamination_term(const NetworkScenario& s, int l, int k, int t,
                                 bool xi_of_interferer) {
  CMatrix acc = CMatrix::Zero(s.N, s.N);
  for (int kp : s.pilots.collisions[static_cast<std::size_t>(k)]) {
    const CMatrix& xi = s.correlation(l, xi_of_interferer ? kp : k);
    acc += std::norm(s.pilots.symbols(kp, t)) * xi;
  }
  return acc;
}

}  // namespace jacdep
