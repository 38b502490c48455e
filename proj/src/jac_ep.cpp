// SPDX-License-Identifier: Apache-2.0
#include "jac_ep.hpp"

#include <cmath>

#include "error.hpp"

namespace jacdep {
namespace {

CategoricalMessage bernoulli(double lambda) {
  const double w[2] = {1.0 - lambda, lambda};
  return CategoricalMessage::from_weights(w);
}

void check_state(const EdgeStateJAC& st, const NetworkScenario& s) {
  if (st.L != s.L || st.K != s.K || st.N != s.N || st.Tp != s.Tp) {
    throw Error(ErrorCode::kConfigMismatch, "edge state does not match the scenario");
  }
}

}  // namespace

EpOptions jac_options(const SimConfig& config) {
  EpOptions o;
  o.eta = config.eta;
  o.i_max = config.jac_i_max;
  o.damp_first_iteration = config.damp_first_iteration;
  o.pc_correction = config.pc_correction;
  o.pc_xi_of_interferer = config.pc_xi_of_interferer;
  return o;
}

GaussianNatural jac_update_g_to_psi_y(const EdgeStateJAC& st, int l, int k, int t) {
  const int lk = st.lk(l, k);
  GaussianNatural out{st.gf_to_g.gamma(lk), st.gf_to_g.lambda(lk)};
  for (int tp = 0; tp < st.Tp; ++tp) {
    if (tp == t) continue;
    const int e = st.lkt(l, k, tp);
    out.gamma += st.yf_to_g.gamma(e);
    out.lambda += st.yf_to_g.lambda(e);
  }
  return out;
}

GaussianMoment jac_update_psi_y_to_g(const EdgeStateJAC& st, const NetworkScenario& s, int l, int k,
                                     int t, bool pc_correction, bool xi_of_interferer) {
  const Complex xk = s.pilots.symbols(k, t);
  if (xk == Complex(0.0)) throw Error(ErrorCode::kZeroPilotSymbol, "pilot symbol is zero");
  CVector mu = s.received(l, t);
  CMatrix cov = s.sigma_n2 * CMatrix::Identity(s.N, s.N);
  for (int kp = 0; kp < s.K; ++kp) {
    if (kp == k) continue;
    const int e = st.lkt(l, kp, t);
    if (!st.g_to_yf.has_moment(e)) {
      throw Error(ErrorCode::kImproperIncoming, "g -> Psi_y has no moment form");
    }
    const Complex xp = s.pilots.symbols(kp, t);
    mu -= st.g_to_yf.mean(e) * xp;
    cov += st.g_to_yf.cov(e) * std::norm(xp);
  }
  if (pc_correction) cov += pilot_contamination_term(s, l, k, t, xi_of_interferer);
  return {mu / xk, hermitian_part(cov / std::norm(xk))};
}

GaussianNatural jac_update_g_to_psi_g(const EdgeStateJAC& st, int l, int k) {
  GaussianNatural out = GaussianNatural::zero(st.N);
  for (int t = 0; t < st.Tp; ++t) {
    const int e = st.lkt(l, k, t);
    out.gamma += st.yf_to_g.gamma(e);
    out.lambda += st.yf_to_g.lambda(e);
  }
  return out;
}

std::optional<CategoricalMessage> jac_update_psi_g_to_u(const EdgeStateJAC& st,
                                                        const NetworkScenario& s, int l, int k) {
  const int lk = st.lk(l, k);
  if (!st.g_to_gf.has_moment(lk)) return std::nullopt;
  const GaussianMoment g = st.g_to_gf.moment(lk);
  const GaussianMoment h{CVector::Zero(s.N), s.correlation(l, k)};
  try {
    const ActivityConditioned ac = activity_conditioned(g, h);
    const double lw[2] = {ac.log_vartheta0, ac.log_vartheta1};
    return CategoricalMessage::from_log_weights(lw);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kImproperIncoming || e.code() == ErrorCode::kAllNegInfinity) {
      return std::nullopt;
    }
    throw;
  }
}

CategoricalMessage jac_update_u_to_psi_g(const EdgeStateJAC& st, int l, int k, double lambda) {
  std::vector<CategoricalMessage> parts;
  parts.reserve(static_cast<std::size_t>(st.L));
  parts.push_back(bernoulli(lambda));
  for (int lp = 0; lp < st.L; ++lp) {
    if (lp != l) parts.push_back(st.gf_to_u[static_cast<std::size_t>(st.lk(lp, k))]);
  }
  return categorical_product(parts, 2);
}

std::optional<GaussianNatural> jac_update_psi_g_to_g(const EdgeStateJAC& st,
                                                     const NetworkScenario& s, int l, int k) {
  const int lk = st.lk(l, k);
  if (!st.g_to_gf.has_moment(lk) || !st.g_to_gf.has_natural(lk)) return std::nullopt;
  const GaussianMoment g = st.g_to_gf.moment(lk);
  const GaussianMoment h{CVector::Zero(s.N), s.correlation(l, k)};
  try {
    const ActivityConditioned ac = activity_conditioned(g, h);
    const GaussianMoment point_mass{CVector::Zero(s.N), CMatrix::Zero(s.N, s.N)};
    const MixtureMoments mm =
        bernoulli_gaussian_moments(ac, st.u_to_gf[static_cast<std::size_t>(lk)], point_mass);
    return guarded_quotient({mm.mean, mm.cov}, st.g_to_gf.natural(lk));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kImproperIncoming || e.code() == ErrorCode::kAllZeroWeights ||
        e.code() == ErrorCode::kSingularCovariance) {
      return std::nullopt;
    }
    throw;
  }
}

void jac_sweep(EdgeStateJAC& st, const NetworkScenario& s, const EpOptions& opt) {
  check_state(st, s);
  const bool d0 = opt.damp_first_iteration;
  // Psi_y -> g
  for (int l = 0; l < s.L; ++l) {
    for (int k = 0; k < s.K; ++k) {
      for (int t = 0; t < s.Tp; ++t) {
        const GaussianMoment m =
            jac_update_psi_y_to_g(st, s, l, k, t, opt.pc_correction, opt.pc_xi_of_interferer);
        damp_into(st.yf_to_g, st.lkt(l, k, t), natural_from_moment(m), opt.eta, d0);
      }
    }
  }
  // g -> Psi_g
  for (int l = 0; l < s.L; ++l) {
    for (int k = 0; k < s.K; ++k) st.g_to_gf.set_natural(st.lk(l, k), jac_update_g_to_psi_g(st, l, k));
  }
  // Psi_g -> u
  for (int l = 0; l < s.L; ++l) {
    for (int k = 0; k < s.K; ++k) {
      if (auto m = jac_update_psi_g_to_u(st, s, l, k)) {
        damp_into(st.gf_to_u[static_cast<std::size_t>(st.lk(l, k))], *m, opt.eta, d0);
      }
    }
  }
  // u -> Psi_g
  std::vector<CategoricalMessage> fresh(st.u_to_gf.size());
  for (int l = 0; l < s.L; ++l) {
    for (int k = 0; k < s.K; ++k) {
      fresh[static_cast<std::size_t>(st.lk(l, k))] = jac_update_u_to_psi_g(st, l, k, s.lambda);
    }
  }
  st.u_to_gf = std::move(fresh);
  // Psi_g -> g, guarded
  for (int l = 0; l < s.L; ++l) {
    for (int k = 0; k < s.K; ++k) {
      if (auto m = jac_update_psi_g_to_g(st, s, l, k)) damp_into(st.gf_to_g, st.lk(l, k), *m, opt.eta, d0);
    }
  }
  // g -> Psi_y; a point-mass Psi_g -> g passes through unchanged.
  for (int l = 0; l < s.L; ++l) {
    for (int k = 0; k < s.K; ++k) {
      const int lk = st.lk(l, k);
      for (int t = 0; t < s.Tp; ++t) {
        const int e = st.lkt(l, k, t);
        if (st.gf_to_g.has_natural(lk)) {
          st.g_to_yf.set_natural(e, jac_update_g_to_psi_y(st, l, k, t));
        } else {
          st.g_to_yf.set_moment(e, st.gf_to_g.moment(lk));
        }
      }
    }
  }
}

JacResult jac_estimate(const EdgeStateJAC& st, const NetworkScenario& s) {
  check_state(st, s);
  JacResult r;
  r.u_hat.assign(static_cast<std::size_t>(s.K), 0);
  r.h_hat.assign(static_cast<std::size_t>(s.L * s.K), CVector::Zero(s.N));
  r.priors.L = s.L;
  r.priors.K = s.K;
  r.priors.N = s.N;
  const CategoricalMessage prior = bernoulli(s.lambda);
  for (int k = 0; k < s.K; ++k) {
    std::vector<CategoricalMessage> parts{prior};
    for (int l = 0; l < s.L; ++l) parts.push_back(st.gf_to_u[static_cast<std::size_t>(st.lk(l, k))]);
    CategoricalMessage p = categorical_product(parts, 2);
    r.u_hat[static_cast<std::size_t>(k)] = p.log_prob(1) > p.log_prob(0) ? 1 : 0;
    r.p_hat_u.push_back(p);
  }
  r.priors.activity = r.p_hat_u;
  r.priors.channel.reserve(static_cast<std::size_t>(s.L * s.K));
  for (int l = 0; l < s.L; ++l) {
    for (int k = 0; k < s.K; ++k) {
      const int lk = st.lk(l, k);
      const CMatrix& xi = s.correlation(l, k);
      GaussianMoment fallback{CVector::Zero(s.N), s.lambda * xi};
      GaussianMoment post = fallback;
      if (st.g_to_gf.has_moment(lk)) {
        try {
          const ActivityConditioned ac =
              activity_conditioned(st.g_to_gf.moment(lk), {CVector::Zero(s.N), xi});
          const MixtureMoments mm = bernoulli_gaussian_moments(
              ac, st.u_to_gf[static_cast<std::size_t>(lk)], {CVector::Zero(s.N), xi});
          r.h_hat[static_cast<std::size_t>(lk)] = mm.mean;
          if (is_hermitian_pd(mm.cov) && mm.mean.allFinite()) post = {mm.mean, mm.cov};
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kImproperIncoming && e.code() != ErrorCode::kAllZeroWeights) throw;
        }
      }
      r.priors.channel.push_back(post);
    }
  }
  return r;
}

JacResult jac_ep_run(const NetworkScenario& s, const EpOptions& opt) {
  if (!(opt.eta >= 0.0 && opt.eta <= 1.0)) throw Error(ErrorCode::kEtaOutOfRange, "eta outside [0, 1]");
  if (opt.i_max < 1) throw Error(ErrorCode::kConfigMismatch, "i_max must be positive");
  if (s.Y.size() != static_cast<std::size_t>(s.L) || s.pilots.symbols.cols() != s.Tp) {
    throw Error(ErrorCode::kConfigMismatch, "scenario lacks pilot observations");
  }
  EdgeStateJAC st = init_edge_state_jac(s);
  for (int i = 0; i < opt.i_max; ++i) jac_sweep(st, s, opt);
  return jac_estimate(st, s);
}

}  // namespace jacdep
