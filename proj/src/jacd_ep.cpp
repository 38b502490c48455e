// SPDX-License-Identifier: Apache-2.0
#include "jacd_ep.hpp"

#include <cmath>

#include "error.hpp"

namespace jacdep {
namespace {

bool recoverable(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kImproperIncoming:
    case ErrorCode::kImproperMessage:
    case ErrorCode::kSingularCovariance:
    case ErrorCode::kAllZeroWeights:
    case ErrorCode::kAllNegInfinity:
      return true;
    default:
      return false;
  }
}

void check_state(const EdgeStateJACD& st, const NetworkScenario& s) {
  if (st.L != s.L || st.K != s.K || st.N != s.N || st.Tp != s.Tp || st.Td != s.Td) {
    throw Error(ErrorCode::kConfigMismatch, "edge state does not match the scenario");
  }
}

}  // namespace

EpOptions jacd_options(const SimConfig& config) {
  EpOptions o;
  o.eta = config.eta;
  o.i_max = config.i_max;
  o.damp_first_iteration = config.damp_first_iteration;
  o.pc_correction = config.pc_correction_jacd;
  o.pc_xi_of_interferer = config.pc_xi_of_interferer;
  return o;
}

std::int64_t fronthaul_load(int L, int K, int Td, int M) {
  return 2LL * L * K * (static_cast<std::int64_t>(Td) * (M - 1) + 1);
}

SymbolConditioned jacd_symbol_conditioned(const EdgeStateJACD& st, const NetworkScenario& s, int l,
                                          int k, int t, std::vector<double>& log_w) {
  const int e = st.lkt(l, k, t);
  const GaussianMoment y = st.y_to_z.moment(e);
  if (!st.g_to_zf.has_moment(e)) {
    throw Error(ErrorCode::kImproperIncoming, "g -> Psi_z has no moment form");
  }
  const GaussianMoment g = st.g_to_zf.moment(e);
  if (t < st.Tp) {
    const Complex xp = s.pilots.symbols(k, t);
    log_w.assign(1, 0.0);
    return symbol_conditioned(y, g, std::span<const Complex>(&xp, 1));
  }
  const CategoricalMessage& nu = st.x_to_zf[static_cast<std::size_t>(st.lkd(l, k, t))];
  log_w.resize(static_cast<std::size_t>(nu.size()));
  for (int i = 0; i < nu.size(); ++i) log_w[static_cast<std::size_t>(i)] = nu.log_prob(i);
  const Constellation c = s.constellation();
  return symbol_conditioned(y, g, c.points());
}

GaussianMoment jacd_update_psi_y_to_z(const EdgeStateJACD& st, const NetworkScenario& s, int l, int k,
                                      int t, const EpOptions& opt) {
  CVector mu = s.received(l, t);
  CMatrix cov = s.sigma_n2 * CMatrix::Identity(s.N, s.N);
  for (int kp = 0; kp < s.K; ++kp) {
    if (kp == k) continue;
    const int e = st.lkt(l, kp, t);
    if (!st.zf_to_z.has_moment(e)) {
      throw Error(ErrorCode::kImproperIncoming, "Psi_z -> z has no moment form");
    }
    mu -= st.zf_to_z.mean(e);
    cov += st.zf_to_z.cov(e);
  }
  if (opt.pc_correction && t < s.Tp) cov += pilot_contamination_term(s, l, k, t, opt.pc_xi_of_interferer);
  return {mu, hermitian_part(cov)};
}

std::optional<CategoricalMessage> jacd_update_psi_z_to_x(const EdgeStateJACD& st,
                                                         const NetworkScenario& s, int l, int k,
                                                         int t) {
  std::vector<double> log_w;
  try {
    const SymbolConditioned scm = jacd_symbol_conditioned(st, s, l, k, t, log_w);
    return CategoricalMessage::from_log_weights(
        std::span<const double>(scm.log_theta, static_cast<std::size_t>(scm.count)));
  } catch (const Error& e) {
    if (recoverable(e)) return std::nullopt;
    throw;
  }
}

CategoricalMessage jacd_update_x_to_psi_z(const EdgeStateJACD& st, int l, int k, int t) {
  std::vector<CategoricalMessage> parts;
  parts.reserve(static_cast<std::size_t>(st.L));
  for (int lp = 0; lp < st.L; ++lp) {
    if (lp != l) parts.push_back(st.zf_to_x[static_cast<std::size_t>(st.lkd(lp, k, t))]);
  }
  return categorical_product(parts, st.M);
}

std::optional<GaussianNatural> jacd_update_psi_z_to_g(const EdgeStateJACD& st,
                                                      const NetworkScenario& s, int l, int k, int t) {
  const int e = st.lkt(l, k, t);
  if (!st.g_to_zf.has_natural(e)) return std::nullopt;
  std::vector<double> log_w;
  try {
    const SymbolConditioned scm = jacd_symbol_conditioned(st, s, l, k, t, log_w);
    const MixtureMoments mm = tilted_g_moments(scm, log_w);
    return guarded_quotient({mm.mean, mm.cov}, st.g_to_zf.natural(e));
  } catch (const Error& err) {
    if (recoverable(err)) return std::nullopt;
    throw;
  }
}

GaussianNatural jacd_update_g_to_psi_g(const EdgeStateJACD& st, int l, int k) {
  GaussianNatural out = GaussianNatural::zero(st.N);
  for (int t = 0; t < st.T(); ++t) {
    const int e = st.lkt(l, k, t);
    out.gamma += st.zf_to_g.gamma(e);
    out.lambda += st.zf_to_g.lambda(e);
  }
  return out;
}

std::optional<CategoricalMessage> jacd_update_psi_g_to_u(const EdgeStateJACD& st, const Priors& p,
                                                         int l, int k) {
  const int lk = st.lk(l, k);
  if (!st.g_to_gf.has_moment(lk)) return std::nullopt;
  try {
    const ActivityConditioned ac = activity_conditioned(st.g_to_gf.moment(lk), p.h(l, k));
    const double lw[2] = {ac.log_vartheta0, ac.log_vartheta1};
    return CategoricalMessage::from_log_weights(lw);
  } catch (const Error& e) {
    if (recoverable(e)) return std::nullopt;
    throw;
  }
}

CategoricalMessage jacd_update_u_to_psi_g(const EdgeStateJACD& st, const Priors& p, int l, int k) {
  std::vector<CategoricalMessage> parts;
  parts.reserve(static_cast<std::size_t>(st.L));
  parts.push_back(p.activity[static_cast<std::size_t>(k)]);
  for (int lp = 0; lp < st.L; ++lp) {
    if (lp != l) parts.push_back(st.gf_to_u[static_cast<std::size_t>(st.lk(lp, k))]);
  }
  return categorical_product(parts, 2);
}

std::optional<GaussianNatural> jacd_update_psi_g_to_g(const EdgeStateJACD& st, const Priors& p,
                                                      int l, int k) {
  const int lk = st.lk(l, k);
  if (!st.g_to_gf.has_moment(lk) || !st.g_to_gf.has_natural(lk)) return std::nullopt;
  try {
    const ActivityConditioned ac = activity_conditioned(st.g_to_gf.moment(lk), p.h(l, k));
    const GaussianMoment point_mass{CVector::Zero(st.N), CMatrix::Zero(st.N, st.N)};
    const MixtureMoments mm =
        bernoulli_gaussian_moments(ac, st.u_to_gf[static_cast<std::size_t>(lk)], point_mass);
    return guarded_quotient({mm.mean, mm.cov}, st.g_to_gf.natural(lk));
  } catch (const Error& e) {
    if (recoverable(e)) return std::nullopt;
    throw;
  }
}

std::optional<GaussianNatural> jacd_update_g_to_psi_z(const EdgeStateJACD& st, int l, int k, int t) {
  const int lk = st.lk(l, k);
  if (!st.gf_to_g.has_natural(lk)) return std::nullopt;
  GaussianNatural out{st.gf_to_g.gamma(lk), st.gf_to_g.lambda(lk)};
  for (int tp = 0; tp < st.T(); ++tp) {
    if (tp == t) continue;
    const int e = st.lkt(l, k, tp);
    out.gamma += st.zf_to_g.gamma(e);
    out.lambda += st.zf_to_g.lambda(e);
  }
  return out;
}

std::optional<GaussianNatural> jacd_update_psi_z_to_z(const EdgeStateJACD& st,
                                                      const NetworkScenario& s, int l, int k, int t) {
  const int e = st.lkt(l, k, t);
  std::vector<double> log_w;
  try {
    const SymbolConditioned scm = jacd_symbol_conditioned(st, s, l, k, t, log_w);
    const MixtureMoments mm = tilted_z_moments(scm, log_w);
    return guarded_quotient({mm.mean, mm.cov}, st.y_to_z.natural(e));
  } catch (const Error& err) {
    if (recoverable(err)) return std::nullopt;
    throw;
  }
}

std::int64_t jacd_sweep(EdgeStateJACD& st, const NetworkScenario& s, const Priors& p,
                        const EpOptions& opt) {
  check_state(st, s);
  const bool d0 = opt.damp_first_iteration;
  const int T = st.T();
  std::int64_t reals = 0;

  // Psi_y -> z
  for (int l = 0; l < s.L; ++l)
    for (int k = 0; k < s.K; ++k)
      for (int t = 0; t < T; ++t) {
        const GaussianMoment m = jacd_update_psi_y_to_z(st, s, l, k, t, opt);
        damp_into(st.y_to_z, st.lkt(l, k, t), natural_from_moment(m), opt.eta, d0);
      }
  // Psi_z -> x (AP to CPU)
  for (int l = 0; l < s.L; ++l)
    for (int k = 0; k < s.K; ++k)
      for (int t = s.Tp; t < T; ++t) {
        if (auto m = jacd_update_psi_z_to_x(st, s, l, k, t)) {
          damp_into(st.zf_to_x[static_cast<std::size_t>(st.lkd(l, k, t))], *m, opt.eta, d0);
        }
        reals += st.M - 1;
      }
  // x -> Psi_z (CPU to AP)
  for (int l = 0; l < s.L; ++l)
    for (int k = 0; k < s.K; ++k)
      for (int t = s.Tp; t < T; ++t) {
        st.x_to_zf[static_cast<std::size_t>(st.lkd(l, k, t))] = jacd_update_x_to_psi_z(st, l, k, t);
        reals += st.M - 1;
      }
  // Psi_z -> g, guarded
  for (int l = 0; l < s.L; ++l)
    for (int k = 0; k < s.K; ++k)
      for (int t = 0; t < T; ++t) {
        if (auto m = jacd_update_psi_z_to_g(st, s, l, k, t)) {
          damp_into(st.zf_to_g, st.lkt(l, k, t), *m, opt.eta, d0);
        }
      }
  // g -> Psi_g
  for (int l = 0; l < s.L; ++l)
    for (int k = 0; k < s.K; ++k) st.g_to_gf.set_natural(st.lk(l, k), jacd_update_g_to_psi_g(st, l, k));
  // Psi_g -> u (AP to CPU)
  for (int l = 0; l < s.L; ++l)
    for (int k = 0; k < s.K; ++k) {
      if (auto m = jacd_update_psi_g_to_u(st, p, l, k)) {
        damp_into(st.gf_to_u[static_cast<std::size_t>(st.lk(l, k))], *m, opt.eta, d0);
      }
      reals += 1;
    }
  // u -> Psi_g (CPU to AP)
  {
    std::vector<CategoricalMessage> fresh(st.u_to_gf.size());
    for (int l = 0; l < s.L; ++l)
      for (int k = 0; k < s.K; ++k) {
        fresh[static_cast<std::size_t>(st.lk(l, k))] = jacd_update_u_to_psi_g(st, p, l, k);
        reals += 1;
      }
    st.u_to_gf = std::move(fresh);
  }
  // Psi_g -> g, guarded
  for (int l = 0; l < s.L; ++l)
    for (int k = 0; k < s.K; ++k) {
      if (auto m = jacd_update_psi_g_to_g(st, p, l, k)) damp_into(st.gf_to_g, st.lk(l, k), *m, opt.eta, d0);
    }
  // g -> Psi_z
  for (int l = 0; l < s.L; ++l)
    for (int k = 0; k < s.K; ++k)
      for (int t = 0; t < T; ++t) {
        const int e = st.lkt(l, k, t);
        if (auto m = jacd_update_g_to_psi_z(st, l, k, t)) {
          st.g_to_zf.set_natural(e, *m);
        } else {
          st.g_to_zf.set_moment(e, st.gf_to_g.moment(st.lk(l, k)));
        }
      }
  // Psi_z -> z, guarded
  for (int l = 0; l < s.L; ++l)
    for (int k = 0; k < s.K; ++k)
      for (int t = 0; t < T; ++t) {
        if (auto m = jacd_update_psi_z_to_z(st, s, l, k, t)) {
          damp_into(st.zf_to_z, st.lkt(l, k, t), *m, opt.eta, d0);
        }
      }
  return reals;
}

JacdResult jacd_estimate(const EdgeStateJACD& st, const NetworkScenario& s, const Priors& p) {
  check_state(st, s);
  JacdResult r;
  r.u_hat.assign(static_cast<std::size_t>(s.K), 0);
  for (int k = 0; k < s.K; ++k) {
    std::vector<CategoricalMessage> parts{p.activity[static_cast<std::size_t>(k)]};
    for (int l = 0; l < s.L; ++l) parts.push_back(st.gf_to_u[static_cast<std::size_t>(st.lk(l, k))]);
    CategoricalMessage post = categorical_product(parts, 2);
    r.u_hat[static_cast<std::size_t>(k)] = post.log_prob(1) > post.log_prob(0) ? 1 : 0;
    r.p_hat_u.push_back(post);
  }

  r.h_hat.reserve(static_cast<std::size_t>(s.L * s.K));
  for (int l = 0; l < s.L; ++l) {
    for (int k = 0; k < s.K; ++k) {
      const int lk = st.lk(l, k);
      const GaussianMoment& prior = p.h(l, k);
      CVector h = prior.mean;
      if (st.g_to_gf.has_moment(lk)) {
        try {
          const ActivityConditioned ac = activity_conditioned(st.g_to_gf.moment(lk), prior);
          h = bernoulli_gaussian_moments(ac, st.u_to_gf[static_cast<std::size_t>(lk)], prior).mean;
        } catch (const Error& e) {
          if (!recoverable(e)) throw;
        }
      }
      r.h_hat.push_back(h);
    }
  }

  r.x_hat = Eigen::MatrixXi::Zero(s.K, s.Td);
  for (int k = 0; k < s.K; ++k) {
    for (int t = s.Tp; t < st.T(); ++t) {
      std::vector<CategoricalMessage> parts;
      for (int l = 0; l < s.L; ++l) parts.push_back(st.zf_to_x[static_cast<std::size_t>(st.lkd(l, k, t))]);
      CategoricalMessage post = categorical_product(parts, st.M);
      r.x_hat(k, t - s.Tp) = post.argmax();
      r.p_hat_x.push_back(post);
    }
  }
  r.fronthaul_reals_per_iter = fronthaul_load(s.L, s.K, s.Td, st.M);
  return r;
}

JacdResult jacd_run(const NetworkScenario& s, const Priors& p, const EpOptions& opt) {
  if (!(opt.eta >= 0.0 && opt.eta <= 1.0)) throw Error(ErrorCode::kEtaOutOfRange, "eta outside [0, 1]");
  if (opt.i_max < 1) throw Error(ErrorCode::kConfigMismatch, "i_max must be positive");
  if (s.Y.size() != static_cast<std::size_t>(s.L)) {
    throw Error(ErrorCode::kConfigMismatch, "scenario has no observations");
  }
  EdgeStateJACD st = init_edge_state_jacd(p, s);
  std::int64_t total = 0;
  std::int64_t last = 0;
  for (int i = 0; i < opt.i_max; ++i) {
    last = jacd_sweep(st, s, p, opt);
    total += last;
  }
  JacdResult r = jacd_estimate(st, s, p);
  // Reported from the runtime counter; the closed form is checked against it in tests.
  r.fronthaul_reals_per_iter = last;
  r.fronthaul_reals_total = total;
  return r;
}

}  // namespace jacdep
