// SPDX-License-Identifier: Apache-2.0
#include "edge_state.hpp"

#include <algorithm>
#include <string>

#include "error.hpp"

namespace jacdep {

GaussianEdges::GaussianEdges(int count, int dim) : count_(count), dim_(dim) {
  if (count < 0 || dim < 1 || dim > kMaxDim) {
    throw Error(ErrorCode::kDimensionMismatch, "bad edge container shape");
  }
  const auto n = static_cast<std::size_t>(count);
  const auto d = static_cast<std::size_t>(dim);
  gamma_.assign(n * d, Complex(0.0));
  mean_.assign(n * d, Complex(0.0));
  lambda_.assign(n * d * d, Complex(0.0));
  cov_.assign(n * d * d, Complex(0.0));
  flags_.assign(n, kNatural);
}

void GaussianEdges::check(int i) const {
  if (i < 0 || i >= count_) {
    throw Error(ErrorCode::kDimensionMismatch, "edge index " + std::to_string(i) + " out of range");
  }
}

GaussianEdges::ConstVecMap GaussianEdges::gamma(int i) const {
  return ConstVecMap(gamma_.data() + idx(i) * dim_, dim_);
}
GaussianEdges::ConstMatMap GaussianEdges::lambda(int i) const {
  return ConstMatMap(lambda_.data() + idx(i) * dim_ * dim_, dim_, dim_);
}
GaussianEdges::ConstVecMap GaussianEdges::mean(int i) const {
  return ConstVecMap(mean_.data() + idx(i) * dim_, dim_);
}
GaussianEdges::ConstMatMap GaussianEdges::cov(int i) const {
  return ConstMatMap(cov_.data() + idx(i) * dim_ * dim_, dim_, dim_);
}

GaussianNatural GaussianEdges::natural(int i) const {
  check(i);
  if (!has_natural(i)) throw Error(ErrorCode::kImproperMessage, "edge has no natural form");
  return {gamma(i), lambda(i)};
}

GaussianMoment GaussianEdges::moment(int i) const {
  check(i);
  if (!has_moment(i)) throw Error(ErrorCode::kImproperMessage, "edge has no moment form");
  return {mean(i), cov(i)};
}

void GaussianEdges::set_natural(int i, const GaussianNatural& g) {
  check(i);
  if (g.dim() != dim_ || g.lambda.rows() != dim_ || g.lambda.cols() != dim_) {
    throw Error(ErrorCode::kDimensionMismatch, "natural message has the wrong dimension");
  }
  Eigen::Map<Eigen::VectorXcd>(vec_ptr(gamma_, i), dim_) = g.gamma;
  Eigen::Map<Eigen::MatrixXcd>(mat_ptr(lambda_, i), dim_, dim_) = g.lambda;
  std::uint8_t f = kNatural | kInformative;
  if (is_hermitian_pd(g.lambda)) {
    const GaussianMoment m = moment_from_natural(g);
    Eigen::Map<Eigen::VectorXcd>(vec_ptr(mean_, i), dim_) = m.mean;
    Eigen::Map<Eigen::MatrixXcd>(mat_ptr(cov_, i), dim_, dim_) = m.cov;
    f |= kMoment;
  }
  flags_[idx(i)] = f;
}

void GaussianEdges::set_moment(int i, const GaussianMoment& g) {
  check(i);
  if (g.dim() != dim_ || g.cov.rows() != dim_ || g.cov.cols() != dim_) {
    throw Error(ErrorCode::kDimensionMismatch, "moment message has the wrong dimension");
  }
  Eigen::Map<Eigen::VectorXcd>(vec_ptr(mean_, i), dim_) = g.mean;
  Eigen::Map<Eigen::MatrixXcd>(mat_ptr(cov_, i), dim_, dim_) = g.cov;
  std::uint8_t f = kMoment | kInformative;
  if (is_hermitian_pd(g.cov)) {
    const GaussianNatural n = natural_from_moment(g);
    Eigen::Map<Eigen::VectorXcd>(vec_ptr(gamma_, i), dim_) = n.gamma;
    Eigen::Map<Eigen::MatrixXcd>(mat_ptr(lambda_, i), dim_, dim_) = n.lambda;
    f |= kNatural;
  }
  flags_[idx(i)] = f;
}

void GaussianEdges::set_uninformative(int i) {
  check(i);
  Eigen::Map<Eigen::VectorXcd>(vec_ptr(gamma_, i), dim_).setZero();
  Eigen::Map<Eigen::MatrixXcd>(mat_ptr(lambda_, i), dim_, dim_).setZero();
  Eigen::Map<Eigen::VectorXcd>(vec_ptr(mean_, i), dim_).setZero();
  Eigen::Map<Eigen::MatrixXcd>(mat_ptr(cov_, i), dim_, dim_).setZero();
  flags_[idx(i)] = kNatural;
}

Priors Priors::neutral(const NetworkScenario& s) {
  Priors p;
  p.L = s.L;
  p.K = s.K;
  p.N = s.N;
  const double w[2] = {1.0 - s.lambda, s.lambda};
  const CategoricalMessage bern = CategoricalMessage::from_weights(w);
  p.activity.assign(static_cast<std::size_t>(s.K), bern);
  p.channel.reserve(static_cast<std::size_t>(s.L * s.K));
  for (int l = 0; l < s.L; ++l) {
    for (int k = 0; k < s.K; ++k) p.channel.push_back({CVector::Zero(s.N), s.correlation(l, k)});
  }
  return p;
}

GaussianMoment effective_channel_prior(double p0, double p1, const GaussianMoment& h) {
  return {p1 * h.mean, hermitian_part(p1 * (h.cov + p0 * h.mean * h.mean.adjoint()))};
}

EdgeStateJACD init_edge_state_jacd(const Priors& priors, const NetworkScenario& s) {
  if (priors.L != s.L || priors.K != s.K || priors.N != s.N ||
      priors.activity.size() != static_cast<std::size_t>(s.K) ||
      priors.channel.size() != static_cast<std::size_t>(s.L * s.K)) {
    throw Error(ErrorCode::kMissingPrior, "priors do not cover every (l, k)");
  }
  EdgeStateJACD st;
  st.L = s.L;
  st.K = s.K;
  st.N = s.N;
  st.Tp = s.Tp;
  st.Td = s.Td;
  st.M = s.constellation().size();
  const int n_lkt = s.L * s.K * st.T();
  const int n_lk = s.L * s.K;
  const int n_lkd = s.L * s.K * s.Td;
  st.y_to_z = GaussianEdges(n_lkt, s.N);
  st.zf_to_z = GaussianEdges(n_lkt, s.N);
  st.zf_to_g = GaussianEdges(n_lkt, s.N);
  st.g_to_zf = GaussianEdges(n_lkt, s.N);
  st.g_to_gf = GaussianEdges(n_lk, s.N);
  st.gf_to_g = GaussianEdges(n_lk, s.N);
  st.gf_to_u.assign(static_cast<std::size_t>(n_lk), CategoricalMessage::uniform(2));
  st.u_to_gf.assign(static_cast<std::size_t>(n_lk), CategoricalMessage::uniform(2));
  st.zf_to_x.assign(static_cast<std::size_t>(n_lkd), CategoricalMessage::uniform(st.M));
  st.x_to_zf.assign(static_cast<std::size_t>(n_lkd), CategoricalMessage::uniform(st.M));

  for (int l = 0; l < s.L; ++l) {
    for (int k = 0; k < s.K; ++k) {
      const CategoricalMessage& pu = priors.activity[static_cast<std::size_t>(k)];
      if (pu.size() != 2) throw Error(ErrorCode::kMissingPrior, "activity prior must be binary");
      const double p0 = pu.prob(0);
      const double p1 = pu.prob(1);
      const GaussianMoment& h = priors.h(l, k);
      if (h.dim() != s.N) throw Error(ErrorCode::kMissingPrior, "channel prior has wrong dimension");
      const GaussianMoment g = effective_channel_prior(p0, p1, h);
      st.gf_to_g.set_moment(st.lk(l, k), g);
      const CMatrix data_cov = hermitian_part(p1 * (h.cov + h.mean * h.mean.adjoint()) * s.sigma_x2);
      for (int t = 0; t < st.T(); ++t) {
        const int e = st.lkt(l, k, t);
        st.g_to_zf.set_moment(e, g);
        if (t < s.Tp) {
          const Complex xp = s.pilots.symbols(k, t);
          st.zf_to_z.set_moment(e, {g.mean * xp, std::norm(xp) * g.cov});
        } else {
          st.zf_to_z.set_moment(e, {CVector::Zero(s.N), data_cov});
        }
      }
    }
  }
  return st;
}

EdgeStateJAC init_edge_state_jac(const NetworkScenario& s) {
  if (s.Xi.size() != static_cast<std::size_t>(s.L * s.K) || s.L < 1 || s.K < 1) {
    throw Error(ErrorCode::kMissingScenario, "scenario lacks correlation matrices");
  }
  EdgeStateJAC st;
  st.L = s.L;
  st.K = s.K;
  st.N = s.N;
  st.Tp = s.Tp;
  const int n_lk = s.L * s.K;
  st.g_to_yf = GaussianEdges(n_lk * s.Tp, s.N);
  st.yf_to_g = GaussianEdges(n_lk * s.Tp, s.N);
  st.g_to_gf = GaussianEdges(n_lk, s.N);
  st.gf_to_g = GaussianEdges(n_lk, s.N);
  st.gf_to_u.assign(static_cast<std::size_t>(n_lk), CategoricalMessage::uniform(2));
  st.u_to_gf.assign(static_cast<std::size_t>(n_lk), CategoricalMessage::uniform(2));
  for (int l = 0; l < s.L; ++l) {
    for (int k = 0; k < s.K; ++k) {
      const GaussianMoment g{CVector::Zero(s.N), s.lambda * s.correlation(l, k)};
      st.gf_to_g.set_moment(st.lk(l, k), g);
      for (int t = 0; t < s.Tp; ++t) st.g_to_yf.set_moment(st.lkt(l, k, t), g);
    }
  }
  return st;
}

}  // namespace jacdep
