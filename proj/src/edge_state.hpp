// SPDX-License-Identifier: Apache-2.0
//
// Message containers for the two factor graphs. Gaussian edges keep both the
// natural and the moment form whenever each exists: the initial messages can
// be point masses (zero covariance), which have no natural form, and the
// uninformative messages have zero precision, which has no moment form.
#pragma once

#include <cstdint>
#include <vector>

#include "categorical.hpp"
#include "gaussian.hpp"
#include "system_model.hpp"

namespace jacdep {

class GaussianEdges {
 public:
  using ConstVecMap = Eigen::Map<const Eigen::VectorXcd>;
  using ConstMatMap = Eigen::Map<const Eigen::MatrixXcd>;

  GaussianEdges() = default;
  /// All edges start uninformative (zero mean, zero precision).
  GaussianEdges(int count, int dim);

  int size() const { return count_; }
  int dim() const { return dim_; }

  bool has_natural(int i) const { return (flags_[idx(i)] & kNatural) != 0; }
  bool has_moment(int i) const { return (flags_[idx(i)] & kMoment) != 0; }
  bool informative(int i) const { return (flags_[idx(i)] & kInformative) != 0; }

  /// Throw ImproperMessage when the requested form does not exist.
  GaussianNatural natural(int i) const;
  GaussianMoment moment(int i) const;

  ConstVecMap gamma(int i) const;
  ConstMatMap lambda(int i) const;
  ConstVecMap mean(int i) const;
  ConstMatMap cov(int i) const;

  /// Stores g and derives the moment form when the precision is PD.
  void set_natural(int i, const GaussianNatural& g);
  /// Stores g and derives the natural form when the covariance is PD.
  void set_moment(int i, const GaussianMoment& g);
  void set_uninformative(int i);

  bool operator==(const GaussianEdges&) const = default;

 private:
  static constexpr std::uint8_t kNatural = 1;
  static constexpr std::uint8_t kMoment = 2;
  static constexpr std::uint8_t kInformative = 4;

  std::size_t idx(int i) const { return static_cast<std::size_t>(i); }
  Complex* vec_ptr(std::vector<Complex>& v, int i) { return v.data() + idx(i) * dim_; }
  Complex* mat_ptr(std::vector<Complex>& v, int i) { return v.data() + idx(i) * dim_ * dim_; }
  void check(int i) const;

  int count_ = 0;
  int dim_ = 0;
  std::vector<Complex> gamma_, lambda_, mean_, cov_;
  std::vector<std::uint8_t> flags_;
};

/// Activity and channel priors handed from the pilot-only stage to the joint
/// stage. Indexing of channel is l * K + k.
struct Priors {
  int L = 0, K = 0, N = 0;
  std::vector<CategoricalMessage> activity;  // support {0, 1}
  std::vector<GaussianMoment> channel;

  double p_active(int k) const { return activity[static_cast<std::size_t>(k)].prob(1); }
  const GaussianMoment& h(int l, int k) const { return channel[static_cast<std::size_t>(l * K + k)]; }

  /// Bernoulli(lambda) activity, zero-mean channel with covariance Xi.
  static Priors neutral(const NetworkScenario& s);
};

struct EdgeStateJACD {
  int L = 0, K = 0, N = 0, Tp = 0, Td = 0, M = 0;
  // Per (l, k, t).
  GaussianEdges y_to_z;       // Psi_y -> z
  GaussianEdges zf_to_z;      // Psi_z -> z
  GaussianEdges zf_to_g;      // Psi_z -> g
  GaussianEdges g_to_zf;      // g -> Psi_z
  // Per (l, k).
  GaussianEdges g_to_gf;      // g -> Psi_g
  GaussianEdges gf_to_g;      // Psi_g -> g
  std::vector<CategoricalMessage> gf_to_u;  // Psi_g -> u
  std::vector<CategoricalMessage> u_to_gf;  // u -> Psi_g
  // Per (l, k, t >= Tp).
  std::vector<CategoricalMessage> zf_to_x;  // Psi_z -> x
  std::vector<CategoricalMessage> x_to_zf;  // x -> Psi_z

  int T() const { return Tp + Td; }
  int lk(int l, int k) const { return l * K + k; }
  int lkt(int l, int k, int t) const { return (l * K + k) * T() + t; }
  /// t is the absolute channel use (t >= Tp).
  int lkd(int l, int k, int t) const { return (l * K + k) * Td + (t - Tp); }
};

struct EdgeStateJAC {
  int L = 0, K = 0, N = 0, Tp = 0;
  GaussianEdges g_to_yf;   // g -> Psi_y, per (l, k, t < Tp)
  GaussianEdges yf_to_g;   // Psi_y -> g
  GaussianEdges g_to_gf;   // per (l, k)
  GaussianEdges gf_to_g;
  std::vector<CategoricalMessage> gf_to_u;
  std::vector<CategoricalMessage> u_to_gf;

  int lk(int l, int k) const { return l * K + k; }
  int lkt(int l, int k, int t) const { return (l * K + k) * Tp + t; }
};

/// Moments of g = h u under the priors: (p1 mu, p1 (C + p0 mu mu^H)).
GaussianMoment effective_channel_prior(double p0, double p1, const GaussianMoment& h);

EdgeStateJACD init_edge_state_jacd(const Priors& priors, const NetworkScenario& s);
EdgeStateJAC init_edge_state_jac(const NetworkScenario& s);

}  // namespace jacdep
