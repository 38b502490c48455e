// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

namespace jacdep {

inline constexpr int kMaxSupport = 16;

/// Normalized categorical distribution over {0, ..., size-1}, held as log
/// probabilities. Messages built by uniform() are flagged uninformative until
/// they are first overwritten by an update.
class CategoricalMessage {
 public:
  using LogWeights = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxSupport, 1>;

  CategoricalMessage() = default;

  static CategoricalMessage uniform(int size);
  /// Normalizes arbitrary log weights (max-subtraction, exp, divide).
  static CategoricalMessage from_log_weights(std::span<const double> log_weights);
  static CategoricalMessage from_weights(std::span<const double> weights);

  int size() const { return static_cast<int>(log_p_.size()); }
  double prob(int i) const;
  double log_prob(int i) const { return log_p_(i); }
  std::vector<double> probabilities() const;
  /// Lowest index among the maximizers.
  int argmax() const;
  bool informative() const { return informative_; }

 private:
  LogWeights log_p_;
  bool informative_ = true;
};

CategoricalMessage categorical_normalize(std::span<const double> log_weights);
/// Elementwise product of the messages, normalized. An empty list yields the
/// uniform message of the given support size.
CategoricalMessage categorical_product(std::span<const CategoricalMessage> messages,
                                       int support_size);
/// eta * new + (1 - eta) * old in the probability domain, renormalized.
CategoricalMessage damp_categorical(const CategoricalMessage& old_msg,
                                    const CategoricalMessage& new_msg, double eta);

}  // namespace jacdep
