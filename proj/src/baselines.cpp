// SPDX-License-Identifier: Apache-2.0
#include "baselines.hpp"

#include <vector>

namespace jacdep {

Eigen::MatrixXcd stacked_channels(const NetworkScenario& s) {
  Eigen::MatrixXcd h(static_cast<Eigen::Index>(s.L) * s.N, s.K);
  for (int l = 0; l < s.L; ++l) h.middleRows(static_cast<Eigen::Index>(l) * s.N, s.N) = s.H[static_cast<std::size_t>(l)];
  return h;
}

GenieResult genie_mmse_detect(const NetworkScenario& s) {
  std::vector<int> act;
  for (int k = 0; k < s.K; ++k) {
    if (s.active[static_cast<std::size_t>(k)]) act.push_back(k);
  }
  GenieResult out;
  if (act.empty()) return out;

  const Eigen::MatrixXcd h = stacked_channels(s);
  const auto ka = static_cast<Eigen::Index>(act.size());
  Eigen::MatrixXcd ha(h.rows(), ka);
  for (Eigen::Index j = 0; j < ka; ++j) ha.col(j) = h.col(act[static_cast<std::size_t>(j)]);

  // sigma_x^2 Ha^H (sigma_x^2 Ha Ha^H + sigma_n^2 I)^-1 equals
  // (Ha^H Ha + sigma_n^2 / sigma_x^2 I)^-1 Ha^H; the second needs a Ka x Ka solve.
  Eigen::MatrixXcd gram = ha.adjoint() * ha;
  gram.diagonal().array() += s.sigma_n2 / s.sigma_x2;
  const Eigen::LDLT<Eigen::MatrixXcd> ldlt(gram);

  Eigen::MatrixXcd y(h.rows(), s.Td);
  for (int l = 0; l < s.L; ++l) {
    y.middleRows(static_cast<Eigen::Index>(l) * s.N, s.N) = s.Y[static_cast<std::size_t>(l)].rightCols(s.Td);
  }
  const Eigen::MatrixXcd est = ldlt.solve(ha.adjoint() * y);

  const Constellation c = s.constellation();
  out.x_hat = Eigen::MatrixXi::Constant(s.K, s.Td, -1);
  out.soft = Eigen::MatrixXcd::Zero(s.K, s.Td);
  for (Eigen::Index j = 0; j < ka; ++j) {
    const int k = act[static_cast<std::size_t>(j)];
    for (int t = 0; t < s.Td; ++t) {
      out.soft(k, t) = est(j, t);
      out.x_hat(k, t) = c.nearest(est(j, t));
    }
  }
  return out;
}

}  // namespace jacdep
