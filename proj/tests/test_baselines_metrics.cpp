// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <vector>

#include "baselines.hpp"
#include "metrics.hpp"
#include "test_util.hpp"

using namespace jacdep;
using namespace testutil;

TEST_CASE("genie_mmse_detect") {
  SUBCASE("single user without noise") {
    NetworkScenario s = make_tiny(1, 1, 1, 0, 4);
    s.modulation = Modulation::kQam4;
    s.sigma_n2 = 1e-12;
    s.H[0](0, 0) = 1.0;
    const Constellation c = s.constellation();
    for (int t = 0; t < 4; ++t) {
      s.data.indices(0, t) = t;
      s.data.symbols(0, t) = c.point(t);
    }
    s.Y = noiseless_received(s);
    GenieResult r = genie_mmse_detect(s);
    for (int t = 0; t < 4; ++t) CHECK(r.x_hat(0, t) == t);
  }
  SUBCASE("nobody active") {
    NetworkScenario s = make_tiny(2, 1, 3, 1, 2);
    s.active.assign(3, 0);
    CHECK(genie_mmse_detect(s).empty());
  }
  SUBCASE("matches the textbook filter") {
    Rng rng(41);
    NetworkScenario s = make_tiny(2, 2, 3, 1, 5);
    s.modulation = Modulation::kQam4;
    s.sigma_x2 = 1.7;
    s.sigma_n2 = 0.3;
    s.active = {1, 0, 1};
    for (auto& H : s.H)
      for (int i = 0; i < H.rows(); ++i)
        for (int j = 0; j < H.cols(); ++j) H(i, j) = cnormal(rng);
    SimConfig c;
    c.K = 3;
    c.Td = 5;
    c.tx_power_dbm = 30.0 + 10.0 * std::log10(1.7);
    s.data = sample_data_symbols(c, rng);
    s.Y = synthesize_received(s, rng);
    GenieResult r = genie_mmse_detect(s);

    Eigen::MatrixXcd ha(4, 2);
    ha.col(0) << s.H[0].col(0), s.H[1].col(0);
    ha.col(1) << s.H[0].col(2), s.H[1].col(2);
    const Eigen::MatrixXcd w =
        s.sigma_x2 * ha.adjoint() *
        (s.sigma_x2 * ha * ha.adjoint() + s.sigma_n2 * Eigen::MatrixXcd::Identity(4, 4)).inverse();
    for (int t = 0; t < 5; ++t) {
      Eigen::VectorXcd y(4);
      y << s.Y[0].col(1 + t), s.Y[1].col(1 + t);
      const Eigen::VectorXcd est = w * y;
      CHECK(std::abs(r.soft(0, t) - est(0)) < 1e-10 * std::abs(est(0)));
      CHECK(std::abs(r.soft(2, t) - est(1)) < 1e-10 * std::abs(est(1)));
      CHECK(r.x_hat(1, t) == -1);
    }
  }
}

TEST_CASE("genie SER does not grow with SNR") {
  SimConfig c;
  c.L = 4;
  c.K = 6;
  c.Tp = 1;
  c.Td = 20;
  c.ap_spacing_m = 200.0;
  Rng geo(42);
  const Geometry g = place_network(c, geo);
  double prev = 1.0, prev_se = 0.0;
  for (double tx : {-10.0, -5.0, 0.0, 5.0, 10.0}) {
    c.tx_power_dbm = tx;
    Rng rng(43);  // same channels, symbols and noise shape at every SNR
    std::int64_t errors = 0, symbols = 0;
    for (int i = 0; i < 200; ++i) {
      NetworkScenario s = make_scenario(c, g, compute_large_scale(c, g), rng);
      GenieResult r = genie_mmse_detect(s);
      if (r.empty()) continue;
      for (int k = 0; k < s.K; ++k) {
        SymbolErrors e = count_symbol_errors(r.x_hat, s.data.indices, s.active, k);
        errors += e.errors;
        symbols += e.symbols;
      }
    }
    const double ser = double(errors) / double(symbols);
    const double se = std::sqrt(ser * (1 - ser) / double(symbols));
    CHECK(ser <= prev + 3.0 * std::hypot(se, prev_se));
    prev = ser;
    prev_se = se;
  }
}

TEST_CASE("compute_der") {
  const std::vector<std::uint8_t> a{1, 0, 1, 1}, b{1, 0, 0, 1}, c{0, 1, 0, 0};
  CHECK(compute_der(a, a) == 0.0);
  CHECK(compute_der(a, c) == 1.0);
  CHECK(compute_der(a, b) == 0.25);
  const std::vector<std::uint8_t> shorter{1};
  CHECK_THROWS_CODE(compute_der(a, shorter), ErrorCode::kLengthMismatch);

  // Coin-flip detector on lambda = 0.5 traffic.
  Rng rng(44);
  auto truth = sample_activity(0.5, 100000, rng);
  auto guess = sample_activity(0.5, 100000, rng);
  CHECK(std::abs(compute_der(guess, truth) - 0.5) < 3 * 0.5 / std::sqrt(100000.0));
}

TEST_CASE("nmse_ratio and compute_nmse") {
  NetworkScenario s = make_tiny(2, 1, 1, 1, 0);
  s.H[0](0, 0) = Complex(1.0, 1.0);
  s.H[1](0, 0) = Complex(-2.0, 0.5);
  std::vector<CVector> exact{s.channel(0, 0), s.channel(1, 0)};
  std::vector<CVector> zero(2, CVector::Zero(1));
  CHECK(*nmse_ratio(s, exact, 0) == 0.0);
  CHECK(*nmse_ratio(s, zero, 0) == doctest::Approx(1.0));

  // Link 1 is weak: only link 0 counts.
  s.xi(1, 0) = 0.5;
  std::vector<CVector> off{s.channel(0, 0), CVector::Constant(1, 100.0)};
  CHECK(*nmse_ratio(s, off, 0) == 0.0);
  s.xi(1, 0) = 1.0;  // sigma_x^2 xi == sigma_n^2 still counts
  CHECK(*nmse_ratio(s, off, 0) > 1.0);
  s.xi.setConstant(0.1);
  CHECK_FALSE(nmse_ratio(s, exact, 0));

  CHECK_FALSE(compute_nmse({}));
  const std::vector<double> r{0.2, 0.4};
  CHECK(*compute_nmse(r) == doctest::Approx(0.3));
}

TEST_CASE("compute_ser") {
  Eigen::MatrixXi truth(2, 3), exact(2, 3), wrong(2, 3);
  truth << 0, 1, 2, 3, 3, 0;
  exact = truth;
  wrong << 1, 2, 3, 0, 0, 1;
  const std::vector<std::uint8_t> both{1, 1}, first{1, 0}, none{0, 0};
  CHECK(*compute_ser(exact, truth, both) == 0.0);
  CHECK(*compute_ser(wrong, truth, both) == 1.0);
  Eigen::MatrixXi half = truth;
  half.row(1) = wrong.row(1);
  CHECK(*compute_ser(half, truth, first) == 0.0);
  CHECK_FALSE(compute_ser(exact, truth, none));
}

TEST_CASE("empirical_cdf") {
  const std::vector<double> v{3.0, 1.0, 2.0};
  auto cdf = empirical_cdf(v);
  REQUIRE(cdf.size() == 3);
  CHECK(cdf[1].first == 2.0);
  CHECK(cdf[1].second == doctest::Approx(2.0 / 3.0));
  CHECK(cdf.back().second == 1.0);
  const std::vector<double> one{5.0};
  CHECK(empirical_cdf(one) == std::vector<std::pair<double, double>>{{5.0, 1.0}});
  const std::vector<double> dup{1.0, 1.0, 2.0, 2.0};
  auto d = empirical_cdf(dup);
  REQUIRE(d.size() == 2);
  CHECK(d[0].second == 0.5);
  CHECK_THROWS_CODE(empirical_cdf(std::vector<double>{}), ErrorCode::kEmptyInput);
}

TEST_CASE("median and paired bootstrap") {
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
  const std::vector<double> a{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  auto same = paired_bootstrap_median_diff(a, a, 500, 0.95, 1);
  CHECK(same.estimate == 0.0);
  CHECK(same.lower == 0.0);
  CHECK(same.upper == 0.0);
  std::vector<double> b = a;
  for (double& x : b) x += 10.0;
  auto shifted = paired_bootstrap_median_diff(a, b, 500, 0.95, 1);
  CHECK(shifted.estimate == -10.0);
  CHECK(shifted.upper == -10.0);
  auto again = paired_bootstrap_median_diff(a, b, 500, 0.95, 1);
  CHECK(again.lower == shifted.lower);
}
