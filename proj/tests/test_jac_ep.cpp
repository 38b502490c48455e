// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "edge_state.hpp"
#include "jac_ep.hpp"
#include "test_util.hpp"

using namespace jacdep;
using namespace testutil;

namespace {

GaussianNatural random_natural(int n, Rng& rng) {
  return natural_from_moment({random_vector(n, rng), random_pd(n, rng)});
}

}  // namespace

TEST_CASE("init_edge_state_jac") {
  NetworkScenario s = make_tiny(1, 2, 1, 2, 0);
  s.lambda = 0.0;
  EdgeStateJAC a = init_edge_state_jac(s);
  CHECK(a.gf_to_g.cov(0).norm() == 0.0);
  CHECK(a.g_to_yf.cov(1).norm() == 0.0);

  s.lambda = 1.0;
  EdgeStateJAC b = init_edge_state_jac(s);
  CHECK((b.gf_to_g.cov(0) - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-15);

  s.lambda = 0.5;
  s.Xi[0] = 2.0 * CMatrix::Identity(2, 2);
  EdgeStateJAC c = init_edge_state_jac(s);
  CHECK((c.g_to_yf.cov(0) - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-15);
  CHECK(c.g_to_yf.mean(0).norm() == 0.0);
  CHECK_FALSE(c.yf_to_g.informative(0));

  s.Xi.clear();
  CHECK_THROWS_CODE(init_edge_state_jac(s), ErrorCode::kMissingScenario);
}

TEST_CASE("jac g -> Psi_y and g -> Psi_g sums") {
  NetworkScenario one = make_tiny(1, 2, 1, 1, 0);
  EdgeStateJAC st = init_edge_state_jac(one);
  Rng rng(21);
  st.gf_to_g.set_natural(0, random_natural(2, rng));
  auto m = jac_update_g_to_psi_y(st, 0, 0, 0);
  CHECK(m.gamma == st.gf_to_g.natural(0).gamma);
  CHECK(m.lambda == st.gf_to_g.natural(0).lambda);

  NetworkScenario s = make_tiny(1, 2, 1, 3, 0);
  EdgeStateJAC z = init_edge_state_jac(s);
  z.gf_to_g.set_natural(0, GaussianNatural::zero(2));
  auto zero = jac_update_g_to_psi_y(z, 0, 0, 1);
  CHECK(zero.lambda.norm() == 0.0);
  CHECK(zero.gamma.norm() == 0.0);
  CHECK(jac_update_g_to_psi_g(z, 0, 0).lambda.norm() == 0.0);

  GaussianNatural parts[4];
  for (auto& p : parts) p = random_natural(2, rng);
  z.gf_to_g.set_natural(0, parts[3]);
  for (int t = 0; t < 3; ++t) z.yf_to_g.set_natural(z.lkt(0, 0, t), parts[t]);
  auto to_y = jac_update_g_to_psi_y(z, 0, 0, 1);
  CHECK(to_y.lambda == CMatrix(parts[3].lambda + parts[0].lambda + parts[2].lambda));
  CHECK(to_y.gamma == CVector(parts[3].gamma + parts[0].gamma + parts[2].gamma));
  auto to_g = jac_update_g_to_psi_g(z, 0, 0);
  CHECK(to_g.lambda == CMatrix(parts[0].lambda + parts[1].lambda + parts[2].lambda));
  CHECK(to_g.gamma == CVector(parts[0].gamma + parts[1].gamma + parts[2].gamma));
}

TEST_CASE("jac Psi_y -> g") {
  NetworkScenario s = make_tiny(1, 1, 1, 2, 0);
  s.sigma_n2 = 0.3;
  s.pilots.symbols(0, 1) = Complex(0.0, -2.0);
  s.Y[0](0, 1) = Complex(1.0, 0.5);
  EdgeStateJAC st = init_edge_state_jac(s);
  auto m = jac_update_psi_y_to_g(st, s, 0, 0, 1, false);
  CHECK(std::abs(m.mean(0) - Complex(1.0, 0.5) / Complex(0.0, -2.0)) < 1e-15);
  CHECK(m.cov(0, 0).real() == doctest::Approx(0.3 / 4.0));
  auto pc = jac_update_psi_y_to_g(st, s, 0, 0, 1, true);
  CHECK(pc.cov(0, 0) == m.cov(0, 0));

  s.pilots.symbols(0, 0) = 0.0;
  CHECK_THROWS_CODE(jac_update_psi_y_to_g(st, s, 0, 0, 0, false), ErrorCode::kZeroPilotSymbol);

  // Two users sharing a pilot, written out by hand.
  NetworkScenario t = make_tiny(1, 1, 2, 1, 0);
  t.sigma_n2 = 0.2;
  t.pilots.symbols << Complex(0.6, 0.8), Complex(0.6, 0.8);
  t.pilots.collisions = {{1}, {0}};
  t.Xi[0] = scalar(0.7);  // (l, k) = (0, 0)
  t.Xi[1] = scalar(1.9);
  t.Y[0](0, 0) = Complex(0.25, -1.5);
  EdgeStateJAC e = init_edge_state_jac(t);
  e.g_to_yf.set_moment(e.lkt(0, 1, 0), {vec1(Complex(0.4, 0.1)), scalar(0.35)});
  const Complex x(0.6, 0.8);
  const Complex mu = (Complex(0.25, -1.5) - Complex(0.4, 0.1) * x) / x;
  const double c = (0.2 + 0.35 * 1.0) / 1.0;
  auto plain = jac_update_psi_y_to_g(e, t, 0, 0, 0, false);
  CHECK(std::abs(plain.mean(0) - mu) < 1e-12);
  CHECK(std::abs(plain.cov(0, 0) - c) < 1e-12);
  auto victim = jac_update_psi_y_to_g(e, t, 0, 0, 0, true, false);
  CHECK(std::abs(victim.cov(0, 0) - (c + 0.7)) < 1e-12);
  auto interferer = jac_update_psi_y_to_g(e, t, 0, 0, 0, true, true);
  CHECK(std::abs(interferer.cov(0, 0) - (c + 1.9)) < 1e-12);
  CHECK(std::abs(victim.mean(0) - mu) < 1e-12);
}

TEST_CASE("jac Psi_g -> u") {
  NetworkScenario s = make_tiny(1, 1, 1, 1, 0);
  EdgeStateJAC st = init_edge_state_jac(s);

  st.g_to_gf.set_moment(0, {vec1(0.0), scalar(1.0)});
  s.Xi[0] = scalar(1e-14);
  auto flat = jac_update_psi_g_to_u(st, s, 0, 0);
  REQUIRE(flat);
  CHECK(flat->prob(1) == doctest::Approx(0.5));

  // vartheta(0) = 1/pi, vartheta(1) = 1/(2 pi).
  s.Xi[0] = scalar(1.0);
  auto m = jac_update_psi_g_to_u(st, s, 0, 0);
  REQUIRE(m);
  CHECK(m->prob(0) == doctest::Approx(2.0 / 3.0));
  CHECK(m->prob(1) == doctest::Approx(1.0 / 3.0));

  st.g_to_gf.set_moment(0, {vec1(3.0), scalar(0.01)});
  auto strong = jac_update_psi_g_to_u(st, s, 0, 0);
  REQUIRE(strong);
  const double lr = std::log(density_longhand(vec1(0.0), vec1(3.0), scalar(1.01))) -
                    std::log(density_longhand(vec1(0.0), vec1(3.0), scalar(0.01)));
  CHECK(strong->prob(1) == doctest::Approx(1.0 / (1.0 + std::exp(-lr))));
  CHECK(strong->prob(1) > 0.999999);

  st.g_to_gf.set_uninformative(0);
  CHECK_FALSE(jac_update_psi_g_to_u(st, s, 0, 0));
}

TEST_CASE("jac u -> Psi_g") {
  NetworkScenario s = make_tiny(1, 1, 1, 1, 0);
  EdgeStateJAC st = init_edge_state_jac(s);
  CHECK(jac_update_u_to_psi_g(st, 0, 0, 0.3).prob(1) == doctest::Approx(0.3));

  NetworkScenario t = make_tiny(3, 1, 1, 1, 0);
  EdgeStateJAC e = init_edge_state_jac(t);
  CHECK(jac_update_u_to_psi_g(e, 1, 0, 0.5).prob(1) == doctest::Approx(0.5));
  e.gf_to_u[0] = binary(0.8);
  e.gf_to_u[1] = binary(0.1);
  e.gf_to_u[2] = binary(0.35);
  const std::vector<CategoricalMessage> parts{binary(0.4), binary(0.8), binary(0.35)};
  CHECK(jac_update_u_to_psi_g(e, 1, 0, 0.4).prob(1) == doctest::Approx(categorical_product(parts, 2).prob(1)));
}

TEST_CASE("jac Psi_g -> g") {
  NetworkScenario s = make_tiny(1, 1, 1, 1, 0);
  s.Xi[0] = scalar(1.6);
  EdgeStateJAC st = init_edge_state_jac(s);
  st.g_to_gf.set_moment(0, {vec1(Complex(0.3, 0.2)), scalar(0.5)});

  st.u_to_gf[0] = binary(1.0);
  auto active = jac_update_psi_g_to_g(st, s, 0, 0);
  REQUIRE(active);
  CHECK(active->lambda(0, 0).real() == doctest::Approx(1.0 / 1.6));
  CHECK(std::abs(active->gamma(0)) < 1e-12);

  st.u_to_gf[0] = binary(0.0);
  CHECK_FALSE(jac_update_psi_g_to_g(st, s, 0, 0));

  // Mixture of a point mass at 0 and the active-branch Gaussian, by hand.
  const double p1 = 0.37;
  st.u_to_gf[0] = binary(p1);
  const Complex mu(0.3, 0.2);
  const double c = 0.5, xi = 1.6;
  const double w0 = (1 - p1) * density_longhand(vec1(0.0), vec1(mu), scalar(c));
  const double w1 = p1 * density_longhand(vec1(0.0), vec1(mu), scalar(c + xi));
  const double a1 = w1 / (w0 + w1);
  const Complex ma = xi / (c + xi) * mu;
  const double ca = c * xi / (c + xi);
  const Complex m = a1 * ma;
  const double v = a1 * (ca + std::norm(ma)) - std::norm(m);
  auto mixed = jac_update_psi_g_to_g(st, s, 0, 0);
  REQUIRE(mixed);
  CHECK(rel_err(mixed->lambda(0, 0).real(), 1.0 / v - 1.0 / c) < 1e-10);
  CHECK(std::abs(mixed->gamma(0) - (m / v - mu / c)) < 1e-10 * std::abs(m / v - mu / c));
}

TEST_CASE("jac_ep_run") {
  SUBCASE("long pilots approach the LMMSE estimate") {
    NetworkScenario s = make_tiny(1, 1, 1, 16, 0);
    s.lambda = 1.0;
    s.sigma_n2 = 0.01;
    Rng rng(22);
    for (int t = 0; t < s.Tp; ++t) s.pilots.symbols(0, t) = (t % 3 == 0) ? -1.0 : 1.0;
    s.H[0](0, 0) = cnormal(rng);
    s.Y = synthesize_received(s, rng);
    EpOptions opt;
    JacResult r = jac_ep_run(s, opt);
    const Eigen::VectorXcd x = s.pilots.symbols.row(0).transpose();
    const Eigen::VectorXcd y = s.Y[0].row(0).transpose();
    const Complex lmmse = (x.adjoint() * y)(0) / (x.squaredNorm() + s.sigma_n2);
    CHECK(std::abs(r.h_hat[0](0) - lmmse) < 1e-3 * std::abs(lmmse));
    CHECK(r.u_hat[0] == 1);
  }
  SUBCASE("noise-free single active user is detected") {
    NetworkScenario s = make_tiny(1, 1, 1, 2, 0);
    s.sigma_n2 = 1e-8;
    s.H[0](0, 0) = Complex(0.8, -0.6);
    s.pilots.symbols << 1.0, -1.0;
    s.Y = noiseless_received(s);
    CHECK(jac_ep_run(s, EpOptions{}).u_hat[0] == 1);
    s.active[0] = 0;
    s.Y = noiseless_received(s);
    CHECK(jac_ep_run(s, EpOptions{}).u_hat[0] == 0);
  }
  SUBCASE("no received energy lowers every activity belief") {
    NetworkScenario s = make_tiny(2, 1, 3, 4, 0);
    s.sigma_n2 = 1e3;
    JacResult r = jac_ep_run(s, EpOptions{});
    for (int k = 0; k < 3; ++k) CHECK(r.priors.p_active(k) < 0.5);
  }
  SUBCASE("bad options") {
    NetworkScenario s = make_tiny(1, 1, 1, 1, 0);
    EpOptions opt;
    opt.eta = 1.5;
    CHECK_THROWS_CODE(jac_ep_run(s, opt), ErrorCode::kEtaOutOfRange);
  }
}
