// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "error.hpp"
#include "gaussian.hpp"
#include "test_util.hpp"

using namespace jacdep;
using namespace testutil;

namespace {

GaussianMoment g1(Complex mean, double cov) { return {vec1(mean), scalar(cov)}; }
GaussianNatural n1(Complex gamma, double lambda) { return {vec1(gamma), scalar(lambda)}; }

}  // namespace

TEST_CASE("natural_from_moment") {
  auto a = natural_from_moment(g1(0.0, 1.0));
  CHECK(std::abs(a.gamma(0)) == doctest::Approx(0.0));
  CHECK(a.lambda(0, 0).real() == doctest::Approx(1.0));
  auto b = natural_from_moment(g1(2.0, 2.0));
  CHECK(b.gamma(0).real() == doctest::Approx(1.0));
  CHECK(b.lambda(0, 0).real() == doctest::Approx(0.5));

  Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    GaussianMoment g{random_vector(3, rng), random_pd(3, rng)};
    GaussianMoment back = moment_from_natural(natural_from_moment(g));
    CHECK(rel_err_m(back.mean, g.mean) < 1e-10);
    CHECK(rel_err_m(back.cov, g.cov) < 1e-10);
  }
}

TEST_CASE("moment_from_natural") {
  auto a = moment_from_natural(n1(0.0, 1.0));
  CHECK(std::abs(a.mean(0)) == doctest::Approx(0.0));
  CHECK(a.cov(0, 0).real() == doctest::Approx(1.0));
  auto b = moment_from_natural(n1(1.0, 0.5));
  CHECK(b.mean(0).real() == doctest::Approx(2.0));
  CHECK(b.cov(0, 0).real() == doctest::Approx(2.0));
  CHECK_THROWS_CODE(moment_from_natural(GaussianNatural::zero(2)), ErrorCode::kImproperMessage);
}

TEST_CASE("gaussian_product") {
  auto p = gaussian_product(g1(2.0, 2.0), g1(0.0, 2.0));
  CHECK(p.g.mean(0).real() == doctest::Approx(1.0));
  CHECK(p.g.cov(0, 0).real() == doctest::Approx(1.0));

  auto q = gaussian_product(g1(0.0, 1.0), g1(0.0, 1.0));
  CHECK(std::abs(q.g.mean(0)) == doctest::Approx(0.0));
  CHECK(q.g.cov(0, 0).real() == doctest::Approx(0.5));
  CHECK(q.scale == doctest::Approx(1.0 / (2.0 * std::numbers::pi)));
  CHECK(q.log_scale == doctest::Approx(std::log(q.scale)));

  // Pointwise: N(x|a) N(x|b) = scale * N(x|product).
  Rng rng(12);
  for (int rep = 0; rep < 20; ++rep) {
    GaussianMoment a = g1(cnormal(rng), 0.5 + std::uniform_real_distribution<double>(0, 2)(rng));
    GaussianMoment b = g1(cnormal(rng), 0.5 + std::uniform_real_distribution<double>(0, 2)(rng));
    auto r = gaussian_product(a, b);
    for (int i = 0; i < 10; ++i) {
      CVector x = vec1(2.0 * cnormal(rng));
      const double lhs = density_longhand(x, a.mean, a.cov) * density_longhand(x, b.mean, b.cov);
      const double rhs = r.scale * density_longhand(x, r.g.mean, r.g.cov);
      CHECK(rel_err(rhs, lhs) < 1e-10);
    }
  }
}

TEST_CASE("gaussian_quotient") {
  Rng rng(13);
  GaussianMoment a{random_vector(2, rng), random_pd(2, rng)};
  GaussianMoment b{random_vector(2, rng), random_pd(2, rng)};
  auto prod = natural_from_moment(gaussian_product(a, b).g);
  auto back = moment_from_natural(gaussian_quotient(prod, natural_from_moment(b)));
  CHECK(rel_err_m(back.mean, a.mean) < 1e-10);
  CHECK(rel_err_m(back.cov, a.cov) < 1e-10);

  auto q = gaussian_quotient(n1(2.0, 2.0), n1(1.0, 1.0));
  CHECK(q.lambda(0, 0).real() == doctest::Approx(1.0));
  CHECK(q.gamma(0).real() == doctest::Approx(1.0));

  auto self = gaussian_quotient(n1(0.0, 1.0), n1(0.0, 1.0));
  CHECK(std::abs(self.lambda(0, 0)) == 0.0);
  CHECK(std::abs(self.gamma(0)) == 0.0);
  CHECK_FALSE(is_hermitian_pd(self.lambda));
}

TEST_CASE("gaussian_scale") {
  auto id = gaussian_scale(g1(Complex(1.0, 2.0), 3.0), 1.0);
  CHECK(id.mean(0) == Complex(1.0, 2.0));
  CHECK(id.cov(0, 0).real() == doctest::Approx(3.0));
  auto two = gaussian_scale(g1(1.0, 1.0), 2.0);
  CHECK(two.mean(0).real() == doctest::Approx(2.0));
  CHECK(two.cov(0, 0).real() == doctest::Approx(4.0));
  auto rot = gaussian_scale(g1(1.0, 1.0), Complex(0.0, 1.0));
  CHECK(rot.mean(0).imag() == doctest::Approx(1.0));
  CHECK(rot.mean(0).real() == doctest::Approx(0.0));
  CHECK(rot.cov(0, 0).real() == doctest::Approx(1.0));
}

TEST_CASE("gaussian_density") {
  CHECK(gaussian_density(vec1(0.0), g1(0.0, 2.0)) == doctest::Approx(0.159155).epsilon(1e-6));
  Rng rng(14);
  GaussianMoment g{random_vector(2, rng), random_pd(2, rng)};
  const double peak = 1.0 / (std::numbers::pi * std::numbers::pi * Eigen::MatrixXcd(g.cov).determinant().real());
  CHECK(rel_err(gaussian_density(g.mean, g), peak) < 1e-12);
  for (int i = 0; i < 10; ++i) {
    CVector x = g.mean + random_vector(2, rng);
    CHECK(rel_err(gaussian_density(x, g), density_longhand(x, g.mean, g.cov)) < 1e-12);
    CHECK(gaussian_log_density(x, g) == doctest::Approx(std::log(density_longhand(x, g.mean, g.cov))));
  }
  CHECK(gaussian_log_density_at_zero(g.mean, g.cov) ==
        doctest::Approx(std::log(density_longhand(CVector::Zero(2), g.mean, g.cov))));
}

TEST_CASE("mixture_moments") {
  GaussianMixture single{{1.0}, {g1(Complex(0.3, -0.2), 1.7)}};
  auto s = mixture_moments(single);
  CHECK(s.mean(0).real() == doctest::Approx(0.3));
  CHECK(s.mean(0).imag() == doctest::Approx(-0.2));
  CHECK(s.cov(0, 0).real() == doctest::Approx(1.7));

  GaussianMixture two{{0.5, 0.5}, {g1(1.0, 1.0), g1(-1.0, 1.0)}};
  auto t = mixture_moments(two);
  CHECK(std::abs(t.mean(0)) == doctest::Approx(0.0));
  CHECK(t.cov(0, 0).real() == doctest::Approx(2.0));
  CHECK(t.z == doctest::Approx(1.0));

  // Log weights: -inf drops a component, a common shift leaves moments alone.
  const std::vector<GaussianMoment> comps{g1(1.0, 1.0), g1(-1.0, 1.0), g1(5.0, 1.0)};
  const std::vector<double> lw{-1000.0, -1000.0, -std::numeric_limits<double>::infinity()};
  auto u = mixture_moments_log(lw, comps);
  CHECK(std::abs(u.mean(0)) == doctest::Approx(0.0));
  CHECK(u.cov(0, 0).real() == doctest::Approx(2.0));
  CHECK(u.log_z == doctest::Approx(-1000.0 + std::log(2.0)));
}

TEST_CASE("damp_natural") {
  auto oldm = n1(1.0, 0.2);
  auto newm = n1(3.0, 0.4);
  CHECK(damp_natural(oldm, newm, 1.0).lambda(0, 0).real() == doctest::Approx(0.4));
  CHECK(damp_natural(oldm, newm, 0.0).lambda(0, 0).real() == doctest::Approx(0.2));
  auto mid = damp_natural(oldm, newm, 0.5);
  CHECK(mid.lambda(0, 0).real() == doctest::Approx(0.3));
  CHECK(mid.gamma(0).real() == doctest::Approx(2.0));
}

TEST_CASE("is_hermitian_pd") {
  CHECK(is_hermitian_pd(CMatrix::Identity(3, 3)));
  CHECK_FALSE(is_hermitian_pd(scalar(-1.0)));
  CMatrix m(2, 2);
  m << 1.0, 2.0, 2.0, 1.0;
  CHECK_FALSE(is_hermitian_pd(m));
  CMatrix nh(2, 2);
  nh << 2.0, Complex(0.0, 1.0), Complex(0.0, 1.0), 2.0;
  CHECK_FALSE(is_hermitian_pd(nh));
}
