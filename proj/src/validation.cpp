// SPDX-License-Identifier: Apache-2.0
#include "validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include <unistd.h>

#include "campaign.hpp"
#include "error.hpp"
#include "gaussian.hpp"
#include "jac_ep.hpp"
#include "jacd_ep.hpp"
#include "metrics.hpp"

namespace jacdep {
namespace {

constexpr std::uint64_t kOracleSeed = 20240611;

std::string fmt(double v) {
  std::ostringstream o;
  o.precision(3);
  o << v;
  return o.str();
}

double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

CVector random_vector(Rng& rng, int n, double scale) {
  CVector v(n);
  for (int i = 0; i < n; ++i) v(i) = scale * sample_complex_normal(rng);
  return v;
}

// Hermitian PD with eigenvalues kept within a modest range.
CMatrix random_hpd(Rng& rng, int n) {
  CMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = sample_complex_normal(rng);
  const CMatrix a = g * g.adjoint() / static_cast<double>(n) + 0.5 * CMatrix::Identity(n, n);
  return uniform(rng, 0.5, 2.0) * hermitian_part(a);
}

GaussianMoment random_gaussian(Rng& rng, int n) { return {random_vector(rng, n, 1.0), random_hpd(rng, n)}; }

double rel_natural_error(const GaussianNatural& got, const GaussianNatural& want) {
  const double num = (got.gamma - want.gamma).norm() + (got.lambda - want.lambda).norm();
  return num / (want.gamma.norm() + want.lambda.norm());
}

// Relative difference of two positive quantities given as logs.
double rel_from_logs(double a, double b) { return std::abs(std::expm1(a - b)); }

// A scenario on a unit-gain network: every link has xi = gain(l, k) and the
// given noise power, with pilots, data, activity, channels and observations
// drawn from rng.
NetworkScenario scenario_with_gains(const SimConfig& config, const Eigen::MatrixXd& gain, Rng& rng) {
  Geometry g;
  for (int l = 0; l < config.L; ++l) g.ap_positions.push_back({0.0, 0.0, 0.0});
  for (int k = 0; k < config.K; ++k) g.ue_positions.push_back({0.0, 0.0, 0.0});
  LargeScale ls;
  ls.xi = gain;
  for (int l = 0; l < config.L; ++l)
    for (int k = 0; k < config.K; ++k) ls.Xi.push_back(build_correlation(config, gain(l, k)));
  return make_scenario(config, g, ls, rng);
}

// Unit transmit power and the noise power that gives the requested SNR at xi = 1.
SimConfig unit_power_config(double noise_watt) {
  SimConfig c;
  c.tx_power_dbm = 30.0;
  c.noise_power_dbm = 30.0 + 10.0 * std::log10(noise_watt);
  return c;
}

OracleReport gaussian_suite() {
  Rng rng(kOracleSeed);
  constexpr int kInstances = 1000;
  constexpr double kTol = 1e-10;
  double worst_round = 0.0, worst_scale = 0.0, worst_lemma = 0.0;
  int failures = 0;
  for (int n : {1, 2, 4}) {
    for (int i = 0; i < kInstances; ++i) {
      const GaussianMoment a = random_gaussian(rng, n);
      const GaussianMoment b = random_gaussian(rng, n);
      const ProductResult p = gaussian_product(a, b);

      const GaussianNatural q = gaussian_quotient(natural_from_moment(p.g), natural_from_moment(b));
      const double e1 = rel_natural_error(q, natural_from_moment(a));

      const CVector x = random_vector(rng, n, 1.5);
      const double lhs = gaussian_log_density(x, a) + gaussian_log_density(x, b);
      const double rhs = std::log(p.scale) + gaussian_log_density(x, p.g);
      const double e2 = rel_from_logs(lhs, rhs);

      const Complex c = Complex(uniform(rng, 0.2, 3.0), 0.0) * std::polar(1.0, uniform(rng, 0.0, 2 * std::numbers::pi));
      const double scaled = gaussian_log_density(CVector(c * x), gaussian_scale(a, c));
      const double direct = -2.0 * n * std::log(std::abs(c)) + gaussian_log_density(x, a);
      const double e3 = rel_from_logs(scaled, direct);

      worst_round = std::max(worst_round, e1);
      worst_scale = std::max(worst_scale, e2);
      worst_lemma = std::max(worst_lemma, e3);
      failures += (e1 > kTol) + (e2 > kTol) + (e3 > kTol);
    }
  }
  OracleReport r;
  r.passed = failures == 0;
  r.detail = "3 x 1000 instances per N in {1,2,4}; max rel err round-trip " + fmt(worst_round) + ", scale " +
             fmt(worst_scale) + ", scaling lemma " + fmt(worst_lemma) + "; failures " + std::to_string(failures);
  return r;
}

OracleReport moments_suite() {
  Rng rng(kOracleSeed + 1);
  constexpr int kMixtures = 50;
  constexpr int kSamples = 1000000;
  double worst_mean = 0.0, worst_var = 0.0;
  int failures = 0;
  for (int m = 0; m < kMixtures; ++m) {
    GaussianMixture mix;
    const int parts = 2 + m % 3;
    for (int i = 0; i < parts; ++i) {
      mix.weights.push_back(uniform(rng, 0.1, 1.0));
      mix.components.push_back(
          {random_vector(rng, 1, 2.0), CMatrix::Constant(1, 1, Complex(uniform(rng, 0.05, 2.0)))});
    }
    const MixtureMoments mm = mixture_moments(mix);
    const Complex mean = mm.mean(0);
    const double var = mm.cov(0, 0).real();

    std::discrete_distribution<int> pick(mix.weights.begin(), mix.weights.end());
    std::vector<Complex> z(kSamples);
    Complex sum = 0.0;
    for (auto& v : z) {
      const GaussianMoment& c = mix.components[static_cast<std::size_t>(pick(rng))];
      v = c.mean(0) + std::sqrt(c.cov(0, 0).real()) * sample_complex_normal(rng);
      sum += v;
    }
    const Complex m_hat = sum / static_cast<double>(kSamples);
    double s1 = 0.0, s2 = 0.0;
    for (const auto& v : z) {
      const double d = std::norm(v - m_hat);
      s1 += d;
      s2 += d * d;
    }
    const double v_hat = s1 / kSamples;
    const double sd_d = std::sqrt(std::max(0.0, s2 / kSamples - v_hat * v_hat));
    const double z_mean = std::abs(m_hat - mean) / std::sqrt(v_hat / kSamples);
    const double z_var = std::abs(v_hat - var) / (sd_d / std::sqrt(static_cast<double>(kSamples)));
    worst_mean = std::max(worst_mean, z_mean);
    worst_var = std::max(worst_var, z_var);
    failures += (z_mean > 3.0) + (z_var > 3.0);
  }
  OracleReport r;
  r.passed = failures == 0;
  r.detail = "50 scalar mixtures x 1e6 samples; max deviation " + fmt(worst_mean) + " SE (mean), " + fmt(worst_var) +
             " SE (variance); failures " + std::to_string(failures);
  return r;
}

OracleReport pilot_suite() {
  Rng rng(kOracleSeed + 2);
  constexpr int kSets = 100;
  constexpr double kTol = 1e-12;
  double worst_z = 0.0, worst_g = 0.0;
  int failures = 0;
  for (int i = 0; i < kSets; ++i) {
    const int n = std::array{1, 2, 4}[static_cast<std::size_t>(i % 3)];
    SimConfig c = unit_power_config(0.1);
    c.L = 1;
    c.K = 1;
    c.N = n;
    c.Tp = 2;
    c.Td = 1;
    NetworkScenario s = scenario_with_gains(c, Eigen::MatrixXd::Ones(1, 1), rng);
    const int t = i % 2;
    const Complex xp = uniform(rng, 0.3, 2.0) * std::polar(1.0, uniform(rng, 0.0, 2 * std::numbers::pi));
    s.pilots.symbols(0, t) = xp;

    EdgeStateJACD st = init_edge_state_jacd(Priors::neutral(s), s);
    const GaussianMoment y = random_gaussian(rng, n);
    const GaussianMoment g = random_gaussian(rng, n);
    const int e = st.lkt(0, 0, t);
    st.y_to_z.set_moment(e, y);
    st.g_to_zf.set_moment(e, g);

    // Known symbol: Psi_z -> z is CN(z | x mu_g, |x|^2 C_g) and Psi_z -> g is
    // CN(g | mu_y / x, C_y / |x|^2), independent of the other incoming message.
    const double m2 = std::norm(xp);
    const CMatrix cz = m2 * g.cov;
    const CMatrix lz = cz.inverse();
    const GaussianNatural want_z{lz * (xp * g.mean), lz};
    const CMatrix lg = m2 * y.cov.inverse();
    const GaussianNatural want_g{std::conj(xp) * (y.cov.inverse() * y.mean), lg};

    const auto got_z = jacd_update_psi_z_to_z(st, s, 0, 0, t);
    const auto got_g = jacd_update_psi_z_to_g(st, s, 0, 0, t);
    const double ez = got_z ? rel_natural_error(*got_z, want_z) : 1.0;
    const double eg = got_g ? rel_natural_error(*got_g, want_g) : 1.0;
    worst_z = std::max(worst_z, ez);
    worst_g = std::max(worst_g, eg);
    failures += (ez > kTol) + (eg > kTol);
  }
  OracleReport r;
  r.passed = failures == 0;
  r.detail = "100 message sets, N in {1,2,4}; max rel err Psi_z->z " + fmt(worst_z) + ", Psi_z->g " + fmt(worst_g) +
             "; failures " + std::to_string(failures);
  return r;
}

OracleReport lmmse_suite() {
  Rng rng(kOracleSeed + 3);
  constexpr int kRuns = 100;
  constexpr double kTol = 1e-6;
  SimConfig c = unit_power_config(0.01);  // 20 dB at unit gain
  c.L = 1;
  c.K = 1;
  c.N = 1;
  c.Tp = 8;
  c.Td = 0;
  c.lambda = 1.0;
  double worst = 0.0;
  int failures = 0;
  for (int i = 0; i < kRuns; ++i) {
    const NetworkScenario s = scenario_with_gains(c, Eigen::MatrixXd::Ones(1, 1), rng);
    const JacResult jr = jac_ep_run(s, jac_options(c));
    // xi x^H (xi x x^H + sigma^2 I)^-1 y over the pilot row x.
    const double xi = s.xi(0, 0);
    const Eigen::RowVectorXcd x = s.pilots.symbols.row(0);
    const Eigen::RowVectorXcd y = s.Y[0].leftCols(s.Tp);
    Eigen::MatrixXcd gram = xi * x.adjoint() * x;
    gram.diagonal().array() += s.sigma_n2;
    const Complex want = (xi * y * gram.inverse() * x.adjoint())(0, 0);
    const double err = std::abs(jr.h_hat[0](0) - want) / std::abs(want);
    worst = std::max(worst, err);
    failures += err > kTol;
  }
  OracleReport r;
  r.passed = failures == 0;
  r.detail = "100 realizations at 20 dB; max rel err vs LMMSE " + fmt(worst) + "; failures " + std::to_string(failures);
  return r;
}

// Joint MAP over activities and data for one AP with a single antenna; the
// channels are integrated out: y ~ CN(0, sum_k u_k xi_k x_k x_k^H + sigma^2 I).
struct MapDecision {
  std::vector<std::uint8_t> u;
  Eigen::MatrixXi x;  // K x Td, meaningful for active users
};

MapDecision exhaustive_map(const NetworkScenario& s) {
  const Constellation con = s.constellation();
  const int M = con.size();
  const int data_vars = s.K * s.Td;
  int n_data = 1;
  for (int i = 0; i < data_vars; ++i) n_data *= M;
  const int T = s.T();
  const Eigen::VectorXcd y = s.Y[0].row(0).transpose();

  double best = -std::numeric_limits<double>::infinity();
  MapDecision out;
  for (int umask = 0; umask < (1 << s.K); ++umask) {
    double log_prior = 0.0;
    for (int k = 0; k < s.K; ++k) log_prior += std::log((umask >> k) & 1 ? s.lambda : 1.0 - s.lambda);
    for (int d = 0; d < n_data; ++d) {
      Eigen::MatrixXi idx(s.K, s.Td);
      int rem = d;
      for (int k = 0; k < s.K; ++k)
        for (int t = 0; t < s.Td; ++t) {
          idx(k, t) = rem % M;
          rem /= M;
        }
      Eigen::MatrixXcd cov = s.sigma_n2 * Eigen::MatrixXcd::Identity(T, T);
      for (int k = 0; k < s.K; ++k) {
        if (!((umask >> k) & 1)) continue;
        Eigen::VectorXcd xk(T);
        for (int t = 0; t < T; ++t) xk(t) = t < s.Tp ? s.pilots.symbols(k, t) : con.point(idx(k, t - s.Tp));
        cov += s.xi(0, k) * xk * xk.adjoint();
      }
      const Eigen::LLT<Eigen::MatrixXcd> llt(cov);
      const Eigen::VectorXcd w = llt.matrixL().solve(y);
      double log_det = 0.0;
      for (int t = 0; t < T; ++t) log_det += 2.0 * std::log(llt.matrixL()(t, t).real());
      const double lp = log_prior - data_vars * std::log(static_cast<double>(M)) - log_det - w.squaredNorm();
      if (lp > best) {
        best = lp;
        out.u.assign(static_cast<std::size_t>(s.K), 0);
        for (int k = 0; k < s.K; ++k) out.u[static_cast<std::size_t>(k)] = (umask >> k) & 1;
        out.x = idx;
      }
    }
  }
  return out;
}

OracleReport map_suite() {
  Rng rng(kOracleSeed + 4);
  constexpr int kInstances = 200;
  SimConfig c = unit_power_config(1.0);
  c.L = 1;
  c.K = 2;
  c.N = 1;
  c.Tp = 2;
  c.Td = 2;
  c.modulation = Modulation::kBpskData;
  int agree = 0;
  for (int i = 0; i < kInstances; ++i) {
    Eigen::MatrixXd gain(1, c.K);
    for (int k = 0; k < c.K; ++k) gain(0, k) = std::pow(10.0, uniform(rng, 20.0, 30.0) / 10.0);
    const NetworkScenario s = scenario_with_gains(c, gain, rng);
    const JacResult jr = jac_ep_run(s, jac_options(c));
    const JacdResult dr = jacd_run(s, jr.priors, jacd_options(c));
    const MapDecision m = exhaustive_map(s);
    bool same = dr.u_hat == m.u;
    for (int k = 0; same && k < s.K; ++k) {
      if (m.u[static_cast<std::size_t>(k)]) same = dr.x_hat.row(k) == m.x.row(k);
    }
    agree += same;
  }
  OracleReport r;
  const double frac = static_cast<double>(agree) / kInstances;
  r.passed = frac >= 0.9;
  r.detail = "agreement with exhaustive MAP on " + std::to_string(agree) + "/200 instances (" + fmt(100.0 * frac) +
             "%, need >= 90%)";
  return r;
}

OracleReport fronthaul_suite() {
  Rng rng(kOracleSeed + 5);
  int failures = 0;
  std::string first_bad;
  for (int i = 0; i < 20; ++i) {
    SimConfig c;
    const int side = std::uniform_int_distribution<int>(1, 3)(rng);
    c.L = side * side;
    c.K = std::uniform_int_distribution<int>(1, 6)(rng);
    c.N = std::uniform_int_distribution<int>(1, 2)(rng);
    c.Tp = std::uniform_int_distribution<int>(1, 4)(rng);
    c.Td = std::uniform_int_distribution<int>(0, 5)(rng);
    c.modulation = i % 2 ? Modulation::kQam4 : Modulation::kBpskData;
    c.i_max = 3;
    c.jac_i_max = 3;
    const Geometry g = place_network(c, rng);
    const NetworkScenario s = make_scenario(c, g, compute_large_scale(c, g), rng);
    const JacResult jr = jac_ep_run(s, jac_options(c));
    const JacdResult dr = jacd_run(s, jr.priors, jacd_options(c));
    const int M = c.constellation_size();
    const std::int64_t want = 2LL * c.L * c.K * (static_cast<std::int64_t>(c.Td) * (M - 1) + 1);
    if (dr.fronthaul_reals_per_iter != want || dr.fronthaul_reals_total != want * c.i_max) {
      ++failures;
      if (first_bad.empty()) {
        first_bad = "; first mismatch counted " + std::to_string(dr.fronthaul_reals_per_iter) + " expected " +
                    std::to_string(want);
      }
    }
  }
  OracleReport r;
  r.passed = failures == 0;
  r.detail = "20 random configs; runtime count vs 2LK(Td(M-1)+1), failures " + std::to_string(failures) + first_bad;
  return r;
}

struct PairedCheck {
  std::string label;
  BootstrapInterval ci;
  std::size_t pairs = 0;
  bool ok = false;
};

// Pairs (upp, ue) rows of `a` and `b`; passes when the 95% interval of
// median(a) - median(b) lies at or below zero.
PairedCheck paired_not_worse(const std::string& label, const CampaignResult& ra, Algorithm aa,
                             const CampaignResult& rb, Algorithm ab, const std::string& metric,
                             std::uint64_t seed) {
  std::map<std::pair<int, int>, double> left;
  for (const auto& row : ra.rows) {
    if (row.algorithm == aa && row.metric == metric) left[{row.upp, row.ue}] = row.value;
  }
  std::vector<double> va, vb;
  for (const auto& row : rb.rows) {
    if (row.algorithm != ab || row.metric != metric) continue;
    const auto it = left.find({row.upp, row.ue});
    if (it == left.end()) continue;
    va.push_back(it->second);
    vb.push_back(row.value);
  }
  PairedCheck p;
  p.label = label;
  p.pairs = va.size();
  if (va.empty()) return p;
  p.ci = paired_bootstrap_median_diff(va, vb, 2000, 0.95, seed);
  p.ok = p.ci.upper <= 0.0;
  return p;
}

std::string describe(const PairedCheck& p) {
  return p.label + " diff " + fmt(p.ci.estimate) + " [" + fmt(p.ci.lower) + ", " + fmt(p.ci.upper) + "] " +
         (p.ok ? "ok" : "FAIL");
}

OracleReport trend_suite(int workers) {
  CampaignConfig base;
  base.n_upp = 10;
  base.n_realizations = 100;
  base.algorithms = {Algorithm::kJacdEp, Algorithm::kGenieMmse};
  base.workers = workers;
  base.sim.seed = kOracleSeed + 6;
  CampaignConfig c10 = base, c30 = base;
  c10.sim.Td = 10;
  c30.sim.Td = 30;
  const CampaignResult r10 = run_campaign(c10);
  const CampaignResult r30 = run_campaign(c30);

  std::vector<PairedCheck> checks;
  const auto J = Algorithm::kJacdEp;
  const auto G = Algorithm::kGenieMmse;
  checks.push_back(paired_not_worse("ser(Td30)-ser(Td10)", r30, J, r10, J, "ser", 1));
  checks.push_back(paired_not_worse("nmse(Td30)-nmse(Td10)", r30, J, r10, J, "nmse", 2));
  checks.push_back(paired_not_worse("der(Td30)-der(Td10)", r30, J, r10, J, "der", 3));
  checks.push_back(paired_not_worse("ser genie-jacd Td10", r10, G, r10, J, "ser", 4));
  checks.push_back(paired_not_worse("ser genie-jacd Td30", r30, G, r30, J, "ser", 5));

  OracleReport r;
  r.passed = std::all_of(checks.begin(), checks.end(), [](const PairedCheck& p) { return p.ok; });
  for (const auto& p : checks) r.detail += (r.detail.empty() ? "" : "; ") + describe(p);
  r.detail += "; medians ser " + fmt(median(r10.values(J, "ser"))) + " -> " + fmt(median(r30.values(J, "ser"))) +
              ", genie " + fmt(median(r10.values(G, "ser"))) + " / " + fmt(median(r30.values(G, "ser")));
  return r;
}

OracleReport pc_suite() {
  Rng rng(kOracleSeed + 7);
  constexpr int kRealizations = 500;
  SimConfig c;
  c.pilot_mode = PilotMode::kCodebook;
  c.codebook_size = 4;
  c.Td = 0;
  SimConfig off = c;
  off.pc_correction = false;
  c.pc_correction = true;
  SimConfig swapped = c;
  swapped.pc_xi_of_interferer = true;
  std::vector<double> with, without, with_swapped;
  for (int i = 0; i < kRealizations; ++i) {
    Geometry g = place_network(c, rng);
    // Users 0 and 1 share a pilot and sit within 50 m (horizontal) of one AP.
    const int ap = std::uniform_int_distribution<int>(0, c.L - 1)(rng);
    for (int k = 0; k < 2; ++k) {
      const double radius = 50.0 * std::sqrt(uniform(rng, 0.0, 1.0));
      const double angle = uniform(rng, 0.0, 2 * std::numbers::pi);
      const auto& a = g.ap_positions[static_cast<std::size_t>(ap)];
      g.ue_positions[static_cast<std::size_t>(k)] = {a[0] + radius * std::cos(angle), a[1] + radius * std::sin(angle),
                                                     0.0};
    }
    NetworkScenario s = make_scenario(c, g, compute_large_scale(c, g), rng);
    s.pilots.symbols.row(1) = s.pilots.symbols.row(0);
    s.pilots.collisions = pilot_collisions(s.pilots.symbols);
    s.active[0] = s.active[1] = 1;
    s.Y = synthesize_received(s, rng);

    const JacResult a = jac_ep_run(s, jac_options(c));
    const JacResult b = jac_ep_run(s, jac_options(off));
    const JacResult d = jac_ep_run(s, jac_options(swapped));
    double sa = 0.0, sb = 0.0, sd = 0.0;
    for (int k = 0; k < 2; ++k) {
      sa += nmse_ratio(s, a.h_hat, k).value_or(0.0);
      sb += nmse_ratio(s, b.h_hat, k).value_or(0.0);
      sd += nmse_ratio(s, d.h_hat, k).value_or(0.0);
    }
    with.push_back(sa / 2.0);
    without.push_back(sb / 2.0);
    with_swapped.push_back(sd / 2.0);
  }
  const BootstrapInterval ci = paired_bootstrap_median_diff(with, without, 2000, 0.95, 7);
  // Informational only: the interferer-correlation variant of the same term.
  const BootstrapInterval alt = paired_bootstrap_median_diff(with_swapped, without, 2000, 0.95, 7);
  OracleReport r;
  r.passed = ci.estimate <= 0.0 && ci.upper < 0.0;
  r.detail = "500 paired realizations; median nmse corrected " + fmt(median(with)) + " vs uncorrected " +
             fmt(median(without)) + ", diff " + fmt(ci.estimate) + " 95% [" + fmt(ci.lower) + ", " + fmt(ci.upper) + "]" +
             "; interferer-xi variant diff " + fmt(alt.estimate) + " [" + fmt(alt.lower) + ", " + fmt(alt.upper) + "]";
  return r;
}

std::map<std::string, std::string> read_dir(const std::filesystem::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    std::ifstream f(e.path(), std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    files[e.path().filename().string()] = ss.str();
  }
  return files;
}

OracleReport determinism_suite() {
  namespace fs = std::filesystem;
  CampaignConfig c;
  c.sim.L = 4;
  c.sim.K = 6;
  c.sim.Tp = 4;
  c.sim.Td = 4;
  c.sim.ap_spacing_m = 200.0;
  c.n_upp = 2;
  c.n_realizations = 6;
  c.sim.seed = kOracleSeed + 8;
  const fs::path root = fs::temp_directory_path() / ("jacdep_det_" + std::to_string(::getpid()));
  std::map<std::string, std::string> out[2];
  for (int i = 0; i < 2; ++i) {
    c.workers = i + 1;
    const fs::path dir = root / std::to_string(c.workers);
    write_results(run_campaign(c), dir.string());
    out[i] = read_dir(dir);
  }
  std::error_code ec;
  fs::remove_all(root, ec);

  int compared = 0, differing = 0;
  for (const auto& [name, text] : out[0]) {
    if (name.size() < 4 || name.substr(name.size() - 4) != ".csv") continue;
    ++compared;
    const auto it = out[1].find(name);
    differing += it == out[1].end() || it->second != text;
  }
  OracleReport r;
  r.passed = compared > 0 && differing == 0 && out[0].size() == out[1].size();
  r.detail = "workers 1 vs 2: " + std::to_string(compared) + " CSV files compared, " + std::to_string(differing) +
             " differ";
  return r;
}

}  // namespace

const std::vector<std::string>& oracle_suites() {
  static const std::vector<std::string> names = {"gaussian", "moments", "pilot", "lmmse",      "map",
                                                 "fronthaul", "trend",  "pc",    "determinism"};
  return names;
}

bool is_oracle_suite(const std::string& name) {
  const auto& n = oracle_suites();
  return std::find(n.begin(), n.end(), name) != n.end();
}

OracleReport run_oracle(const std::string& name, int workers) {
  const auto start = std::chrono::steady_clock::now();
  OracleReport r;
  if (name == "gaussian") r = gaussian_suite();
  else if (name == "moments") r = moments_suite();
  else if (name == "pilot") r = pilot_suite();
  else if (name == "lmmse") r = lmmse_suite();
  else if (name == "map") r = map_suite();
  else if (name == "fronthaul") r = fronthaul_suite();
  else if (name == "trend") r = trend_suite(workers);
  else if (name == "pc") r = pc_suite();
  else if (name == "determinism") r = determinism_suite();
  else throw Error(ErrorCode::kRangeError, "unknown oracle suite '" + name + "'");
  r.name = name;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace jacdep
