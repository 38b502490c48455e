// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "config.hpp"
#include "edge_state.hpp"
#include "jac_ep.hpp"
#include "scenario_io.hpp"
#include "test_util.hpp"

using namespace jacdep;
using namespace testutil;

TEST_CASE("parse_config defaults") {
  const CampaignConfig c = parse_config("");
  CHECK(c.sim.L == 16);
  CHECK(c.sim.N == 1);
  CHECK(c.sim.K == 16);
  CHECK(c.sim.lambda == 0.5);
  CHECK(c.sim.Tp == 8);
  CHECK(c.sim.Td == 10);
  CHECK(c.sim.eta == 0.5);
  CHECK(c.sim.i_max == 20);
  CHECK(c.sim.tx_power_dbm == 16.0);
  CHECK(c.sim.noise_power_dbm == -96.0);
  CHECK(c.n_upp == 100);
  CHECK(c.n_realizations == 1000);
  CHECK(c.algorithms.size() == 3);
}

TEST_CASE("parse_config values and errors") {
  CHECK(parse_config("T_d = 30").sim.Td == 30);
  const CampaignConfig c = parse_config(
      "# comment\n"
      "K = 8   # trailing comment\n"
      "modulation = bpsk\n"
      "pilot_mode = codebook\n"
      "algorithms = genie_mmse, jac_ep\n"
      "pc_correction = false\n"
      "seed = 12345678901\n");
  CHECK(c.sim.K == 8);
  CHECK(c.sim.modulation == Modulation::kBpskData);
  CHECK(c.sim.pilot_mode == PilotMode::kCodebook);
  CHECK(c.algorithms == std::vector<Algorithm>{Algorithm::kJacEp, Algorithm::kGenieMmse});
  CHECK_FALSE(c.sim.pc_correction);
  CHECK(c.sim.seed == 12345678901ULL);

  CHECK_THROWS_CODE(parse_config("eta = 1.5"), ErrorCode::kRangeError);
  CHECK_THROWS_CODE(parse_config("n_upp = 0"), ErrorCode::kRangeError);
  CHECK_THROWS_CODE(parse_config("bogus = 1"), ErrorCode::kUnknownKey);
  CHECK_THROWS_CODE(parse_config("K = many"), ErrorCode::kParseError);
  try {
    parse_config("K = 4\n\nL 16\n");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kParseError);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_CODE(load_config("/nonexistent/dir/config.txt"), ErrorCode::kIoError);
}

TEST_CASE("config_echo reads back") {
  CampaignConfig c = parse_config("lambda = 0.3\nrho = 0.25\ncorrelation = exponential\nN = 2\nworkers = 3\n");
  const std::string echo = config_echo(c);
  CHECK(echo.find("workers") == std::string::npos);
  CampaignConfig back = parse_config(echo);
  CHECK(config_echo(back) == echo);
  CHECK(back.sim.lambda == 0.3);
  CHECK(back.sim.rho == 0.25);
}

TEST_CASE("worker count from the environment") {
  CampaignConfig c;
  ::setenv("JACDEP_WORKERS", "4", 1);
  apply_environment(c);
  CHECK(c.workers == 4);
  ::setenv("JACDEP_WORKERS", "0", 1);
  CHECK_THROWS_CODE(apply_environment(c), ErrorCode::kRangeError);
  ::unsetenv("JACDEP_WORKERS");
  apply_environment(c);
  CHECK(c.workers == 4);
}

TEST_CASE("format_double") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("scenario JSON round trip") {
  SimConfig c;
  c.L = 4;
  c.N = 2;
  c.K = 3;
  c.Tp = 2;
  c.Td = 2;
  c.correlation = CorrelationMode::kExponential;
  c.rho = 0.4;
  Rng rng(51);
  Geometry g = place_network(c, rng);
  NetworkScenario s = make_scenario(c, g, compute_large_scale(c, g), rng);
  NetworkScenario b = scenario_from_json(scenario_to_json(s));
  CHECK(b.L == s.L);
  CHECK(b.Tp == s.Tp);
  CHECK(b.sigma_n2 == s.sigma_n2);
  CHECK(b.xi == s.xi);
  CHECK(b.active == s.active);
  CHECK(b.pilots.symbols == s.pilots.symbols);
  CHECK(b.pilots.collisions == s.pilots.collisions);
  CHECK(b.data.indices == s.data.indices);
  for (int l = 0; l < s.L; ++l) {
    CHECK(b.H[l] == s.H[l]);
    CHECK(b.Y[l] == s.Y[l]);
  }
  for (std::size_t i = 0; i < s.Xi.size(); ++i) CHECK(b.Xi[i] == s.Xi[i]);
  CHECK(scenario_to_json(b) == scenario_to_json(s));

  const JacResult r = jac_ep_run(s, jac_options(c));
  const Priors p = priors_from_json(priors_to_json(r.priors));
  for (int k = 0; k < c.K; ++k) {
    CHECK(p.activity[k].log_prob(0) == doctest::Approx(r.priors.activity[k].log_prob(0)).epsilon(1e-14));
    CHECK(p.activity[k].log_prob(1) == doctest::Approx(r.priors.activity[k].log_prob(1)).epsilon(1e-14));
  }
  for (std::size_t i = 0; i < p.channel.size(); ++i) {
    CHECK(p.channel[i].mean == r.priors.channel[i].mean);
    CHECK(p.channel[i].cov == r.priors.channel[i].cov);
  }
  Priors certain = r.priors;
  const double lw[2] = {-std::numeric_limits<double>::infinity(), 0.0};
  certain.activity[0] = CategoricalMessage::from_log_weights(lw);
  CHECK(priors_from_json(priors_to_json(certain)).p_active(0) == 1.0);

  CHECK_THROWS_CODE(scenario_from_json("{not json"), ErrorCode::kParseError);
  nlohmann::json j = nlohmann::json::parse(scenario_to_json(s));
  j["K"] = 4;
  CHECK_THROWS_CODE(scenario_from_json(j.dump()), ErrorCode::kDimensionMismatch);
}
