// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <unistd.h>

#include "campaign.hpp"
#include "test_util.hpp"

using namespace jacdep;
namespace fs = std::filesystem;

namespace {

CampaignConfig small_campaign() {
  CampaignConfig c;
  c.sim.L = 4;
  c.sim.K = 5;
  c.sim.Tp = 4;
  c.sim.Td = 3;
  c.sim.ap_spacing_m = 200.0;
  c.sim.i_max = 5;
  c.sim.jac_i_max = 5;
  c.sim.seed = 99;
  c.n_upp = 2;
  c.n_realizations = 3;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  return fs::temp_directory_path() / ("jacdep_test_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST_CASE("seeds depend on every index") {
  CHECK(trial_seed(1, 0, 0) != trial_seed(1, 0, 1));
  CHECK(trial_seed(1, 0, 1) != trial_seed(1, 1, 0));
  CHECK(trial_seed(1, 2, 3) != trial_seed(2, 2, 3));
  CHECK(trial_seed(7, 2, 3) == trial_seed(7, 2, 3));
  CHECK(geometry_seed(7, 2) != geometry_seed(7, 3));
}

TEST_CASE("large-scale fading is fixed within a UPP outcome") {
  const CampaignConfig c = small_campaign();
  const UppNetwork net = draw_upp(c.sim, 1);
  const NetworkScenario a = draw_realization(c.sim, net, 1, 0);
  const NetworkScenario b = draw_realization(c.sim, net, 1, 1);
  CHECK(a.xi == b.xi);
  CHECK(a.H[0] != b.H[0]);
  const UppNetwork other = draw_upp(c.sim, 0);
  CHECK(other.large_scale.xi != net.large_scale.xi);
  // Any single trial can be redrawn on its own.
  const NetworkScenario again = draw_realization(c.sim, draw_upp(c.sim, 1), 1, 1);
  CHECK(again.Y[2] == b.Y[2]);
}

TEST_CASE("run_campaign") {
  CampaignConfig c = small_campaign();
  const CampaignResult r = run_campaign(c);
  const std::size_t bound = static_cast<std::size_t>(c.n_upp * c.sim.K) * (2 + 3 + 1);
  CHECK(r.rows.size() <= bound);
  // DER rows are never absent.
  CHECK(r.values(Algorithm::kJacEp, "der").size() == static_cast<std::size_t>(c.n_upp * c.sim.K));
  CHECK(r.values(Algorithm::kJacdEp, "der").size() == static_cast<std::size_t>(c.n_upp * c.sim.K));
  for (const MetricRow& row : r.rows) {
    if (row.metric != "nmse") {
      CHECK(row.value >= 0.0);
      CHECK(row.value <= 1.0);
    }
    CHECK(row.n_samples >= 1);
  }
  CHECK(r.large_scale_hashes.size() == 2);
  CHECK(r.fronthaul_reals_per_iter == 2 * 4 * 5 * (3 * 3 + 1));

  const std::string csv = metrics_csv(r);
  CHECK(csv.rfind("upp_id,ue_id,algorithm,metric,value,n_samples\n", 0) == 0);
  CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) == r.rows.size() + 1);
  CHECK(metrics_csv(run_campaign(c)) == csv);

  c.workers = 3;
  CHECK(metrics_csv(run_campaign(c)) == csv);
}

TEST_CASE("single-trial campaign is deterministic") {
  CampaignConfig c = small_campaign();
  c.n_upp = 1;
  c.n_realizations = 1;
  CHECK(metrics_csv(run_campaign(c)) == metrics_csv(run_campaign(c)));
}

TEST_CASE("genie-only campaign") {
  CampaignConfig c = small_campaign();
  c.algorithms = {Algorithm::kGenieMmse};
  const CampaignResult r = run_campaign(c);
  CHECK(r.fronthaul_reals_per_iter == 0);
  CHECK_FALSE(r.rows.empty());
  for (const MetricRow& row : r.rows) {
    CHECK(row.algorithm == Algorithm::kGenieMmse);
    CHECK(row.metric == "ser");
  }
}

TEST_CASE("write_results") {
  const CampaignResult r = run_campaign(small_campaign());
  const fs::path dir = scratch("write");
  write_results(r, dir.string());
  for (const char* f : {"config_echo.txt", "metrics.csv", "summary.txt", "cdf_der_jacd_ep.csv", "cdf_ser_genie_mmse.csv",
                        "cdf_nmse_jac_ep.csv"}) {
    CHECK_MESSAGE(fs::exists(dir / f), f);
  }
  std::ifstream cdf(dir / "cdf_der_jacd_ep.csv");
  std::string line;
  std::getline(cdf, line);
  CHECK(line == "value,cdf");
  double pv = -1e300, pc = 0.0;
  int rows = 0;
  while (std::getline(cdf, line)) {
    const auto comma = line.find(',');
    const double v = std::stod(line.substr(0, comma));
    const double p = std::stod(line.substr(comma + 1));
    CHECK(v >= pv);
    CHECK(p >= pc);
    pv = v;
    pc = p;
    ++rows;
  }
  CHECK(rows >= 1);
  CHECK(pc == 1.0);

  std::map<std::string, std::string> first;
  for (const auto& e : fs::directory_iterator(dir)) first[e.path().filename().string()] = slurp(e.path());
  write_results(r, dir.string());
  for (const auto& [name, text] : first) CHECK(slurp(dir / name) == text);

  CHECK(summary_text(r).find("wall") == std::string::npos);
  fs::remove_all(dir);

  const fs::path blocked = scratch("blocked");
  std::ofstream(blocked) << "file, not a directory";
  CHECK_THROWS_CODE(write_results(r, (blocked / "sub").string()), ErrorCode::kIoError);
  fs::remove(blocked);
}

TEST_CASE("errors carry the trial indices") {
  CampaignConfig c = small_campaign();
  c.sim.L = 3;  // not a square grid
  try {
    run_campaign(c);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNonSquareL);
    CHECK(std::string(e.what()).find("upp 0: ") != std::string::npos);
  }
}
