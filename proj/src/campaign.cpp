// SPDX-License-Identifier: Apache-2.0
#include "campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstring>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "baselines.hpp"
#include "error.hpp"
#include "jac_ep.hpp"
#include "jacd_ep.hpp"
#include "metrics.hpp"

namespace jacdep {
namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t kGeometryTag = ~std::uint64_t{0};

std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t h = 0xcbf29ce484222325ULL) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::size_t slot(Algorithm a) { return static_cast<std::size_t>(a); }

std::vector<UeOutcome> activity_outcomes(const NetworkScenario& s, const std::vector<std::uint8_t>& u_hat,
                                         const std::vector<CVector>& h_hat) {
  std::vector<UeOutcome> out(static_cast<std::size_t>(s.K));
  for (int k = 0; k < s.K; ++k) {
    UeOutcome& o = out[static_cast<std::size_t>(k)];
    o.active = s.active[static_cast<std::size_t>(k)] != 0;
    o.error_activity = (u_hat[static_cast<std::size_t>(k)] != 0) != o.active;
    if (o.active) o.nmse = nmse_ratio(s, h_hat, k);
  }
  return out;
}

void add_symbol_errors(const NetworkScenario& s, const Eigen::MatrixXi& x_hat, std::vector<UeOutcome>& out) {
  for (int k = 0; k < s.K; ++k) {
    const SymbolErrors e = count_symbol_errors(x_hat, s.data.indices, s.active, k);
    out[static_cast<std::size_t>(k)].symbol_errors = e.errors;
    out[static_cast<std::size_t>(k)].symbols = e.symbols;
  }
}

// Running sums for one (ue, algorithm).
struct Accumulator {
  std::int64_t trials = 0;
  std::int64_t activity_errors = 0;
  double nmse_sum = 0.0;
  std::int64_t nmse_count = 0;
  std::int64_t symbol_errors = 0;
  std::int64_t symbols = 0;
  std::int64_t ser_count = 0;

  void add(const UeOutcome& o) {
    ++trials;
    activity_errors += o.error_activity;
    if (o.nmse) {
      nmse_sum += *o.nmse;
      ++nmse_count;
    }
    if (o.symbols > 0) {
      symbol_errors += o.symbol_errors;
      symbols += o.symbols;
      ++ser_count;
    }
  }
};

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  f << text;
  f.close();
  if (!f) throw Error(ErrorCode::kIoError, "failed writing " + path.string());
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t upp, std::uint64_t realization) {
  return splitmix(splitmix(splitmix(seed) ^ upp) ^ realization);
}

std::uint64_t geometry_seed(std::uint64_t seed, std::uint64_t upp) { return trial_seed(seed, upp, kGeometryTag); }

UppNetwork draw_upp(const SimConfig& config, int upp) {
  Rng rng(geometry_seed(config.seed, static_cast<std::uint64_t>(upp)));
  UppNetwork net;
  net.geometry = place_network(config, rng);
  net.large_scale = compute_large_scale(config, net.geometry);
  return net;
}

NetworkScenario draw_realization(const SimConfig& config, const UppNetwork& net, int upp, int realization) {
  Rng rng(trial_seed(config.seed, static_cast<std::uint64_t>(upp), static_cast<std::uint64_t>(realization)));
  return make_scenario(config, net.geometry, net.large_scale, rng);
}

TrialOutcome run_trial(const CampaignConfig& config, const UppNetwork& net, int upp, int realization) {
  TrialOutcome out;
  out.upp = upp;
  out.realization = realization;
  const NetworkScenario s = draw_realization(config.sim, net, upp, realization);

  const bool want_jacd = config.runs(Algorithm::kJacdEp);
  std::optional<JacResult> jac;
  if (config.runs(Algorithm::kJacEp) || (want_jacd && config.jacd_priors == PriorSource::kJacEp)) {
    jac = jac_ep_run(s, jac_options(config.sim));
  }
  if (config.runs(Algorithm::kJacEp)) {
    out.per_algorithm[slot(Algorithm::kJacEp)] = activity_outcomes(s, jac->u_hat, jac->h_hat);
  }
  if (want_jacd) {
    const Priors priors = config.jacd_priors == PriorSource::kJacEp ? jac->priors : Priors::neutral(s);
    const JacdResult r = jacd_run(s, priors, jacd_options(config.sim));
    auto& o = out.per_algorithm[slot(Algorithm::kJacdEp)];
    o = activity_outcomes(s, r.u_hat, r.h_hat);
    add_symbol_errors(s, r.x_hat, o);
    out.fronthaul_reals_per_iter = r.fronthaul_reals_per_iter;
  }
  if (config.runs(Algorithm::kGenieMmse)) {
    auto& o = out.per_algorithm[slot(Algorithm::kGenieMmse)];
    o.assign(static_cast<std::size_t>(s.K), UeOutcome{});
    for (int k = 0; k < s.K; ++k) o[static_cast<std::size_t>(k)].active = s.active[static_cast<std::size_t>(k)] != 0;
    const GenieResult g = genie_mmse_detect(s);
    if (!g.empty()) add_symbol_errors(s, g.x_hat, o);
  }
  return out;
}

std::vector<std::string> metrics_of(Algorithm a) {
  switch (a) {
    case Algorithm::kJacEp: return {"der", "nmse"};
    case Algorithm::kJacdEp: return {"der", "nmse", "ser"};
    case Algorithm::kGenieMmse: return {"ser"};
  }
  return {};
}

std::vector<double> CampaignResult::values(Algorithm a, const std::string& metric) const {
  std::vector<double> v;
  for (const auto& r : rows) {
    if (r.algorithm == a && r.metric == metric) v.push_back(r.value);
  }
  return v;
}

std::optional<double> CampaignResult::value(int upp, int ue, Algorithm a, const std::string& metric) const {
  for (const auto& r : rows) {
    if (r.upp == upp && r.ue == ue && r.algorithm == a && r.metric == metric) return r.value;
  }
  return std::nullopt;
}

namespace {

// Same code, message prefixed with the trial location.
Error annotated(const Error& e, const std::string& where) {
  std::string msg = e.what();
  const std::string code = std::string(to_string(e.code())) + ": ";
  if (msg.rfind(code, 0) == 0) msg.erase(0, code.size());
  return Error(e.code(), where + msg);
}

}  // namespace

CampaignResult run_campaign(const CampaignConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  CampaignResult result;
  result.config = config;
  const int K = config.sim.K;
  const int workers = std::max(1, std::min(config.workers, config.n_realizations));

  for (int upp = 0; upp < config.n_upp; ++upp) {
    UppNetwork net;
    try {
      net = draw_upp(config.sim, upp);
    } catch (const Error& e) {
      throw annotated(e, "upp " + std::to_string(upp) + ": ");
    }
    result.large_scale_hashes.push_back(
        fnv1a(net.large_scale.xi.data(), sizeof(double) * static_cast<std::size_t>(net.large_scale.xi.size())));

    std::vector<TrialOutcome> trials(static_cast<std::size_t>(config.n_realizations));
    std::vector<std::exception_ptr> errors(trials.size());
    std::atomic<int> next{0};
    auto work = [&] {
      for (int r = next++; r < config.n_realizations; r = next++) {
        try {
          trials[static_cast<std::size_t>(r)] = run_trial(config, net, upp, r);
        } catch (...) {
          errors[static_cast<std::size_t>(r)] = std::current_exception();
        }
      }
    };
    if (workers == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }
    for (std::size_t r = 0; r < errors.size(); ++r) {
      if (!errors[r]) continue;
      const std::string where = "upp " + std::to_string(upp) + " realization " + std::to_string(r) + ": ";
      try {
        std::rethrow_exception(errors[r]);
      } catch (const Error& e) {
        throw annotated(e, where);
      }
    }

    std::map<std::pair<int, Algorithm>, Accumulator> acc;
    for (const auto& t : trials) {
      for (Algorithm a : config.algorithms) {
        const auto& per = t.per_algorithm[slot(a)];
        for (int k = 0; k < K; ++k) acc[{k, a}].add(per[static_cast<std::size_t>(k)]);
      }
      if (config.runs(Algorithm::kJacdEp)) {
        result.fronthaul_reals_per_iter = t.fronthaul_reals_per_iter;
        result.fronthaul_reals_total += t.fronthaul_reals_per_iter * config.sim.i_max;
      }
    }
    for (int k = 0; k < K; ++k) {
      for (Algorithm a : config.algorithms) {
        const Accumulator& x = acc[{k, a}];
        for (const auto& m : metrics_of(a)) {
          MetricRow row{upp, k, a, m, 0.0, 0};
          if (m == "der") {
            row.value = static_cast<double>(x.activity_errors) / static_cast<double>(x.trials);
            row.n_samples = x.trials;
          } else if (m == "nmse") {
            if (x.nmse_count == 0) continue;
            row.value = x.nmse_sum / static_cast<double>(x.nmse_count);
            row.n_samples = x.nmse_count;
          } else {
            if (x.symbols == 0) continue;
            row.value = static_cast<double>(x.symbol_errors) / static_cast<double>(x.symbols);
            row.n_samples = x.ser_count;
          }
          result.rows.push_back(std::move(row));
        }
      }
    }
  }
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::string metrics_csv(const CampaignResult& result) {
  std::string out = "upp_id,ue_id,algorithm,metric,value,n_samples\n";
  for (const auto& r : result.rows) {
    out += std::to_string(r.upp) + "," + std::to_string(r.ue) + "," + algorithm_name(r.algorithm) + "," +
           r.metric + "," + format_double(r.value) + "," + std::to_string(r.n_samples) + "\n";
  }
  return out;
}

std::string summary_text(const CampaignResult& result) {
  std::string out;
  out += "seed = " + std::to_string(result.config.sim.seed) + "\n";
  out += "n_upp = " + std::to_string(result.config.n_upp) + "\n";
  out += "n_realizations = " + std::to_string(result.config.n_realizations) + "\n";
  for (Algorithm a : result.config.algorithms) {
    for (const auto& m : metrics_of(a)) {
      const std::vector<double> v = result.values(a, m);
      out += "median_" + m + "_" + algorithm_name(a) + " = " + (v.empty() ? "absent" : format_double(median(v))) +
             " (n = " + std::to_string(v.size()) + ")\n";
    }
  }
  if (result.config.runs(Algorithm::kJacdEp)) {
    out += "fronthaul_reals_per_iter = " + std::to_string(result.fronthaul_reals_per_iter) + "\n";
    out += "fronthaul_reals_total = " + std::to_string(result.fronthaul_reals_total) + "\n";
  }
  return out;
}

void write_results(const CampaignResult& result, const std::string& output_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(output_dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + output_dir + ": " + ec.message());
  const fs::path dir(output_dir);
  write_file(dir / "config_echo.txt", config_echo(result.config));
  write_file(dir / "metrics.csv", metrics_csv(result));
  for (Algorithm a : result.config.algorithms) {
    for (const auto& m : metrics_of(a)) {
      std::string text = "value,cdf\n";
      const std::vector<double> v = result.values(a, m);
      if (!v.empty()) {
        for (const auto& [x, f] : empirical_cdf(v)) text += format_double(x) + "," + format_double(f) + "\n";
      }
      write_file(dir / ("cdf_" + m + "_" + algorithm_name(a) + ".csv"), text);
    }
  }
  write_file(dir / "summary.txt", summary_text(result));
}

}  // namespace jacdep
