// SPDX-License-Identifier: Apache-2.0
#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "error.hpp"

namespace jacdep {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct LineError {
  std::string what;
};

double to_double(const std::string& v) {
  double out = 0.0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size()) throw LineError{"'" + v + "' is not a number"};
  return out;
}

template <typename I>
I to_int(const std::string& v) {
  I out = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), out);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size()) throw LineError{"'" + v + "' is not an integer"};
  return out;
}

bool to_bool(const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw LineError{"'" + v + "' is not a boolean"};
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Algorithm algorithm_from(const std::string& v) {
  if (v == "jac_ep") return Algorithm::kJacEp;
  if (v == "jacd_ep") return Algorithm::kJacdEp;
  if (v == "genie_mmse") return Algorithm::kGenieMmse;
  throw LineError{"unknown algorithm '" + v + "'"};
}

using Setter = std::function<void(CampaignConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"L", [](CampaignConfig& c, const std::string& v) { c.sim.L = to_int<int>(v); }},
      {"N", [](CampaignConfig& c, const std::string& v) { c.sim.N = to_int<int>(v); }},
      {"K", [](CampaignConfig& c, const std::string& v) { c.sim.K = to_int<int>(v); }},
      {"T_p", [](CampaignConfig& c, const std::string& v) { c.sim.Tp = to_int<int>(v); }},
      {"T_d", [](CampaignConfig& c, const std::string& v) { c.sim.Td = to_int<int>(v); }},
      {"lambda", [](CampaignConfig& c, const std::string& v) { c.sim.lambda = to_double(v); }},
      {"tx_power_dbm", [](CampaignConfig& c, const std::string& v) { c.sim.tx_power_dbm = to_double(v); }},
      {"noise_power_dbm", [](CampaignConfig& c, const std::string& v) { c.sim.noise_power_dbm = to_double(v); }},
      {"area_m", [](CampaignConfig& c, const std::string& v) { c.sim.area_m = to_double(v); }},
      {"ap_height_m", [](CampaignConfig& c, const std::string& v) { c.sim.ap_height_m = to_double(v); }},
      {"ap_spacing_m", [](CampaignConfig& c, const std::string& v) { c.sim.ap_spacing_m = to_double(v); }},
      {"pathloss_intercept_db",
       [](CampaignConfig& c, const std::string& v) { c.sim.pathloss_intercept_db = to_double(v); }},
      {"pathloss_slope", [](CampaignConfig& c, const std::string& v) { c.sim.pathloss_slope = to_double(v); }},
      {"modulation",
       [](CampaignConfig& c, const std::string& v) {
         if (v == "qam4") c.sim.modulation = Modulation::kQam4;
         else if (v == "bpsk") c.sim.modulation = Modulation::kBpskData;
         else throw LineError{"modulation must be qam4 or bpsk"};
       }},
      {"pilot_mode",
       [](CampaignConfig& c, const std::string& v) {
         if (v == "iid_bpsk") c.sim.pilot_mode = PilotMode::kIidBpsk;
         else if (v == "codebook") c.sim.pilot_mode = PilotMode::kCodebook;
         else throw LineError{"pilot_mode must be iid_bpsk or codebook"};
       }},
      {"codebook_size", [](CampaignConfig& c, const std::string& v) { c.sim.codebook_size = to_int<int>(v); }},
      {"correlation",
       [](CampaignConfig& c, const std::string& v) {
         if (v == "identity") c.sim.correlation = CorrelationMode::kIdentity;
         else if (v == "exponential") c.sim.correlation = CorrelationMode::kExponential;
         else throw LineError{"correlation must be identity or exponential"};
       }},
      {"rho", [](CampaignConfig& c, const std::string& v) { c.sim.rho = to_double(v); }},
      {"eta", [](CampaignConfig& c, const std::string& v) { c.sim.eta = to_double(v); }},
      {"i_max", [](CampaignConfig& c, const std::string& v) { c.sim.i_max = to_int<int>(v); }},
      {"jac_i_max", [](CampaignConfig& c, const std::string& v) { c.sim.jac_i_max = to_int<int>(v); }},
      {"pc_correction", [](CampaignConfig& c, const std::string& v) { c.sim.pc_correction = to_bool(v); }},
      {"pc_correction_jacd",
       [](CampaignConfig& c, const std::string& v) { c.sim.pc_correction_jacd = to_bool(v); }},
      {"pc_xi_of_interferer",
       [](CampaignConfig& c, const std::string& v) { c.sim.pc_xi_of_interferer = to_bool(v); }},
      {"damp_first_iteration",
       [](CampaignConfig& c, const std::string& v) { c.sim.damp_first_iteration = to_bool(v); }},
      {"seed", [](CampaignConfig& c, const std::string& v) { c.sim.seed = to_int<std::uint64_t>(v); }},
      {"n_upp", [](CampaignConfig& c, const std::string& v) { c.n_upp = to_int<int>(v); }},
      {"n_realizations", [](CampaignConfig& c, const std::string& v) { c.n_realizations = to_int<int>(v); }},
      {"algorithms",
       [](CampaignConfig& c, const std::string& v) {
         c.algorithms.clear();
         for (const auto& a : split_list(v)) {
           const Algorithm alg = algorithm_from(a);
           if (!c.runs(alg)) c.algorithms.push_back(alg);
         }
         std::sort(c.algorithms.begin(), c.algorithms.end());
       }},
      {"output_dir", [](CampaignConfig& c, const std::string& v) { c.output_dir = v; }},
      {"workers", [](CampaignConfig& c, const std::string& v) { c.workers = to_int<int>(v); }},
      {"jacd_priors",
       [](CampaignConfig& c, const std::string& v) {
         if (v == "jac_ep") c.jacd_priors = PriorSource::kJacEp;
         else if (v == "neutral") c.jacd_priors = PriorSource::kNeutral;
         else throw LineError{"jacd_priors must be jac_ep or neutral"};
       }},
  };
  return table;
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

}  // namespace

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kJacEp: return "jac_ep";
    case Algorithm::kJacdEp: return "jacd_ep";
    case Algorithm::kGenieMmse: return "genie_mmse";
  }
  return "unknown";
}

bool CampaignConfig::runs(Algorithm a) const {
  return std::find(algorithms.begin(), algorithms.end(), a) != algorithms.end();
}

void CampaignConfig::validate() const {
  sim.validate();
  if (n_upp < 1 || n_realizations < 1) throw Error(ErrorCode::kRangeError, "n_upp and n_realizations must be positive");
  if (workers < 1) throw Error(ErrorCode::kRangeError, "workers must be positive");
  if (algorithms.empty()) throw Error(ErrorCode::kRangeError, "no algorithm selected");
}

CampaignConfig parse_config(const std::string& text) {
  CampaignConfig c;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw Error(ErrorCode::kUnknownKey, "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    try {
      it->second(c, value);
    } catch (const LineError& e) {
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) + ": " + e.what);
    }
  }
  c.validate();
  return c;
}

CampaignConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIoError, "cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string config_echo(const CampaignConfig& c) {
  const SimConfig& s = c.sim;
  std::string algs;
  for (Algorithm a : c.algorithms) algs += (algs.empty() ? "" : ",") + std::string(algorithm_name(a));
  std::ostringstream o;
  o << "L = " << s.L << "\n"
    << "N = " << s.N << "\n"
    << "K = " << s.K << "\n"
    << "T_p = " << s.Tp << "\n"
    << "T_d = " << s.Td << "\n"
    << "lambda = " << format_double(s.lambda) << "\n"
    << "tx_power_dbm = " << format_double(s.tx_power_dbm) << "\n"
    << "noise_power_dbm = " << format_double(s.noise_power_dbm) << "\n"
    << "area_m = " << format_double(s.area_m) << "\n"
    << "ap_height_m = " << format_double(s.ap_height_m) << "\n"
    << "ap_spacing_m = " << format_double(s.ap_spacing_m) << "\n"
    << "pathloss_intercept_db = " << format_double(s.pathloss_intercept_db) << "\n"
    << "pathloss_slope = " << format_double(s.pathloss_slope) << "\n"
    << "modulation = " << (s.modulation == Modulation::kQam4 ? "qam4" : "bpsk") << "\n"
    << "pilot_mode = " << (s.pilot_mode == PilotMode::kIidBpsk ? "iid_bpsk" : "codebook") << "\n"
    << "codebook_size = " << s.codebook_size << "\n"
    << "correlation = " << (s.correlation == CorrelationMode::kIdentity ? "identity" : "exponential") << "\n"
    << "rho = " << format_double(s.rho) << "\n"
    << "eta = " << format_double(s.eta) << "\n"
    << "i_max = " << s.i_max << "\n"
    << "jac_i_max = " << s.jac_i_max << "\n"
    << "pc_correction = " << yes_no(s.pc_correction) << "\n"
    << "pc_correction_jacd = " << yes_no(s.pc_correction_jacd) << "\n"
    << "pc_xi_of_interferer = " << yes_no(s.pc_xi_of_interferer) << "\n"
    << "damp_first_iteration = " << yes_no(s.damp_first_iteration) << "\n"
    << "seed = " << s.seed << "\n"
    << "n_upp = " << c.n_upp << "\n"
    << "n_realizations = " << c.n_realizations << "\n"
    << "algorithms = " << algs << "\n"
    << "output_dir = " << c.output_dir << "\n"
    << "jacd_priors = " << (c.jacd_priors == PriorSource::kJacEp ? "jac_ep" : "neutral") << "\n";
  return o.str();
}

void apply_environment(CampaignConfig& c) {
  const char* w = std::getenv("JACDEP_WORKERS");
  if (w == nullptr || *w == '\0') return;
  int workers = 0;
  try {
    workers = to_int<int>(trim(w));
  } catch (const LineError& e) {
    throw Error(ErrorCode::kParseError, "JACDEP_WORKERS: " + e.what);
  }
  if (workers < 1) throw Error(ErrorCode::kRangeError, "JACDEP_WORKERS must be positive");
  c.workers = workers;
}

}  // namespace jacdep
