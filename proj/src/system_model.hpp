// SPDX-License-Identifier: Apache-2.0
//
// Uplink scenario generation: AP grid and UE drop, large-scale fading,
// spatial correlation, block Rayleigh channels, Bernoulli activity, BPSK
// pilots, data symbols and the received signal y_{l,t} = sum_k h_{l,k} u_k x_{kt} + n.
#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "gaussian.hpp"

namespace jacdep {

using Rng = std::mt19937_64;

enum class Modulation { kQam4, kBpskData };
enum class PilotMode { kIidBpsk, kCodebook };
enum class CorrelationMode { kIdentity, kExponential };

struct SimConfig {
  int L = 16;
  int N = 1;
  int K = 16;
  int Tp = 8;
  int Td = 10;
  double lambda = 0.5;
  double tx_power_dbm = 16.0;
  double noise_power_dbm = -96.0;
  double area_m = 400.0;
  double ap_height_m = 10.0;
  double ap_spacing_m = 100.0;
  double pathloss_intercept_db = -30.5;
  double pathloss_slope = 36.7;
  Modulation modulation = Modulation::kQam4;
  PilotMode pilot_mode = PilotMode::kIidBpsk;
  int codebook_size = 4;
  CorrelationMode correlation = CorrelationMode::kIdentity;
  double rho = 0.0;
  double eta = 0.5;
  int i_max = 20;      // JACD-EP sweeps
  int jac_i_max = 20;  // JAC-EP sweeps
  bool pc_correction = true;        // applied in JAC-EP pilot updates
  bool pc_correction_jacd = false;  // also apply it to the JACD-EP pilot columns
  bool pc_xi_of_interferer = false; // use Xi_{l,k'} instead of Xi_{l,k} in the correction
  bool damp_first_iteration = false;
  std::uint64_t seed = 1;

  int T() const { return Tp + Td; }
  double sigma_x2() const;
  double sigma_n2() const;
  int constellation_size() const;
  /// Throws RangeError / ConfigMismatch on violated invariants.
  void validate() const;
};

double dbm_to_watt(double dbm);

/// Constant-modulus constellation scaled so that |x|^2 = sigma_x^2.
class Constellation {
 public:
  static Constellation qam4(double sigma_x2);
  static Constellation bpsk(double sigma_x2);
  static Constellation for_config(const SimConfig& config);

  int size() const { return static_cast<int>(points_.size()); }
  Complex point(int i) const { return points_[static_cast<std::size_t>(i)]; }
  const std::vector<Complex>& points() const { return points_; }
  double sigma_x2() const { return sigma_x2_; }
  /// Nearest point by Euclidean distance, lowest index on ties.
  int nearest(Complex v) const;

 private:
  std::vector<Complex> points_;
  double sigma_x2_ = 1.0;
};

using Point3 = std::array<double, 3>;

struct Geometry {
  std::vector<Point3> ap_positions;
  std::vector<Point3> ue_positions;
};

struct LargeScale {
  Eigen::MatrixXd xi;        // L x K linear power gains
  std::vector<CMatrix> Xi;   // index l * K + k, trace = N * xi
};

struct PilotAssignment {
  Eigen::MatrixXcd symbols;                  // K x Tp
  std::vector<std::vector<int>> collisions;  // P_k, excludes k
};

struct DataSymbols {
  Eigen::MatrixXi indices;   // K x Td, into the constellation
  Eigen::MatrixXcd symbols;  // K x Td
};

struct NetworkScenario {
  int L = 0, N = 0, K = 0, Tp = 0, Td = 0;
  double lambda = 0.0;
  double sigma_x2 = 1.0;
  double sigma_n2 = 1.0;
  Modulation modulation = Modulation::kQam4;
  std::vector<Point3> ap_positions;
  std::vector<Point3> ue_positions;
  Eigen::MatrixXd xi;
  std::vector<CMatrix> Xi;
  std::vector<Eigen::MatrixXcd> H;  // L blocks N x K
  std::vector<std::uint8_t> active;  // K
  PilotAssignment pilots;
  DataSymbols data;
  std::vector<Eigen::MatrixXcd> Y;  // L blocks N x T

  int T() const { return Tp + Td; }
  const CMatrix& correlation(int l, int k) const { return Xi[static_cast<std::size_t>(l * K + k)]; }
  CVector channel(int l, int k) const { return H[static_cast<std::size_t>(l)].col(k); }
  CVector received(int l, int t) const { return Y[static_cast<std::size_t>(l)].col(t); }
  /// Pilot symbol for t < Tp, data symbol otherwise.
  Complex symbol(int k, int t) const;
  Constellation constellation() const;
};

Geometry place_network(const SimConfig& config, Rng& rng);
double pathloss_umi(double d3d_m, double intercept_db = -30.5, double slope = 36.7);
CMatrix build_correlation(const SimConfig& config, double xi_lk);
LargeScale compute_large_scale(const SimConfig& config, const Geometry& geometry);

std::vector<Eigen::MatrixXcd> sample_channels(int L, int K, int N, const std::vector<CMatrix>& Xi,
                                              Rng& rng);
std::vector<std::uint8_t> sample_activity(double lambda, int K, Rng& rng);
PilotAssignment generate_pilots(const SimConfig& config, Rng& rng);
/// P_k for every row: the other users with an identical pilot row.
std::vector<std::vector<int>> pilot_collisions(const Eigen::MatrixXcd& symbols);
DataSymbols sample_data_symbols(const SimConfig& config, Rng& rng);
/// Fills scenario.Y from the channels, activities and symbols plus fresh noise.
std::vector<Eigen::MatrixXcd> synthesize_received(const NetworkScenario& scenario, Rng& rng);
/// Noise-free received signal (used by tests and oracles).
std::vector<Eigen::MatrixXcd> noiseless_received(const NetworkScenario& scenario);

/// Builds one realization on fixed large-scale fading: draws channels,
/// activities, pilots, data and noise in that order from rng.
NetworkScenario make_scenario(const SimConfig& config, const Geometry& geometry,
                              const LargeScale& large_scale, Rng& rng);

Complex sample_complex_normal(Rng& rng);

}  // namespace jacdep
