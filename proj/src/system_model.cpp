// SPDX-License-Identifier: Apache-2.0
#include "system_model.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "error.hpp"

namespace jacdep {
namespace {

void range_check(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kRangeError, what);
}

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

}  // namespace

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double SimConfig::sigma_x2() const { return dbm_to_watt(tx_power_dbm); }
double SimConfig::sigma_n2() const { return dbm_to_watt(noise_power_dbm); }

int SimConfig::constellation_size() const { return modulation == Modulation::kQam4 ? 4 : 2; }

void SimConfig::validate() const {
  range_check(L >= 1, "L must be positive");
  range_check(N >= 1 && N <= kMaxDim, "N must lie in [1, " + std::to_string(kMaxDim) + "]");
  range_check(K >= 1, "K must be positive");
  range_check(Tp >= 1, "T_p must be positive");
  range_check(Td >= 0, "T_d must be nonnegative");
  range_check(lambda >= 0.0 && lambda <= 1.0, "lambda must lie in [0, 1]");
  range_check(eta >= 0.0 && eta <= 1.0, "eta must lie in [0, 1]");
  range_check(i_max >= 1 && jac_i_max >= 1, "iteration counts must be positive");
  range_check(area_m > 0.0, "area_m must be positive");
  range_check(ap_spacing_m > 0.0, "ap_spacing_m must be positive");
  range_check(pathloss_slope > 0.0, "pathloss_slope must be positive");
  range_check(codebook_size >= 1, "codebook_size must be positive");
  range_check(std::abs(rho) < 1.0, "rho must satisfy |rho| < 1");
  range_check(std::isfinite(tx_power_dbm) && std::isfinite(noise_power_dbm),
              "powers must be finite");
}

Constellation Constellation::qam4(double sigma_x2) {
  Constellation c;
  c.sigma_x2_ = sigma_x2;
  const double a = std::sqrt(sigma_x2 / 2.0);
  c.points_ = {{a, a}, {-a, a}, {-a, -a}, {a, -a}};
  return c;
}

Constellation Constellation::bpsk(double sigma_x2) {
  Constellation c;
  c.sigma_x2_ = sigma_x2;
  const double a = std::sqrt(sigma_x2);
  c.points_ = {{a, 0.0}, {-a, 0.0}};
  return c;
}

Constellation Constellation::for_config(const SimConfig& config) {
  return config.modulation == Modulation::kQam4 ? qam4(config.sigma_x2())
                                                : bpsk(config.sigma_x2());
}

int Constellation::nearest(Complex v) const {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < size(); ++i) {
    const double d = std::norm(v - point(i));
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

Complex NetworkScenario::symbol(int k, int t) const {
  return t < Tp ? pilots.symbols(k, t) : data.symbols(k, t - Tp);
}

Constellation NetworkScenario::constellation() const {
  return modulation == Modulation::kQam4 ? Constellation::qam4(sigma_x2)
                                         : Constellation::bpsk(sigma_x2);
}

Complex sample_complex_normal(Rng& rng) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

Geometry place_network(const SimConfig& config, Rng& rng) {
  const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(config.L))));
  if (side * side != config.L) {
    throw Error(ErrorCode::kNonSquareL, "grid placement needs a perfect-square L, got " +
                                            std::to_string(config.L));
  }
  Geometry g;
  const double s = config.ap_spacing_m;
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      g.ap_positions.push_back({s / 2.0 + i * s, s / 2.0 + j * s, config.ap_height_m});
    }
  }
  for (int k = 0; k < config.K; ++k) {
    const double x = config.area_m * uniform01(rng);
    const double y = config.area_m * uniform01(rng);
    g.ue_positions.push_back({x, y, 0.0});
  }
  return g;
}

double pathloss_umi(double d3d_m, double intercept_db, double slope) {
  if (!(d3d_m > 0.0)) throw Error(ErrorCode::kNonPositiveDistance, "distance must be positive");
  const double gain_db = intercept_db - slope * std::log10(d3d_m);
  return std::pow(10.0, gain_db / 10.0);
}

CMatrix build_correlation(const SimConfig& config, double xi_lk) {
  if (std::abs(config.rho) >= 1.0) throw Error(ErrorCode::kRhoOutOfRange, "|rho| must be < 1");
  if (!(xi_lk > 0.0)) throw Error(ErrorCode::kRangeError, "large-scale coefficient must be positive");
  const int n = config.N;
  if (config.correlation == CorrelationMode::kIdentity) return xi_lk * CMatrix::Identity(n, n);
  CMatrix r(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) r(i, j) = std::pow(config.rho, std::abs(i - j));
  }
  // The diagonal is one, so the trace is already N; rescaling keeps that explicit.
  const double tr = r.trace().real();
  return (xi_lk * n / tr) * r;
}

LargeScale compute_large_scale(const SimConfig& config, const Geometry& geometry) {
  const int L = static_cast<int>(geometry.ap_positions.size());
  const int K = static_cast<int>(geometry.ue_positions.size());
  LargeScale ls;
  ls.xi.resize(L, K);
  ls.Xi.reserve(static_cast<std::size_t>(L * K));
  for (int l = 0; l < L; ++l) {
    for (int k = 0; k < K; ++k) {
      const Point3& a = geometry.ap_positions[static_cast<std::size_t>(l)];
      const Point3& u = geometry.ue_positions[static_cast<std::size_t>(k)];
      const double d = std::hypot(a[0] - u[0], a[1] - u[1], a[2] - u[2]);
      const double xi = pathloss_umi(d, config.pathloss_intercept_db, config.pathloss_slope);
      ls.xi(l, k) = xi;
      ls.Xi.push_back(build_correlation(config, xi));
    }
  }
  return ls;
}

std::vector<Eigen::MatrixXcd> sample_channels(int L, int K, int N, const std::vector<CMatrix>& Xi,
                                              Rng& rng) {
  if (Xi.size() != static_cast<std::size_t>(L * K)) {
    throw Error(ErrorCode::kDimensionMismatch, "correlation table does not match L x K");
  }
  std::vector<Eigen::MatrixXcd> H(static_cast<std::size_t>(L), Eigen::MatrixXcd::Zero(N, K));
  for (int l = 0; l < L; ++l) {
    for (int k = 0; k < K; ++k) {
      const CMatrix& xi = Xi[static_cast<std::size_t>(l * K + k)];
      CVector w(N);
      for (int i = 0; i < N; ++i) w(i) = sample_complex_normal(rng);
      CMatrix coloring;
      Eigen::LLT<CMatrix> llt(xi);
      if (is_hermitian_pd(xi)) {
        coloring = llt.matrixL();
      } else {
        // PSD but singular (e.g. all-zero) correlation: color with the
        // eigen-decomposition square root.
        if (!is_hermitian(xi)) throw Error(ErrorCode::kNonPsdCorrelation, "Xi is not Hermitian");
        Eigen::SelfAdjointEigenSolver<CMatrix> es(xi);
        const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
        if (es.eigenvalues().minCoeff() < -1e-12 * scale) {
          throw Error(ErrorCode::kNonPsdCorrelation, "Xi has a negative eigenvalue");
        }
        const Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
        coloring = es.eigenvectors() * root.asDiagonal();
      }
      H[static_cast<std::size_t>(l)].col(k) = coloring * w;
    }
  }
  return H;
}

std::vector<std::uint8_t> sample_activity(double lambda, int K, Rng& rng) {
  std::vector<std::uint8_t> u(static_cast<std::size_t>(K));
  for (auto& v : u) v = uniform01(rng) < lambda ? 1 : 0;
  return u;
}

PilotAssignment generate_pilots(const SimConfig& config, Rng& rng) {
  const double a = std::sqrt(config.sigma_x2());
  std::bernoulli_distribution coin(0.5);
  PilotAssignment p;
  p.symbols.resize(config.K, config.Tp);
  if (config.pilot_mode == PilotMode::kIidBpsk) {
    for (int k = 0; k < config.K; ++k) {
      for (int t = 0; t < config.Tp; ++t) p.symbols(k, t) = coin(rng) ? a : -a;
    }
  } else {
    if (config.codebook_size < 1) throw Error(ErrorCode::kEmptyCodebook, "codebook is empty");
    Eigen::MatrixXcd book(config.codebook_size, config.Tp);
    for (int c = 0; c < config.codebook_size; ++c) {
      for (int t = 0; t < config.Tp; ++t) book(c, t) = coin(rng) ? a : -a;
    }
    std::uniform_int_distribution<int> pick(0, config.codebook_size - 1);
    for (int k = 0; k < config.K; ++k) p.symbols.row(k) = book.row(pick(rng));
  }
  p.collisions = pilot_collisions(p.symbols);
  return p;
}

std::vector<std::vector<int>> pilot_collisions(const Eigen::MatrixXcd& symbols) {
  const auto K = static_cast<int>(symbols.rows());
  std::vector<std::vector<int>> out(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) {
    for (int j = 0; j < K; ++j) {
      if (j != k && symbols.row(j) == symbols.row(k)) out[static_cast<std::size_t>(k)].push_back(j);
    }
  }
  return out;
}

DataSymbols sample_data_symbols(const SimConfig& config, Rng& rng) {
  const Constellation c = Constellation::for_config(config);
  std::uniform_int_distribution<int> pick(0, c.size() - 1);
  DataSymbols d;
  d.indices.resize(config.K, config.Td);
  d.symbols.resize(config.K, config.Td);
  for (int k = 0; k < config.K; ++k) {
    for (int t = 0; t < config.Td; ++t) {
      const int i = pick(rng);
      d.indices(k, t) = i;
      d.symbols(k, t) = c.point(i);
    }
  }
  return d;
}

std::vector<Eigen::MatrixXcd> noiseless_received(const NetworkScenario& s) {
  if (s.H.size() != static_cast<std::size_t>(s.L) || s.active.size() != static_cast<std::size_t>(s.K) ||
      s.pilots.symbols.rows() != s.K || s.pilots.symbols.cols() != s.Tp ||
      s.data.symbols.rows() != s.K || s.data.symbols.cols() != s.Td) {
    throw Error(ErrorCode::kDimensionMismatch, "scenario fields are inconsistent");
  }
  Eigen::MatrixXcd X(s.K, s.T());
  X << s.pilots.symbols, s.data.symbols;
  Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(s.K, s.K);
  for (int k = 0; k < s.K; ++k) U(k, k) = s.active[static_cast<std::size_t>(k)] ? 1.0 : 0.0;
  std::vector<Eigen::MatrixXcd> Y;
  Y.reserve(static_cast<std::size_t>(s.L));
  for (int l = 0; l < s.L; ++l) {
    const Eigen::MatrixXcd& Hl = s.H[static_cast<std::size_t>(l)];
    if (Hl.rows() != s.N || Hl.cols() != s.K) {
      throw Error(ErrorCode::kDimensionMismatch, "channel block has wrong shape");
    }
    Y.push_back(Hl * U * X);
  }
  return Y;
}

std::vector<Eigen::MatrixXcd> synthesize_received(const NetworkScenario& s, Rng& rng) {
  std::vector<Eigen::MatrixXcd> Y = noiseless_received(s);
  const double sd = std::sqrt(s.sigma_n2);
  for (auto& Yl : Y) {
    for (Eigen::Index t = 0; t < Yl.cols(); ++t) {
      for (Eigen::Index i = 0; i < Yl.rows(); ++i) Yl(i, t) += sd * sample_complex_normal(rng);
    }
  }
  return Y;
}

NetworkScenario make_scenario(const SimConfig& config, const Geometry& geometry,
                              const LargeScale& large_scale, Rng& rng) {
  NetworkScenario s;
  s.L = config.L;
  s.N = config.N;
  s.K = config.K;
  s.Tp = config.Tp;
  s.Td = config.Td;
  s.lambda = config.lambda;
  s.sigma_x2 = config.sigma_x2();
  s.sigma_n2 = config.sigma_n2();
  s.modulation = config.modulation;
  s.ap_positions = geometry.ap_positions;
  s.ue_positions = geometry.ue_positions;
  s.xi = large_scale.xi;
  s.Xi = large_scale.Xi;
  if (s.xi.rows() != s.L || s.xi.cols() != s.K) {
    throw Error(ErrorCode::kConfigMismatch, "large-scale table does not match the config");
  }
  s.H = sample_channels(s.L, s.K, s.N, s.Xi, rng);
  s.active = sample_activity(config.lambda, s.K, rng);
  s.pilots = generate_pilots(config, rng);
  s.data = sample_data_symbols(config, rng);
  s.Y = synthesize_received(s, rng);
  return s;
}

}  // namespace jacdep
