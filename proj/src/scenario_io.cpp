// SPDX-License-Identifier: Apache-2.0
#include "scenario_io.hpp"

#include <cmath>
#include <limits>

#include <json.hpp>

#include "error.hpp"

namespace jacdep {
namespace {

using nlohmann::json;

json cplx(Complex c) { return json::array({c.real(), c.imag()}); }

Complex cplx_in(const json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::kParseError, "complex value must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

template <typename M>
json cmat(const M& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(cplx(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename M>
M cmat_in(const json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j[0].size());
  M m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (static_cast<Eigen::Index>(row.size()) != cols) throw Error(ErrorCode::kParseError, "ragged matrix");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = cplx_in(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

json cvec(const CVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(cplx(v(i)));
  return a;
}

CVector cvec_in(const json& j) {
  if (j.size() > static_cast<std::size_t>(kMaxDim)) throw Error(ErrorCode::kDimensionMismatch, "vector too long");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = cplx_in(j[i]);
  return v;
}

CMatrix small_in(const json& j) {
  if (j.size() > static_cast<std::size_t>(kMaxDim)) throw Error(ErrorCode::kDimensionMismatch, "matrix too large");
  const Eigen::MatrixXcd m = cmat_in<Eigen::MatrixXcd>(j);
  return m;
}

json points(const std::vector<Point3>& p) {
  json a = json::array();
  for (const auto& q : p) a.push_back({q[0], q[1], q[2]});
  return a;
}

std::vector<Point3> points_in(const json& j) {
  std::vector<Point3> p;
  for (const auto& q : j) p.push_back({q.at(0).get<double>(), q.at(1).get<double>(), q.at(2).get<double>()});
  return p;
}

const char* modulation_name(Modulation m) { return m == Modulation::kQam4 ? "qam4" : "bpsk"; }

Modulation modulation_in(const std::string& s) {
  if (s == "qam4") return Modulation::kQam4;
  if (s == "bpsk") return Modulation::kBpskData;
  throw Error(ErrorCode::kParseError, "unknown modulation '" + s + "'");
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

}  // namespace

std::string scenario_to_json(const NetworkScenario& s) {
  json j;
  j["L"] = s.L;
  j["N"] = s.N;
  j["K"] = s.K;
  j["Tp"] = s.Tp;
  j["Td"] = s.Td;
  j["lambda"] = s.lambda;
  j["sigma_x2"] = s.sigma_x2;
  j["sigma_n2"] = s.sigma_n2;
  j["modulation"] = modulation_name(s.modulation);
  j["ap_positions"] = points(s.ap_positions);
  j["ue_positions"] = points(s.ue_positions);
  json xi = json::array();
  for (Eigen::Index l = 0; l < s.xi.rows(); ++l) {
    json row = json::array();
    for (Eigen::Index k = 0; k < s.xi.cols(); ++k) row.push_back(s.xi(l, k));
    xi.push_back(std::move(row));
  }
  j["xi"] = std::move(xi);
  json big_xi = json::array();
  for (const auto& m : s.Xi) big_xi.push_back(cmat(m));
  j["Xi"] = std::move(big_xi);
  json h = json::array();
  for (const auto& m : s.H) h.push_back(cmat(m));
  j["H"] = std::move(h);
  j["active"] = s.active;
  j["pilots"] = {{"symbols", cmat(s.pilots.symbols)}, {"collisions", s.pilots.collisions}};
  json idx = json::array();
  for (Eigen::Index k = 0; k < s.data.indices.rows(); ++k) {
    json row = json::array();
    for (Eigen::Index t = 0; t < s.data.indices.cols(); ++t) row.push_back(s.data.indices(k, t));
    idx.push_back(std::move(row));
  }
  j["data"] = {{"indices", std::move(idx)}, {"symbols", cmat(s.data.symbols)}};
  json y = json::array();
  for (const auto& m : s.Y) y.push_back(cmat(m));
  j["Y"] = std::move(y);
  return j.dump(1);
}

NetworkScenario scenario_from_json(const std::string& text) {
  return guarded([&] {
    const json j = json::parse(text);
    NetworkScenario s;
    s.L = j.at("L").get<int>();
    s.N = j.at("N").get<int>();
    s.K = j.at("K").get<int>();
    s.Tp = j.at("Tp").get<int>();
    s.Td = j.at("Td").get<int>();
    s.lambda = j.at("lambda").get<double>();
    s.sigma_x2 = j.at("sigma_x2").get<double>();
    s.sigma_n2 = j.at("sigma_n2").get<double>();
    s.modulation = modulation_in(j.at("modulation").get<std::string>());
    s.ap_positions = points_in(j.at("ap_positions"));
    s.ue_positions = points_in(j.at("ue_positions"));
    s.xi = Eigen::MatrixXd(s.L, s.K);
    const json& xi = j.at("xi");
    if (xi.size() != static_cast<std::size_t>(s.L)) throw Error(ErrorCode::kDimensionMismatch, "xi rows");
    for (int l = 0; l < s.L; ++l) {
      if (xi[static_cast<std::size_t>(l)].size() != static_cast<std::size_t>(s.K)) {
        throw Error(ErrorCode::kDimensionMismatch, "xi columns");
      }
      for (int k = 0; k < s.K; ++k) s.xi(l, k) = xi[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)].get<double>();
    }
    for (const auto& m : j.at("Xi")) s.Xi.push_back(small_in(m));
    for (const auto& m : j.at("H")) s.H.push_back(cmat_in<Eigen::MatrixXcd>(m));
    s.active = j.at("active").get<std::vector<std::uint8_t>>();
    s.pilots.symbols = cmat_in<Eigen::MatrixXcd>(j.at("pilots").at("symbols"));
    s.pilots.collisions = j.at("pilots").at("collisions").get<std::vector<std::vector<int>>>();
    const json& idx = j.at("data").at("indices");
    s.data.indices = Eigen::MatrixXi(s.K, s.Td);
    if (idx.size() != static_cast<std::size_t>(s.K)) throw Error(ErrorCode::kDimensionMismatch, "data rows");
    for (int k = 0; k < s.K; ++k) {
      if (idx[static_cast<std::size_t>(k)].size() != static_cast<std::size_t>(s.Td)) {
        throw Error(ErrorCode::kDimensionMismatch, "data columns");
      }
      for (int t = 0; t < s.Td; ++t) s.data.indices(k, t) = idx[static_cast<std::size_t>(k)][static_cast<std::size_t>(t)].get<int>();
    }
    s.data.symbols = cmat_in<Eigen::MatrixXcd>(j.at("data").at("symbols"));
    for (const auto& m : j.at("Y")) s.Y.push_back(cmat_in<Eigen::MatrixXcd>(m));

    const auto lk = static_cast<std::size_t>(s.L * s.K);
    bool ok = s.L >= 1 && s.K >= 1 && s.N >= 1 && s.N <= kMaxDim && s.Tp >= 0 && s.Td >= 0 &&
              s.ap_positions.size() == static_cast<std::size_t>(s.L) &&
              s.ue_positions.size() == static_cast<std::size_t>(s.K) && s.Xi.size() == lk &&
              s.H.size() == static_cast<std::size_t>(s.L) && s.Y.size() == static_cast<std::size_t>(s.L) &&
              s.active.size() == static_cast<std::size_t>(s.K) &&
              s.pilots.symbols.rows() == s.K && s.pilots.symbols.cols() == s.Tp &&
              s.pilots.collisions.size() == static_cast<std::size_t>(s.K) &&
              s.data.symbols.rows() == s.K && s.data.symbols.cols() == s.Td;
    for (std::size_t i = 0; ok && i < lk; ++i) ok = s.Xi[i].rows() == s.N && s.Xi[i].cols() == s.N;
    for (int l = 0; ok && l < s.L; ++l) {
      const auto ul = static_cast<std::size_t>(l);
      ok = s.H[ul].rows() == s.N && s.H[ul].cols() == s.K && s.Y[ul].rows() == s.N && s.Y[ul].cols() == s.T();
    }
    if (!ok) throw Error(ErrorCode::kDimensionMismatch, "scenario fields disagree with L, N, K, Tp, Td");
    return s;
  });
}

std::string priors_to_json(const Priors& p) {
  json j;
  j["L"] = p.L;
  j["K"] = p.K;
  j["N"] = p.N;
  // Log probabilities keep near-certain beliefs exact; null stands for -inf.
  json act = json::array();
  for (const auto& a : p.activity) {
    json pair = json::array();
    for (int i = 0; i < 2; ++i) {
      const double v = a.log_prob(i);
      pair.push_back(std::isfinite(v) ? json(v) : json(nullptr));
    }
    act.push_back(std::move(pair));
  }
  j["activity_log"] = std::move(act);
  json ch = json::array();
  for (const auto& g : p.channel) ch.push_back({{"mean", cvec(g.mean)}, {"cov", cmat(g.cov)}});
  j["channel"] = std::move(ch);
  return j.dump(1);
}

Priors priors_from_json(const std::string& text) {
  return guarded([&] {
    const json j = json::parse(text);
    Priors p;
    p.L = j.at("L").get<int>();
    p.K = j.at("K").get<int>();
    p.N = j.at("N").get<int>();
    for (const auto& a : j.at("activity_log")) {
      if (a.size() != 2) throw Error(ErrorCode::kDimensionMismatch, "activity belief must have two entries");
      double lw[2];
      for (int i = 0; i < 2; ++i) {
        lw[i] = a.at(i).is_null() ? -std::numeric_limits<double>::infinity() : a.at(i).get<double>();
      }
      p.activity.push_back(CategoricalMessage::from_log_weights(lw));
    }
    for (const auto& g : j.at("channel")) p.channel.push_back({cvec_in(g.at("mean")), small_in(g.at("cov"))});
    if (p.activity.size() != static_cast<std::size_t>(p.K) ||
        p.channel.size() != static_cast<std::size_t>(p.L * p.K)) {
      throw Error(ErrorCode::kDimensionMismatch, "priors do not cover L x K");
    }
    for (const auto& g : p.channel) {
      if (g.dim() != p.N || g.cov.rows() != p.N || g.cov.cols() != p.N) {
        throw Error(ErrorCode::kDimensionMismatch, "channel prior has the wrong dimension");
      }
    }
    return p;
  });
}

}  // namespace jacdep
