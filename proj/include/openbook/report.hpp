// Check reports and the JSON exchange formats: report documents, torus
// points, ambient points. All serialization lives here so numeric layout
// stays in one place (shortest round-trip doubles, no timestamps in the
// document body, fully deterministic).
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "openbook/brieskorn.hpp"
#include "openbook/cotangent.hpp"

namespace obk {

struct CheckResult {
  std::string name;
  int samples = 0;
  double max_abs_err = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

inline CheckResult make_result(std::string name, int samples, double err,
                               double tol) {
  CheckResult r;
  r.name = std::move(name);
  r.samples = samples;
  r.max_abs_err = err;
  r.tolerance = tol;
  r.pass = err <= tol;
  return r;
}

struct CheckReport {
  int n = 0;
  int k = 0;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  bool pass = true;

  void add(CheckResult r) {
    pass = pass && r.pass;
    checks.push_back(std::move(r));
  }
};

inline nlohmann::json to_json(const CheckResult& r) {
  return nlohmann::json{{"name", r.name},
                        {"samples", r.samples},
                        {"max_abs_err", r.max_abs_err},
                        {"tolerance", r.tolerance},
                        {"pass", r.pass}};
}

inline nlohmann::json to_json(const CheckReport& rep) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : rep.checks) checks.push_back(to_json(c));
  return nlohmann::json{{"n", rep.n},
                        {"k", rep.k},
                        {"seed", rep.seed},
                        {"checks", checks},
                        {"pass", rep.pass}};
}

// Torus point: {"t": real, "q": [...], "p": [...], "model": "M"|"twist"|"glued"}.
inline nlohmann::json to_json(const TorusPoint& tp) {
  nlohmann::json q = nlohmann::json::array();
  nlohmann::json p = nlohmann::json::array();
  for (int i = 0; i < tp.x.n(); ++i) {
    q.push_back(tp.x.q[i]);
    p.push_back(tp.x.p[i]);
  }
  return nlohmann::json{
      {"t", tp.t}, {"q", q}, {"p", p}, {"model", torus_model_name(tp.model)}};
}

inline TorusPoint torus_point_from_json(const nlohmann::json& j) {
  const auto& jq = j.at("q");
  const auto& jp = j.at("p");
  if (jq.size() != jp.size())
    throw std::invalid_argument("torus point: q and p sizes differ");
  const int n = static_cast<int>(jq.size());
  TorusPoint tp;
  tp.t = j.at("t").get<double>();
  tp.x.q = VecXd(n);
  tp.x.p = VecXd(n);
  for (int i = 0; i < n; ++i) {
    tp.x.q[i] = jq[i].get<double>();
    tp.x.p[i] = jp[i].get<double>();
  }
  const std::string m = j.at("model").get<std::string>();
  if (m == "M")
    tp.model = TorusModel::M;
  else if (m == "twist")
    tp.model = TorusModel::Twist;
  else if (m == "glued")
    tp.model = TorusModel::Glued;
  else
    throw std::invalid_argument("torus point: unknown model '" + m + "'");
  return tp;
}

// Ambient point: flat interleaved array (x_0, y_0, x_1, y_1, ...).
inline nlohmann::json to_json(const AmbientPoint& z) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < z.zr.size(); ++i) arr.push_back(z.zr[i]);
  return arr;
}

inline AmbientPoint ambient_point_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() % 2 != 0)
    throw std::invalid_argument("ambient point: expected even-length array");
  AmbientPoint z{VecXd(static_cast<Eigen::Index>(j.size()))};
  for (size_t i = 0; i < j.size(); ++i)
    z.zr[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return z;
}

}  // namespace obk
