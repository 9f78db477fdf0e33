// Copyright 2026 The flexsum Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "flexsum/io.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "flexsum/error.hpp"

namespace flexsum::io {

using nlohmann::json;

namespace {

json to_j(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json to_j(const Matrix& m) {
  json a = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    a.push_back(std::move(row));
  }
  return a;
}

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
  throw DomainError("field '" + path + "': " + what);
}

const json& need(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) field_error(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) field_error(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

std::string sub(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

double num(const json& j, const std::string& path) {
  if (!j.is_number()) field_error(path, "expected a number");
  return j.get<double>();
}

Vector vec(const json& j, const std::string& path) {
  if (!j.is_array()) field_error(path, "expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = num(j[i], path + "[" + std::to_string(i) + "]");
  }
  return v;
}

Matrix mat(const json& j, const std::string& path) {
  if (!j.is_array()) field_error(path, "expected a nested array");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  if (rows > 0) {
    if (!j[0].is_array()) field_error(path + "[0]", "expected an array");
    cols = j[0].size();
  }
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rp = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != cols) field_error(rp, "rows must have equal length");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          num(j[r][c], rp + "[" + std::to_string(c) + "]");
    }
  }
  return m;
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) field_error(path, "expected an integer");
  return j.get<int>();
}

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Convert the byte offset into a line/column.
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t i = 0; i + 1 < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw DomainError("malformed JSON at line " + std::to_string(line) + ", column " +
                      std::to_string(col) + ": " + e.what());
  }
}

json battery_j(const BatteryModel& m) {
  return json{{"u_lo", to_j(m.u_lo)}, {"u_hi", to_j(m.u_hi)}, {"x_lo", to_j(m.x_lo)},
              {"x_hi", to_j(m.x_hi)}, {"delta", m.delta},     {"T", m.horizon()}};
}

BatteryModel battery_from(const json& j, const std::string& path) {
  BatteryModel m;
  m.u_lo = vec(need(j, "u_lo", path), sub(path, "u_lo"));
  m.u_hi = vec(need(j, "u_hi", path), sub(path, "u_hi"));
  m.x_lo = vec(need(j, "x_lo", path), sub(path, "x_lo"));
  m.x_hi = vec(need(j, "x_hi", path), sub(path, "x_hi"));
  m.delta = num(need(j, "delta", path), sub(path, "delta"));
  try {
    m.validate();
  } catch (const DomainError& e) {
    field_error(path.empty() ? "model" : path, e.what());
  }
  return m;
}

json base_j(const BaseSet& b) {
  return json{{"T", b.horizon}, {"delta", b.delta}, {"h0", to_j(b.h0())}};
}

BaseSet base_from(const json& j, const std::string& path) {
  BaseSet b;
  b.horizon = integer(need(j, "T", path), sub(path, "T"));
  b.delta = num(need(j, "delta", path), sub(path, "delta"));
  if (b.horizon < 1 || !(b.delta > 0.0)) field_error(path, "need T >= 1 and delta > 0");
  const Vector h0 = vec(need(j, "h0", path), sub(path, "h0"));
  if (h0.size() != 4 * b.horizon) field_error(sub(path, "h0"), "length must be 4T");
  b.polytope = HPolytope(battery_matrix(b.horizon, b.delta), h0);
  return b;
}

void check_square(const Matrix& m, int T, const std::string& path) {
  if (m.rows() != T || m.cols() != T) field_error(path, "expected a T x T matrix");
}

void check_len(const Vector& v, int T, const std::string& path) {
  if (v.size() != T) field_error(path, "expected length T");
}

}  // namespace

std::string scenario_to_json(const Scenario& s) {
  json params = json::array();
  for (const auto& p : s.params) {
    params.push_back(json{{"a", p.a},
                          {"d", p.d},
                          {"u_min", p.u_min},
                          {"u_max", p.u_max},
                          {"x_max", p.x_max},
                          {"x_init", p.x_init},
                          {"x_fin", p.x_fin}});
  }
  json models = json::array();
  for (const auto& m : s.models) models.push_back(battery_j(m));
  json j{{"seed", s.seed},
         {"sigma", s.sigma},
         {"T", s.T},
         {"delta", s.delta},
         {"clock_origin", format_clock(s.clock_origin)},
         {"homogenized", s.homogenized},
         {"rejections", s.rejections},
         {"params", params},
         {"models", models}};
  return j.dump(1);
}

Scenario scenario_from_json(std::string_view text) {
  const json j = parse(text);
  Scenario s;
  if (!j.is_object()) field_error("", "expected an object");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) {
      field_error("seed", "expected an integer");
    }
    s.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("sigma")) s.sigma = num(j["sigma"], "sigma");
  if (j.contains("clock_origin")) {
    if (!j["clock_origin"].is_string()) field_error("clock_origin", "expected a clock label");
    try {
      s.clock_origin = parse_clock(j["clock_origin"].get<std::string>());
    } catch (const DomainError& e) {
      field_error("clock_origin", e.what());
    }
  }
  if (j.contains("homogenized")) s.homogenized = j["homogenized"].get<bool>();
  if (j.contains("rejections")) s.rejections = integer(j["rejections"], "rejections");
  if (j.contains("params") && !j["params"].empty()) {
    s.T = integer(need(j, "T", ""), "T");
    s.delta = num(need(j, "delta", ""), "delta");
    const json& ps = j["params"];
    if (!ps.is_array()) field_error("params", "expected an array");
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const std::string path = "params[" + std::to_string(i) + "]";
      EvParams p;
      p.T = s.T;
      p.delta = s.delta;
      p.a = integer(need(ps[i], "a", path), path + ".a");
      p.d = integer(need(ps[i], "d", path), path + ".d");
      p.u_min = num(need(ps[i], "u_min", path), path + ".u_min");
      p.u_max = num(need(ps[i], "u_max", path), path + ".u_max");
      p.x_max = num(need(ps[i], "x_max", path), path + ".x_max");
      p.x_init = num(need(ps[i], "x_init", path), path + ".x_init");
      p.x_fin = num(need(ps[i], "x_fin", path), path + ".x_fin");
      try {
        p.validate();
      } catch (const DomainError& e) {
        field_error(path, e.what());
      }
      s.params.push_back(p);
    }
    rebuild_scenario(s);
    return s;
  }
  const json& ms = need(j, "models", "");
  if (!ms.is_array() || ms.empty()) field_error("models", "expected a nonempty array");
  for (std::size_t i = 0; i < ms.size(); ++i) {
    s.models.push_back(battery_from(ms[i], "models[" + std::to_string(i) + "]"));
  }
  s.T = s.models.front().horizon();
  s.delta = s.models.front().delta;
  s.base = build_base_set(s.models);
  return s;
}

std::string hpolytope_to_json(const HPolytope& p) {
  return json{{"A", to_j(p.A())}, {"b", to_j(p.b())}}.dump(1);
}

HPolytope hpolytope_from_json(std::string_view text) {
  const json j = parse(text);
  Matrix A = mat(need(j, "A", ""), "A");
  Vector b = vec(need(j, "b", ""), "b");
  if (A.rows() != b.size()) field_error("b", "length must match the rows of A");
  return HPolytope(std::move(A), std::move(b));
}

std::string battery_to_json(const BatteryModel& m) { return battery_j(m).dump(1); }

BatteryModel battery_from_json(std::string_view text) { return battery_from(parse(text), ""); }

std::string transform_to_json(const TransformResult& r, bool with_certificates) {
  json per = json::array();
  for (const auto& p : r.per_set) {
    json e{{"gamma", to_j(p.gamma)}, {"Gamma", to_j(p.Gamma)}};
    if (r.method == InnerMethod::kHomothet) e["alpha"] = p.scale;
    if (with_certificates && p.certificate) e["lambda"] = to_j(p.certificate->lambda);
    per.push_back(std::move(e));
  }
  json j{{"method", std::string(to_string(r.method))},
         {"objective", r.objective},
         {"center", to_j(r.center)},
         {"map", to_j(r.map)},
         {"max_certificate_violation", r.max_certificate_violation},
         {"base", base_j(r.base)},
         {"per_set", per}};
  return j.dump(1);
}

TransformResult transform_from_json(std::string_view text) {
  const json j = parse(text);
  TransformResult r;
  const json& m = need(j, "method", "");
  if (!m.is_string()) field_error("method", "expected a string");
  try {
    r.method = parse_inner_method(m.get<std::string>());
  } catch (const DomainError& e) {
    field_error("method", e.what());
  }
  r.objective = num(need(j, "objective", ""), "objective");
  r.base = base_from(need(j, "base", ""), "base");
  const int T = r.base.horizon;
  r.center = vec(need(j, "center", ""), "center");
  check_len(r.center, T, "center");
  r.map = mat(need(j, "map", ""), "map");
  check_square(r.map, T, "map");
  if (j.contains("max_certificate_violation")) {
    r.max_certificate_violation = num(j["max_certificate_violation"], "max_certificate_violation");
  }
  const json& per = need(j, "per_set", "");
  if (!per.is_array()) field_error("per_set", "expected an array");
  for (std::size_t i = 0; i < per.size(); ++i) {
    const std::string path = "per_set[" + std::to_string(i) + "]";
    PerSetTransform p;
    p.gamma = vec(need(per[i], "gamma", path), path + ".gamma");
    check_len(p.gamma, T, path + ".gamma");
    p.Gamma = mat(need(per[i], "Gamma", path), path + ".Gamma");
    check_square(p.Gamma, T, path + ".Gamma");
    p.scale = per[i].contains("alpha") ? num(per[i]["alpha"], path + ".alpha")
                                       : std::numeric_limits<double>::quiet_NaN();
    if (per[i].contains("lambda")) {
      p.certificate = ContainmentCertificate{mat(per[i]["lambda"], path + ".lambda")};
    }
    r.per_set.push_back(std::move(p));
  }
  return r;
}

std::string outer_to_json(const OuterResult& r, bool with_certificates) {
  json per = json::array();
  for (const auto& p : r.per_set) {
    json e{{"gamma", to_j(p.gamma)}};
    if (with_certificates && p.certificate) e["lambda"] = to_j(p.certificate->lambda);
    per.push_back(std::move(e));
  }
  json j{{"method", std::string(to_string(r.method))},
         {"objective", r.objective},
         {"epsilon", r.epsilon},
         {"Z", to_j(r.Z)},
         {"Q_map", to_j(r.Q_map)},
         {"center", to_j(r.center)},
         {"frame_origin", to_j(r.frame_origin)},
         {"max_certificate_violation", r.max_certificate_violation},
         {"base", base_j(r.base)},
         {"per_set", per}};
  return j.dump(1);
}

OuterResult outer_from_json(std::string_view text) {
  const json j = parse(text);
  OuterResult r;
  const json& m = need(j, "method", "");
  if (!m.is_string()) field_error("method", "expected a string");
  try {
    r.method = parse_outer_method(m.get<std::string>());
  } catch (const DomainError& e) {
    field_error("method", e.what());
  }
  r.base = base_from(need(j, "base", ""), "base");
  const int T = r.base.horizon;
  r.Z = mat(need(j, "Z", ""), "Z");
  check_square(r.Z, T, "Z");
  r.Q_map = mat(need(j, "Q_map", ""), "Q_map");
  check_square(r.Q_map, T, "Q_map");
  r.epsilon = num(need(j, "epsilon", ""), "epsilon");
  r.center = j.contains("center") ? vec(j["center"], "center") : Vector::Zero(T);
  check_len(r.center, T, "center");
  r.frame_origin = j.contains("frame_origin") ? vec(j["frame_origin"], "frame_origin")
                                              : Vector::Zero(T);
  check_len(r.frame_origin, T, "frame_origin");
  if (j.contains("objective")) r.objective = num(j["objective"], "objective");
  if (j.contains("max_certificate_violation")) {
    r.max_certificate_violation = num(j["max_certificate_violation"], "max_certificate_violation");
  }
  if (j.contains("per_set")) {
    const json& per = j["per_set"];
    if (!per.is_array()) field_error("per_set", "expected an array");
    for (std::size_t i = 0; i < per.size(); ++i) {
      const std::string path = "per_set[" + std::to_string(i) + "]";
      OuterPerSet p;
      p.gamma = vec(need(per[i], "gamma", path), path + ".gamma");
      check_len(p.gamma, T, path + ".gamma");
      if (per[i].contains("lambda")) {
        p.certificate = ContainmentCertificate{mat(per[i]["lambda"], path + ".lambda")};
      }
      r.per_set.push_back(std::move(p));
    }
  }
  return r;
}

Vector vector_from_json(std::string_view text) { return vec(parse(text), "profile"); }

std::string vector_to_json(const Vector& v) { return to_j(v).dump(); }

void write_profiles_csv(std::ostream& out, std::span<const Vector> profiles) {
  char buf[40];
  for (const auto& p : profiles) {
    for (Eigen::Index t = 0; t < p.size(); ++t) {
      std::snprintf(buf, sizeof buf, "%.17g", p(t));
      if (t > 0) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write '" + path + "'");
  out << content;
  if (content.empty() || content.back() != '\n') out << '\n';
}

}  // namespace flexsum::io
