/*
 * Copyright 2026 The azy Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "azy/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace azy {

void RunConfig::validate() const {
  if (!(eps >= 1e-30) || !(eps < 1.0)) throw ConfigError("--eps must lie in [1e-30, 1)");
  if (samples < 1) throw ConfigError("--samples must be at least 1");
}

CheckRecord& EvalReport::check(const std::string& name, double residual, double tolerance, Json detail) {
  CheckRecord r;
  r.name = name;
  r.residual = residual;
  r.tolerance = tolerance;
  r.passed = residual <= tolerance;
  r.detail = std::move(detail);
  checks_.push_back(std::move(r));
  return checks_.back();
}

CheckRecord& EvalReport::check_exact(const std::string& name, bool ok, Json detail) {
  return check(name, ok ? 0.0 : 1.0, 0.0, std::move(detail));
}

bool EvalReport::all_passed() const {
  for (const auto& c : checks_)
    if (!c.passed) return false;
  return true;
}

Json EvalReport::to_json() const {
  Json j;
  j["command"] = command_;
  j["config"] = {{"eps", config_.eps},
                 {"seed", config_.seed},
                 {"samples", config_.samples},
                 {"high_precision", config_.high_precision},
                 {"tau_file", config_.tau_path}};
  Json checks = Json::array();
  for (const auto& c : checks_) {
    Json cj;
    cj["name"] = c.name;
    // NaN and inf are not valid JSON numbers.
    if (std::isfinite(c.residual)) {
      cj["residual"] = c.residual;
    } else {
      cj["residual"] = std::to_string(c.residual);
    }
    cj["tolerance"] = c.tolerance;
    cj["verdict"] = c.passed ? "PASS" : "FAIL";
    if (!c.detail.empty()) cj["detail"] = c.detail;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  j["results"] = results_;
  j["verdict"] = all_passed() ? "PASS" : "FAIL";
  return j;
}

std::string EvalReport::summary() const {
  std::ostringstream os;
  for (const auto& c : checks_) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e <= %.1e", c.residual, c.tolerance);
    os << (c.passed ? "PASS " : "FAIL ") << c.name << "  (" << buf << ")\n";
  }
  for (const auto& [name, sec] : timings_) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f s", sec);
    os << "time " << name << ": " << buf << "\n";
  }
  os << command_ << ": " << (all_passed() ? "PASS" : "FAIL") << " (" << checks_.size() << " checks)\n";
  return os.str();
}

Json complex_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

Json matrix_json(const SymplecticMatrix& m) {
  Json rows = Json::array();
  for (const auto& r : m.rows()) rows.push_back(r);
  return rows;
}

Json tau_json(const SiegelPoint<double>& tau) {
  Json entries = Json::array();
  for (int i = 0; i < tau.genus(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < tau.genus(); ++j) row.push_back(complex_json(tau(i, j)));
    entries.push_back(std::move(row));
  }
  return {{"g", tau.genus()}, {"entries", std::move(entries)}};
}

namespace {

std::complex<double> parse_complex(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ConfigError("complex entries must be [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

SiegelPoint<double> parse_tau(const Json& j) {
  if (!j.is_object() || !j.contains("entries")) throw ConfigError("tau must be an object with \"entries\"");
  const auto& e = j["entries"];
  const int g = j.value("g", static_cast<int>(e.size()));
  if ((g != 1 && g != 2) || !e.is_array() || static_cast<int>(e.size()) != g) {
    throw ConfigError("tau must be a 1x1 or 2x2 matrix");
  }
  for (const auto& row : e)
    if (!row.is_array() || static_cast<int>(row.size()) != g) throw ConfigError("tau rows have the wrong length");
  try {
    if (g == 1) return SiegelPoint<double>::genus1(parse_complex(e[0][0]));
    const auto t12 = parse_complex(e[0][1]);
    if (std::abs(t12 - parse_complex(e[1][0])) > 1e-14 * (1.0 + std::abs(t12))) {
      throw ConfigError("tau must be symmetric");
    }
    return SiegelPoint<double>::genus2(parse_complex(e[0][0]), t12, parse_complex(e[1][1]));
  } catch (const std::domain_error& ex) {
    throw ConfigError(std::string("invalid tau: ") + ex.what());
  }
}

std::vector<SiegelPoint<double>> parse_tau_list(const Json& j) {
  std::vector<SiegelPoint<double>> out;
  if (j.is_object() && j.contains("samples")) return parse_tau_list(j["samples"]);
  if (j.is_array()) {
    for (const auto& t : j) out.push_back(parse_tau(t));
  } else {
    out.push_back(parse_tau(j));
  }
  if (out.empty()) throw ConfigError("tau file holds no points");
  return out;
}

std::vector<SiegelPoint<double>> load_tau_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open tau file '" + path + "'");
  try {
    return parse_tau_list(Json::parse(in));
  } catch (const nlohmann::json::exception& ex) {
    throw ConfigError("malformed tau file '" + path + "': " + ex.what());
  }
}

SymplecticMatrix parse_matrix(const Json& j) {
  try {
    return SymplecticMatrix::from_rows(j.get<IntRows>());
  } catch (const nlohmann::json::exception& ex) {
    throw ConfigError(std::string("matrix must be integer rows: ") + ex.what());
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(ex.what());
  }
}

}  // namespace azy
