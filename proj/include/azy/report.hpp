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

#pragma once

// Run configuration, structured verification reports and the JSON formats
// for matrices and Siegel points.

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "azy/siegel.hpp"
#include "azy/symplectic_matrix.hpp"

namespace azy {

using Json = nlohmann::ordered_json;

/// Invalid user input (flags, files); maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double eps = 1e-12;
  std::uint64_t seed = 1;
  int samples = 5;
  bool high_precision = false;
  std::string output_path;
  std::string tau_path;

  /// Throws ConfigError unless 1e-30 <= eps < 1 and samples >= 1.
  void validate() const;
  /// eps for high-precision evaluation: min(eps, 1e-30).
  [[nodiscard]] double precise_eps() const { return eps < 1e-30 ? eps : 1e-30; }
};

struct CheckRecord {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  Json detail;
};

class EvalReport {
 public:
  EvalReport(std::string command, RunConfig config) : command_(std::move(command)), config_(std::move(config)) {}

  /// Records a check; passed iff residual <= tolerance (NaN fails).
  CheckRecord& check(const std::string& name, double residual, double tolerance, Json detail = Json::object());
  /// Exact check: residual 0 when ok, 1 otherwise, tolerance 0.
  CheckRecord& check_exact(const std::string& name, bool ok, Json detail = Json::object());

  Json& results() { return results_; }
  void add_timing(const std::string& name, double seconds) { timings_[name] += seconds; }

  [[nodiscard]] bool all_passed() const;
  [[nodiscard]] const std::vector<CheckRecord>& checks() const { return checks_; }
  [[nodiscard]] const std::map<std::string, double>& timings() const { return timings_; }
  [[nodiscard]] const std::string& command() const { return command_; }

  /// Deterministic document: command, config echo, checks, results, verdict.
  /// Timings are kept out so that reports are byte-identical across runs.
  [[nodiscard]] Json to_json() const;
  /// One line per check plus the verdict and timings.
  [[nodiscard]] std::string summary() const;

 private:
  std::string command_;
  RunConfig config_;
  std::vector<CheckRecord> checks_;
  Json results_ = Json::object();
  std::map<std::string, double> timings_;
};

Json complex_json(std::complex<double> z);
Json matrix_json(const SymplecticMatrix& m);
Json tau_json(const SiegelPoint<double>& tau);

/// {"g": 2, "entries": [[[re, im], ...], ...]}.
SiegelPoint<double> parse_tau(const Json& j);
/// A single point, a list of points, or {"samples": [...]}.
std::vector<SiegelPoint<double>> parse_tau_list(const Json& j);
std::vector<SiegelPoint<double>> load_tau_file(const std::string& path);

/// Row-major integer rows; validated as symplectic.
SymplecticMatrix parse_matrix(const Json& j);

}  // namespace azy
