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

// Verification campaigns behind the command-line subcommands. Each returns
// a report whose checks decide the exit status.

#include <string>
#include <vector>

#include "azy/report.hpp"
#include "azy/symplectic.hpp"

namespace azy {

/// --tau file when given, otherwise cfg.samples seeded draws.
std::vector<SiegelPoint<double>> campaign_samples(const RunConfig& cfg);

/// Order of the group generated by psi_P of the generators (closure on S_6).
int psi_p_image_order();

EvalReport run_orbits(const RunConfig& cfg);
EvalReport run_cosets(const RunConfig& cfg, const SubgroupSpec& subgroup);
EvalReport run_generators(const RunConfig& cfg);
EvalReport run_verify_addition(const RunConfig& cfg, const std::string& command = "verify-addition");
EvalReport run_verify_transform(const RunConfig& cfg);
EvalReport run_geometry_tetrahedra(const RunConfig& cfg);

/// form in {chi5, chi5det, chi10, p2, chi12, azy}.
EvalReport run_forms_eval(const RunConfig& cfg, const std::string& form);
const std::vector<std::string>& form_names();

EvalReport run_azy_verify(const RunConfig& cfg);
EvalReport run_azy_lambda(const RunConfig& cfg);

}  // namespace azy
