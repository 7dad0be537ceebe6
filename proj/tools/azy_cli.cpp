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

// azy: verification campaigns for the weight-30 form built from the
// tetrahedra of the Kummer quartic.
//
// The JSON report goes to --out when given (summary on stdout), otherwise to
// stdout (summary on stderr). Exit status: 0 all checks pass, 1 some check
// failed, 2 usage or configuration error.

#include <fstream>
#include <functional>
#include <iostream>

#include <CLI11.hpp>

#include "azy/campaigns.hpp"
#include "azy/siegel.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

int emit(const azy::EvalReport& report, const azy::RunConfig& cfg) {
  const std::string doc = report.to_json().dump(2) + "\n";
  if (cfg.output_path.empty()) {
    std::cout << doc << std::flush;
    std::cerr << report.summary();
  } else {
    std::ofstream out(cfg.output_path, std::ios::binary);
    if (!out) throw azy::ConfigError("cannot write '" + cfg.output_path + "'");
    out << doc;
    std::cout << report.summary();
  }
  return report.all_passed() ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  azy::set_warning_handler([](const std::string& msg) { std::cerr << "warning: " << msg << "\n"; });

  CLI::App app{"Theta-constant, coset and tetrahedron checks for the weight-30 Siegel form (azy)_5"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  azy::RunConfig cfg;
  bool show_generators = false;
  app.add_option("--eps", cfg.eps, "Truncation tolerance for theta sums")->capture_default_str();
  app.add_option("--seed", cfg.seed, "Seed for sample points and random group elements")->capture_default_str();
  app.add_option("--samples", cfg.samples, "Number of generated tau samples")->capture_default_str();
  app.add_flag("--hiprec", cfg.high_precision, "Use 50-digit arithmetic where supported");
  app.add_option("--tau", cfg.tau_path, "JSON file of tau points (overrides generated samples)");
  app.add_option("--out", cfg.output_path, "Write the JSON report here");
  app.add_flag("--generators", show_generators, "Print the fixed generators of Sp(4, Z)");

  std::function<azy::EvalReport()> action;
  auto bind = [&](CLI::App* sub, std::function<azy::EvalReport()> fn) {
    sub->callback([&action, fn = std::move(fn)] { action = fn; });
  };

  bind(app.add_subcommand("orbits", "Characteristic counts and orbit classes"), [&] { return azy::run_orbits(cfg); });

  std::string subgroup = "theta0-2";
  auto* cosets = app.add_subcommand("cosets", "Coset representatives of a congruence subgroup");
  cosets->add_option("--subgroup", subgroup, "theta0-2 or principal-2")->capture_default_str();
  bind(cosets, [&] { return azy::run_cosets(cfg, azy::parse_subgroup(subgroup)); });

  bind(app.add_subcommand("verify-addition", "Quadratic relations among second-order theta constants"),
       [&] { return azy::run_verify_addition(cfg); });
  bind(app.add_subcommand("verify-transform", "Theta transformation law and multiplier checks"),
       [&] { return azy::run_verify_transform(cfg); });

  auto* geometry = app.add_subcommand("geometry", "Quadric intersections and tetrahedra");
  geometry->require_subcommand(1);
  auto* tetra = geometry->add_subcommand("tetrahedra", "All 15 tetrahedra with vertices and faces");
  tetra->add_flag("--all", "Report every tetrahedron (default)");
  bind(tetra, [&] { return azy::run_geometry_tetrahedra(cfg); });
  bind(geometry->add_subcommand("verify-addition", "Residuals of the ten quadrics"),
       [&] { return azy::run_verify_addition(cfg, "geometry verify-addition"); });

  std::string form;
  auto add_form_option = [&](CLI::App* sub) {
    sub->add_option("--form", form, "chi5, chi5det, chi10, p2, chi12 or azy")
        ->required()
        ->check(CLI::IsMember(azy::form_names()));
  };
  auto* forms = app.add_subcommand("forms", "Evaluate modular forms");
  forms->require_subcommand(1);
  auto* forms_eval = forms->add_subcommand("eval", "Evaluate one form at the sample points");
  add_form_option(forms_eval);
  bind(forms_eval, [&] { return azy::run_forms_eval(cfg, form); });
  auto* forms_eval_flat = app.add_subcommand("forms-eval", "Same as 'forms eval'");
  add_form_option(forms_eval_flat);
  bind(forms_eval_flat, [&] { return azy::run_forms_eval(cfg, form); });

  auto* azy_cmd = app.add_subcommand("azy", "The 15-coset product and its proportionality constant");
  azy_cmd->require_subcommand(1);
  auto* verify = azy_cmd->add_subcommand("verify", "Full pipeline");
  verify->add_flag("--all", "Run every check (default)");
  bind(verify, [&] { return azy::run_azy_verify(cfg); });
  bind(azy_cmd->add_subcommand("lambda", "Ratio phi / azy over the samples"), [&] { return azy::run_azy_lambda(cfg); });
  auto* verify_flat = app.add_subcommand("azy-verify", "Same as 'azy verify'");
  verify_flat->add_flag("--all", "Run every check (default)");
  bind(verify_flat, [&] { return azy::run_azy_verify(cfg); });
  bind(app.add_subcommand("azy-lambda", "Same as 'azy lambda'"), [&] { return azy::run_azy_lambda(cfg); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    cfg.validate();
    if (!action) {
      if (!show_generators) {
        std::cerr << app.help();
        return kExitUsage;
      }
      action = [&] { return azy::run_generators(cfg); };
    }
    return emit(action(), cfg);
  } catch (const azy::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "check aborted: " << e.what() << "\n";
    return kExitFail;
  }
}
