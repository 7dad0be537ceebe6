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

#include <gtest/gtest.h>

#include "azy/campaigns.hpp"
#include "azy/report.hpp"

namespace azy {
namespace {

TEST(RunConfig, Validation) {
  RunConfig c;
  EXPECT_NO_THROW(c.validate());
  c.eps = 1e-31;
  EXPECT_THROW(c.validate(), ConfigError);
  c.eps = 1e-12;
  c.samples = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c.samples = 1;
  EXPECT_EQ(c.precise_eps(), 1e-30);
}

TEST(Report, VerdictsAndJson) {
  EvalReport r("demo", RunConfig{});
  r.check("small", 1e-12, 1e-10);
  r.check("nan", std::nan(""), 1.0);
  r.check_exact("exact", true);
  r.add_timing("phase", 1.5);
  EXPECT_FALSE(r.all_passed());
  const auto j = r.to_json();
  EXPECT_EQ(j["checks"][0]["verdict"], "PASS");
  EXPECT_EQ(j["checks"][1]["verdict"], "FAIL");
  EXPECT_TRUE(j["checks"][1]["residual"].is_string());
  EXPECT_EQ(j["verdict"], "FAIL");
  EXPECT_FALSE(j.dump().find("phase") != std::string::npos);
  EXPECT_NE(r.summary().find("time phase"), std::string::npos);
}

TEST(TauFormat, RoundTrip) {
  const auto t = SiegelPoint<double>::genus2({0.1, 1.2}, {0.3, -0.1}, {-0.2, 0.9});
  const auto back = parse_tau(tau_json(t));
  EXPECT_EQ(back.upper(), t.upper());
  const auto list = parse_tau_list(Json{{"samples", Json::array({tau_json(t), tau_json(t)})}});
  EXPECT_EQ(list.size(), 2u);
  const auto g1 = parse_tau(Json::parse(R"({"g":1,"entries":[[[0.5,2.0]]]})"));
  EXPECT_EQ(g1.genus(), 1);
}

TEST(TauFormat, Rejections) {
  EXPECT_THROW(parse_tau(Json::parse(R"({"g":2,"entries":[[[0,1],[0,0]],[[1,0],[0,1]]]})")), ConfigError);
  EXPECT_THROW(parse_tau(Json::parse(R"({"g":2,"entries":[[[0,1],[0,2]],[[0,2],[0,1]]]})")), ConfigError);
  EXPECT_THROW(parse_tau(Json::parse(R"({"g":3,"entries":[]})")), ConfigError);
  EXPECT_THROW(parse_tau(Json::parse(R"([1,2])")), ConfigError);
  EXPECT_THROW(parse_tau_list(Json::array()), ConfigError);
  EXPECT_THROW(load_tau_file("/nonexistent/tau.json"), ConfigError);
}

TEST(MatrixFormat, RoundTripAndRejection) {
  const auto j = SymplecticMatrix::involution_j(2);
  EXPECT_EQ(parse_matrix(matrix_json(j)), j);
  EXPECT_THROW(parse_matrix(Json::parse("[[2,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]")), ConfigError);
  EXPECT_THROW(parse_matrix(Json::parse("[[1.5]]")), ConfigError);
}

TEST(Campaigns, OrbitsAndCosets) {
  RunConfig c;
  auto o = run_orbits(c);
  EXPECT_TRUE(o.all_passed());
  EXPECT_EQ(o.results()["quadruples"]["star"], 180);
  const auto cs = run_cosets(c, SubgroupSpec::theta0(2));
  EXPECT_TRUE(cs.all_passed());
  EXPECT_EQ(cs.to_json()["results"]["index"], 15);
}

TEST(Campaigns, DeterministicJson) {
  RunConfig c;
  c.seed = 7;
  c.samples = 3;
  EXPECT_EQ(run_verify_transform(c).to_json().dump(), run_verify_transform(c).to_json().dump());
  EXPECT_EQ(run_azy_lambda(c).to_json().dump(), run_azy_lambda(c).to_json().dump());
}

TEST(Campaigns, UnknownFormIsAConfigError) {
  EXPECT_THROW(run_forms_eval(RunConfig{}, "chi7"), ConfigError);
}

}  // namespace
}  // namespace azy
