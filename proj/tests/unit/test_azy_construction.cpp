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

#include "azy/azy_construction.hpp"

namespace azy {
namespace {

using cd = std::complex<double>;

double rel(cd a, cd b) { return std::abs(a - b) / std::abs(b); }

const CosetSystem& c15() {
  static const CosetSystem cs = coset_reps(SubgroupSpec::theta0(2));
  return cs;
}
const CosetSystem& c720() {
  static const CosetSystem cs = coset_reps(SubgroupSpec::principal(2));
  return cs;
}

TEST(PhiGamma, IdentityAndEta0GiveP2) {
  for (const auto& t : sample_taus(61, 3)) {
    const cd p = p2(t, 1e-14).value;
    EXPECT_LT(rel(phi_gamma(SymplecticMatrix::identity(2), t, 1e-14).value, p), 1e-15);
    EXPECT_LT(rel(phi_gamma(eta0(), t, 1e-14).value, p), 1e-9);
  }
}

TEST(PhiGamma, FactorsCarryChiP) {
  const auto f = phi_factors(c15());
  ASSERT_EQ(f.size(), 15u);
  for (const auto& x : f) EXPECT_EQ(x.chi_sign, chi_p(x.gamma));
}

TEST(SignDefect, Examples) {
  EXPECT_EQ(theta0_sign_defect(SymplecticMatrix::identity(2)), 1);
  EXPECT_EQ(theta0_sign_defect(eta0()), 1);
  EXPECT_EQ(theta0_sign_defect(SymplecticMatrix::block_diagonal(2, {0, 1, 1, 0})), -1);
  EXPECT_EQ(theta0_sign_defect(SymplecticMatrix::block_diagonal(2, {1, 1, 0, 1})), -1);
  EXPECT_EQ(theta0_sign_defect(SymplecticMatrix::lower_translation(2, {2, 0, 0, 0})), 1);
}

TEST(SignDefect, IsACharacterOnTheta0) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const auto a = random_subgroup_element(SubgroupSpec::theta0(2), rng, 5);
    const auto b = random_subgroup_element(SubgroupSpec::theta0(2), rng, 5);
    EXPECT_EQ(theta0_sign_defect(a * b), theta0_sign_defect(a) * theta0_sign_defect(b));
  }
}

// F_{M0} transforms under Gamma_{2,0}(2) with chi_P times the sign defect,
// not with chi_P alone: the block-diagonal swap fixes P2 while chi_P = -1.
TEST(PhiGamma, LeftMultiplicationBySubgroup) {
  const auto swap = SymplecticMatrix::block_diagonal(2, {0, 1, 1, 0});
  const auto t = sample_taus(62, 1)[0];
  EXPECT_EQ(chi_p(swap), -1);
  EXPECT_LT(rel(p2(act_tau(swap, t), 1e-14).value, p2(t, 1e-14).value), 1e-13);
  EXPECT_LT(rel(phi_gamma(swap, t, 1e-14).value, -p2(t, 1e-14).value), 1e-13);

  std::mt19937_64 rng(3);
  const auto pts = sample_taus(63, 3);
  for (int i = 0; i < 30; ++i) {
    const auto& g = c15().representatives[static_cast<std::size_t>(i % 15)];
    const auto h = random_subgroup_element(SubgroupSpec::theta0(2), rng, 4);
    const auto& t2 = pts[static_cast<std::size_t>(i) % pts.size()];
    EXPECT_LT(rel(phi_gamma(h * g, t2, 1e-14).value, double(theta0_sign_defect(h)) * phi_gamma(g, t2, 1e-14).value),
              1e-9);
  }
}

TEST(Phi, RepresentativeChangeIsPredictedSign) {
  const auto pts = sample_taus(64, 3);
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto alt = perturbed_coset_system(c15(), seed);
    const int sign = phi_system_sign(c15(), alt);
    for (const auto& t : pts) EXPECT_LT(rel(phi(t, 1e-14, alt).value, double(sign) * phi(t, 1e-14, c15()).value), 1e-8);
  }
  EXPECT_EQ(phi_system_sign(c15(), c15()), 1);
}

TEST(Phi, ModularWithCharacterChiP) {
  for (const auto& t : sample_taus(65, 3))
    for (const auto& g : generators()) EXPECT_LT(phi_modularity_residual(g, t, 1e-14, c15()), 1e-10);
  std::mt19937_64 rng(6);
  const auto t = sample_taus(66, 1)[0];
  for (int i = 0; i < 5; ++i) EXPECT_LT(phi_modularity_residual(random_word(rng, 3), t, 1e-14, c15()), 1e-8);
}

TEST(Phi, MagnitudeIsProductOfFactors) {
  const auto i1 = SiegelPoint<double>::scalar_imaginary(2, 1.0);
  double mags = 1.0;
  for (const auto& g : c15().representatives) mags *= std::abs(phi_gamma(g, i1, 1e-14).value);
  const auto v = phi(i1, 1e-14, c15());
  EXPECT_TRUE(std::isfinite(std::abs(v.value)));
  EXPECT_LT(std::abs(std::abs(v.value) / mags - 1.0), 1e-13);
}

TEST(Lambda, RatioIsConstant) {
  std::vector<SiegelPoint<double>> pts = sample_taus(7, 5);
  const auto est = estimate_lambda(pts, 1e-12, c15(), c720());
  EXPECT_TRUE(est.rejected.empty());
  EXPECT_LT(est.stats.relative_spread, kLambdaTolerance);
  // Observed value: -1 / (2^57 * 1000).
  EXPECT_LT(rel(est.stats.median, cd(-1.0 / (std::ldexp(1.0, 57) * 1000.0))), 1e-10);
}

TEST(Lambda, HighPrecisionSpread) {
  std::vector<SiegelPoint<HighReal>> pts;
  for (const auto& t : sample_taus(7, 2)) pts.push_back(t.convert<HighReal>());
  const auto est = estimate_lambda(pts, 1e-30, c15(), c720());
  EXPECT_LT(est.stats.relative_spread, kLambdaTolerancePrecise);
}

TEST(Ratios, MedianAndSpread) {
  const auto s = ratio_stats({cd(1, 0), cd(1.0 + 1e-6, 0), cd(1.0 - 1e-6, 0)});
  EXPECT_EQ(s.median, cd(1, 0));
  EXPECT_NEAR(s.relative_spread, 2e-6, 1e-12);  // max pairwise distance / |median|
}

TEST(Crosscheck, IdentityRatioIsOne) {
  const auto s = crosscheck_geometric(SymplecticMatrix::identity(2), sample_taus(67, 5), 1e-14);
  for (const auto& r : s.ratios) EXPECT_LT(std::abs(r - 1.0), 1e-15);
}

TEST(Crosscheck, AllFifteenConstant) {
  const auto pts = sample_taus(68, 5);
  for (const auto& g : c15().representatives) EXPECT_LT(crosscheck_geometric(g, pts, 1e-14).relative_spread, 1e-5);
}

TEST(Crosscheck, GeometricProductOverPhiConstantAndScalesWithFaces) {
  const auto pts = sample_taus(69, 5);
  std::vector<cd> ratios, scaled;
  auto tets = all_tetrahedra();
  auto bumped = tets;
  bumped[4].faces[2] *= 2.0;
  for (const auto& t : pts) {
    const cd ph = phi(t, 1e-14, c15()).value;
    ratios.push_back(geometric_product(t, 1e-14, tets) / ph);
    scaled.push_back(geometric_product(t, 1e-14, bumped) / ph);
  }
  const auto a = ratio_stats(ratios);
  const auto b = ratio_stats(scaled);
  EXPECT_LT(a.relative_spread, 1e-5);
  EXPECT_LT(rel(b.median, 2.0 * a.median), 1e-12);
}

TEST(Sampling, DeterministicAndInsideTheDomain) {
  const auto a = sample_taus(5, 4);
  const auto b = sample_taus(5, 4);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].upper(), b[i].upper());
    EXPECT_GT(a[i].lambda_min(), 0.4);
  }
  EXPECT_NE(sample_taus(6, 1)[0].upper(), a[0].upper());
}

}  // namespace
}  // namespace azy
