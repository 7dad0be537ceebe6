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

#include <random>

#include "azy/siegel.hpp"
#include "azy/symplectic.hpp"
#include "oracles.hpp"

namespace azy {
namespace {

std::array<std::array<long long, 4>, 4> plain(const SymplecticMatrix& m) {
  std::array<std::array<long long, 4>, 4> r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
  return r;
}

TEST(SymplecticMatrix, MembershipExamples) {
  EXPECT_TRUE(is_symplectic(SymplecticMatrix::identity(2).rows()));
  EXPECT_TRUE(is_symplectic(SymplecticMatrix::involution_j(2).rows()));
  const IntRows diag{{2, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  EXPECT_FALSE(is_symplectic(diag));
  EXPECT_THROW(SymplecticMatrix::from_rows(diag), std::invalid_argument);
  EXPECT_THROW(is_symplectic(IntRows{{1, 0, 0}}), std::invalid_argument);
}

TEST(SymplecticMatrix, RandomWordsAgreeWithOracle) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_word(rng, 1 + static_cast<int>(rng() % 10));
    EXPECT_TRUE(oracle::symplectic4(plain(g)));
    EXPECT_TRUE(oracle::symplectic4(plain(g.inverse())));
    EXPECT_EQ(g * g.inverse(), SymplecticMatrix::identity(2));
  }
}

TEST(SymplecticMatrix, WordEvaluation) {
  std::mt19937_64 rng(2);
  Word w;
  const auto g = random_word(rng, 7, &w);
  EXPECT_EQ(w.size(), 7u);
  EXPECT_EQ(evaluate_word(w), g);
}

TEST(Subgroups, Examples) {
  const auto id = SymplecticMatrix::identity(2);
  for (int n : {2, 3, 4}) EXPECT_TRUE(in_subgroup(id, SubgroupSpec::principal(n)));
  EXPECT_TRUE(in_subgroup(eta0(), SubgroupSpec::theta0(2)));
  EXPECT_FALSE(in_subgroup(SymplecticMatrix::involution_j(2), SubgroupSpec::theta0(2)));
  EXPECT_FALSE(in_subgroup(eta0(), SubgroupSpec::principal(2)));
  EXPECT_EQ(parse_subgroup("theta0-2"), SubgroupSpec::theta0(2));
  EXPECT_EQ(to_string(SubgroupSpec::principal(2)), "principal-2");
  EXPECT_THROW(parse_subgroup("bogus"), std::invalid_argument);
}

TEST(Subgroups, RandomElementsStayInside) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    EXPECT_TRUE(in_subgroup(random_subgroup_element(SubgroupSpec::theta0(2), rng), SubgroupSpec::theta0(2)));
    EXPECT_TRUE(in_subgroup(random_subgroup_element(SubgroupSpec::principal(2), rng), SubgroupSpec::principal(2)));
  }
}

TEST(Cosets, Theta0HasIndex15) {
  const auto cs = coset_reps(SubgroupSpec::theta0(2));
  EXPECT_EQ(cs.index(), 15);
  EXPECT_EQ(cs.representatives.front(), SymplecticMatrix::identity(2));
  EXPECT_TRUE(cosets_are_distinct(cs));
  for (int i = 0; i < cs.index(); ++i)
    EXPECT_EQ(evaluate_word(cs.words[static_cast<std::size_t>(i)]), cs.representatives[static_cast<std::size_t>(i)]);
}

TEST(Cosets, PrincipalHasIndex720) {
  const auto cs = coset_reps(SubgroupSpec::principal(2));
  EXPECT_EQ(cs.index(), 720);
  EXPECT_EQ(cs.representatives.front(), SymplecticMatrix::identity(2));
  EXPECT_TRUE(cosets_are_distinct(cs));
}

TEST(Cosets, PerturbedSystemIsStillASystem) {
  const auto cs = coset_reps(SubgroupSpec::theta0(2));
  const auto alt = perturbed_coset_system(cs, 9);
  EXPECT_EQ(alt.index(), 15);
  EXPECT_TRUE(cosets_are_distinct(alt));
  EXPECT_NE(alt.representatives, cs.representatives);
}

TEST(Cosets, StabilizerOfM0IsTheta0) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const auto g = random_word(rng, 1 + static_cast<int>(rng() % 12));
    EXPECT_EQ(stabilizes_m0(g), in_subgroup(g, SubgroupSpec::theta0(2)));
  }
}

TEST(SiegelAction, Examples) {
  const auto i1 = SiegelPoint<double>::scalar_imaginary(2, 1.0);
  const auto t = SiegelPoint<double>::genus2({0.1, 1.2}, {0.3, 0.2}, {-0.2, 0.9});
  const auto same = act_tau(SymplecticMatrix::identity(2), t);
  for (int k = 0; k < 3; ++k) EXPECT_LT(std::abs(same.upper()[k] - t.upper()[k]), 1e-15);
  const auto fixed = act_tau(SymplecticMatrix::involution_j(2), i1);
  for (int k = 0; k < 3; ++k) EXPECT_LT(std::abs(fixed.upper()[k] - i1.upper()[k]), 1e-15);
  const auto moved = act_tau(SymplecticMatrix::translation(2, {1, 2, 2, -1}), t);
  EXPECT_LT(std::abs(moved(0, 0) - (t(0, 0) + 1.0)), 1e-15);
  EXPECT_LT(std::abs(moved(0, 1) - (t(0, 1) + 2.0)), 1e-15);
  EXPECT_LT(std::abs(moved(1, 1) - (t(1, 1) - 1.0)), 1e-15);
  EXPECT_THROW(SiegelPoint<double>::genus2({0, 1}, {0, 2}, {0, 1}), std::domain_error);
}

TEST(SiegelAction, AutomorphyExamplesAndCocycle) {
  const auto i1 = SiegelPoint<double>::scalar_imaginary(2, 1.0);
  EXPECT_LT(std::abs(automorphy_factor(SymplecticMatrix::translation(2, {1, 0, 0, 0}), i1, HalfInteger::integer(7)) -
                     1.0),
            1e-15);
  EXPECT_LT(std::abs(automorphy_factor(SymplecticMatrix::involution_j(2), i1, HalfInteger::integer(2)) - 1.0), 1e-14);
  std::mt19937_64 rng(6);
  std::normal_distribution<double> nd;
  for (int i = 0; i < 50; ++i) {
    const auto g = random_word(rng, 1 + static_cast<int>(rng() % 5));
    const auto h = random_word(rng, 1 + static_cast<int>(rng() % 5));
    const auto tau = SiegelPoint<double>::genus2({0.3 * nd(rng), 1.0 + 0.1 * std::abs(nd(rng))}, {0.1 * nd(rng), 0.1},
                                                 {0.3 * nd(rng), 1.2});
    const auto k = HalfInteger::integer(2);
    const auto lhs = automorphy_factor(g * h, tau, k);
    const auto rhs = automorphy_factor(g, act_tau(h, tau), k) * automorphy_factor(h, tau, k);
    EXPECT_LT(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST(SiegelAction, GroupActionComposes) {
  std::mt19937_64 rng(8);
  const auto tau = SiegelPoint<double>::genus2({0.05, 1.1}, {0.1, 0.2}, {-0.1, 0.95});
  for (int i = 0; i < 30; ++i) {
    const auto g = random_word(rng, 3);
    const auto h = random_word(rng, 3);
    const auto a = act_tau(g * h, tau);
    const auto b = act_tau(g, act_tau(h, tau));
    for (int k = 0; k < 3; ++k) EXPECT_LT(std::abs(a.upper()[k] - b.upper()[k]), 1e-10 * (1 + std::abs(a.upper()[k])));
  }
}

}  // namespace
}  // namespace azy
