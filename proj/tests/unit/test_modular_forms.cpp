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

#include <algorithm>

#include "azy/azy_construction.hpp"
#include "azy/modular_forms.hpp"
#include "oracles.hpp"

namespace azy {
namespace {

using cd = std::complex<double>;

double rel(cd a, cd b) { return std::abs(a - b) / std::abs(b); }

const CosetSystem& c720() {
  static const CosetSystem cs = coset_reps(SubgroupSpec::principal(2));
  return cs;
}

TEST(Chi5, ProductAgreesWithDirectThetas) {
  for (const auto& t : sample_taus(31, 3)) {
    oracle::cld prod = 1;
    for (const auto& m : even_characteristics(2)) prod *= oracle::cld(oracle::theta2_code(m.code(), t(0, 0), t(0, 1), t(1, 1)));
    EXPECT_LT(rel(chi5_product(t, 1e-14).value, cd(prod)), 1e-12);
  }
}

// i 1_2 lies on the diagonal locus, where theta_[11;11] (and chi5) vanish;
// off the diagonal a purely imaginary point gives a real nonzero value.
TEST(Chi5, ValuesAtPurelyImaginaryPoints) {
  EXPECT_LT(std::abs(chi5_product(SiegelPoint<double>::scalar_imaginary(2, 1.0), 1e-14).value), 1e-16);
  const auto v = chi5_product(SiegelPoint<double>::genus2(cd(0, 1.0), cd(0, 0.3), cd(0, 1.2)), 1e-14).value;
  EXPECT_GT(std::abs(v), 1e-4);
  EXPECT_LT(std::abs(v.imag()), 1e-15 * std::abs(v));
}

TEST(Chi5, SquareIsChi10) {
  for (const auto& t : sample_taus(32, 4)) {
    const cd a = chi5_product(t, 1e-14).value;
    EXPECT_LT(rel(chi10(t, 1e-14).value, a * a), 1e-13);
  }
}

TEST(Chi5, VanishesOnDiagonalLocus) {
  const auto t = SiegelPoint<double>::genus2(cd(0.1, 1.1), 0.0, cd(-0.2, 0.9));
  EXPECT_LT(std::abs(chi5_product(t, 1e-14).value), 1e-15);
  EXPECT_LT(std::abs(chi5_determinant(t, 1e-14).value), 1e-13);
}

TEST(Chi5, DeterminantMatchesGaussianElimination) {
  for (const auto& t : sample_taus(33, 3)) {
    const auto jet = theta_second_order_jet(t, 1e-14);
    std::vector<oracle::cld> m(16);
    for (std::size_t c = 0; c < 4; ++c) {
      m[c] = jet.values[c].value;
      for (std::size_t e = 0; e < 3; ++e) m[4 * (e + 1) + c] = jet.gradients[c][e];
    }
    EXPECT_LT(rel(chi5_determinant(t, 1e-14).value, oracle::gauss_det(m, 4)), 1e-11);
  }
}

TEST(Chi5, Det4Alternates) {
  std::array<cd, 16> m{};
  for (int i = 0; i < 16; ++i) m[static_cast<std::size_t>(i)] = cd(std::sin(1.0 + i), std::cos(3.0 * i));
  auto swapped = m;
  for (std::size_t r = 0; r < 4; ++r) std::swap(swapped[4 * r], swapped[4 * r + 2]);
  EXPECT_LT(std::abs(det4(m) + det4(swapped)), 1e-14);
  std::vector<oracle::cld> v(m.begin(), m.end());
  EXPECT_LT(std::abs(det4(m) - oracle::gauss_det(v, 4)), 1e-13);
}

// The determinant is proportional to the theta product with one constant mu.
TEST(Chi5, ProductOverDeterminantIsConstant) {
  std::vector<cd> ratios;
  for (const auto& t : sample_taus(34, 6)) ratios.push_back(chi5_product(t, 1e-14).value / chi5_determinant(t, 1e-14).value);
  const auto s = ratio_stats(ratios);
  EXPECT_LT(s.relative_spread, 1e-6);
  EXPECT_GT(std::abs(s.median), 0.0);
}

TEST(P2, PositiveAtScalarImaginaryAndOddUnderEta0) {
  const auto v = p2(SiegelPoint<double>::scalar_imaginary(2, 1.0), 1e-14).value;
  EXPECT_GT(v.real(), 0.0);
  EXPECT_EQ(v.imag(), 0.0);
  for (const auto& t : sample_taus(35, 5)) EXPECT_LT(rel(p2(act_tau(eta0(), t), 1e-14).value, -p2(t, 1e-14).value), 1e-9);
}

TEST(P2, WeightTwoOnLevelTwo) {
  std::mt19937_64 rng(3);
  const auto pts = sample_taus(36, 3);
  for (int i = 0; i < 15; ++i) {
    const auto g = random_subgroup_element(SubgroupSpec::principal(2), rng, 3);
    const auto& t = pts[static_cast<std::size_t>(i) % pts.size()];
    const cd d = automorphy_det(g, t);
    EXPECT_LT(rel(p2(act_tau(g, t), 1e-14).value, d * d * p2(t, 1e-14).value), 1e-9);
  }
}

TEST(Symmetrize, InvariantBaseReturnsItself) {
  const auto t = sample_taus(37, 1)[0];
  BaseFunction<double> base = [](const SiegelPoint<double>& x, double eps) { return chi10(x, eps); };
  const auto v = symmetrize(base, trivial_context(10, c720(), 720, "chi10"), t, 1e-14);
  EXPECT_LT(rel(v.value, chi10(t, 1e-14).value), 1e-9);
}

TEST(Symmetrize, RejectsBaseWithoutLevelTwoModularity) {
  const auto t = sample_taus(38, 1)[0];
  BaseFunction<double> base = [](const SiegelPoint<double>& x, double eps) {
    return FormValue<double>{theta_constant(Characteristic::from_code(2, 0), x, eps).value, 0.0};
  };
  EXPECT_THROW(symmetrize(base, trivial_context(1, c720(), 1, "bad"), t, 1e-14), std::runtime_error);
}

TEST(Symmetrize, IndependentOfRepresentatives) {
  const auto t = sample_taus(39, 1)[0];
  CosetSystem alt;
  alt.subgroup = c720().subgroup;
  std::mt19937_64 rng(4);
  for (const auto& g : c720().representatives)
    alt.representatives.push_back(random_subgroup_element(SubgroupSpec::principal(2), rng, 2) * g);
  alt.words.resize(alt.representatives.size());
  BaseFunction<double> base = [](const SiegelPoint<double>& x, double eps) { return azy_base(x, eps); };
  const auto a = symmetrize(base, chi_p_context(30, c720(), 12, "azy"), t, 1e-14).value;
  const auto b = symmetrize(base, chi_p_context(30, alt, 12, "azy"), t, 1e-14).value;
  EXPECT_LT(rel(b, a), 1e-9);
}

TEST(Azy, BaseTripleIsMinus) { EXPECT_EQ(classify_triple(azy_base_triple()), TripleClass::minus); }

TEST(Azy, TransformsWithChiP) {
  const auto pts = sample_taus(40, 2);
  for (const auto& g : generators()) {
    for (const auto& t : pts) {
      const cd d = automorphy_det(g, t);
      const cd lhs = azy_classical(act_tau(g, t), 1e-14, c720()).value;
      const cd rhs = double(chi_p(g)) * std::pow(d, 30) * azy_classical(t, 1e-14, c720()).value;
      EXPECT_LT(rel(lhs, rhs), 1e-6);
    }
  }
}

TEST(Azy, ChangesSignUnderEta0AndDecaysAlongCusp) {
  for (const auto& t : sample_taus(41, 3)) {
    const cd v = azy_classical(t, 1e-14, c720()).value;
    EXPECT_GT(std::abs(v), 1e-8);
    EXPECT_LT(rel(azy_classical(act_tau(eta0(), t), 1e-14, c720()).value, -v), 1e-9);
  }
  const auto base = SiegelPoint<double>::genus2(cd(0.05, 1.0), cd(0.1, 0.3), cd(-0.1, 1.0));
  double prev = INFINITY;
  for (double s : {1.0, 1.5, 2.0}) {
    const double m = std::abs(azy_classical(base.scaled(s), 1e-14, c720()).value);
    EXPECT_LT(m, prev);
    prev = m;
  }
}

// Expanding the character-weighted sum gives each of the 60 minus triples
// with coefficient +-1, each reached by 12 cosets.
TEST(Azy, ExpansionCoversTheMinusTriples) {
  const auto terms = azy_expansion(sample_taus(42, 1)[0], 1e-14, c720());
  ASSERT_EQ(terms.size(), 60u);
  for (const auto& t : terms) {
    const auto e = t.triple.elements();
    ASSERT_EQ(e.size(), 3u);
    EXPECT_EQ(classify_triple(CharTriple({e[0], e[1], e[2]})), TripleClass::minus);
    EXPECT_EQ(t.count, 12);
    EXPECT_LT(std::abs(std::abs(t.coefficient) - 1.0), 1e-9);
    EXPECT_LT(t.spread, 1e-9);
  }
}

TEST(Chi12, NonzeroWeight12) {
  const auto t = sample_taus(43, 1)[0];
  const cd v = chi12(t, 1e-14, c720()).value;
  EXPECT_GT(std::abs(v), 1e-8);
  for (const auto& g : generators()) {
    const cd d = automorphy_det(g, t);
    EXPECT_LT(rel(chi12(act_tau(g, t), 1e-14, c720()).value, std::pow(d, 12) * v), 1e-8);
  }
}

TEST(HighPrecision, Chi5AgreesWithDouble) {
  const auto t = sample_taus(44, 1)[0];
  const auto hp = chi5_product(t.convert<HighReal>(), 1e-30);
  EXPECT_LT(rel(to_double(hp.value), chi5_product(t, 1e-15).value), 1e-13);
}

}  // namespace
}  // namespace azy
