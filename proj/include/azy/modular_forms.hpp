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

// Genus-2 modular forms built from theta constants: chi_5 (as a theta
// product and as a Jacobian-type determinant of second-order theta
// constants), chi_10, P_2, and forms obtained by character-weighted
// symmetrization over Sp(4, Z) / Gamma_2(2).

#include <functional>
#include <string>
#include <vector>

#include "azy/characteristic.hpp"
#include "azy/siegel.hpp"
#include "azy/symplectic.hpp"
#include "azy/theta.hpp"

namespace azy {

template <class Real>
struct FormValue {
  Complex<Real> value;
  /// First-order propagation of the theta tail bounds.
  double abs_error_bound = 0.0;
};

/// Product of the ten even theta constants.
template <class Real>
FormValue<Real> chi5_product(const SiegelPoint<Real>& tau, double eps);

/// det of the 4x4 matrix with rows (Theta), (dTheta/dtau11), (dTheta/dtau12),
/// (dTheta/dtau22); columns Theta_00, Theta_01, Theta_10, Theta_11.
template <class Real>
FormValue<Real> chi5_determinant(const SiegelPoint<Real>& tau, double eps);

template <class Real>
FormValue<Real> chi10(const SiegelPoint<Real>& tau, double eps);

/// Theta_00 Theta_01 Theta_10 Theta_11.
template <class Real>
FormValue<Real> p2(const SiegelPoint<Real>& tau, double eps);

/// Leibniz-formula determinant of a row-major 4x4 complex matrix.
template <class Real>
Complex<Real> det4(const std::array<Complex<Real>, 16>& m);

template <class Real>
using BaseFunction = std::function<FormValue<Real>(const SiegelPoint<Real>&, double)>;

/// Weight-k slash data for symmetrization over Sp(4, Z) / Gamma_2(2).
struct SlashContext {
  int weight = 0;
  /// +1/-1 per group element; must factor through Gamma_2(2).
  std::function<int(const SymplecticMatrix&)> character;
  const CosetSystem* cosets = nullptr;
  /// Number of cosets mapping the base monomial to itself (720 / orbit size).
  int multiplicity = 1;
  std::string label;
};

SlashContext trivial_context(int weight, const CosetSystem& cosets, int multiplicity, std::string label);
SlashContext chi_p_context(int weight, const CosetSystem& cosets, int multiplicity, std::string label);

/// Gamma_2(2) elements used to pretest a base function: T(2B), L(2B) for
/// B in {E11, E22, E12+E21}, and -1.
const std::vector<SymplecticMatrix>& level_two_test_elements();

struct ModularityPretest {
  double max_residual = 0.0;
  bool passed = false;
};

inline constexpr double kPretestTolerance = 1e-8;

/// max over level_two_test_elements of |base(eta tau) / (det(c tau + d)^k base(tau)) - 1|.
template <class Real>
ModularityPretest pretest_level_two(const BaseFunction<Real>& base, int weight, const SiegelPoint<Real>& tau,
                                    double eps);

/// (1/multiplicity) sum_gamma character(gamma) det(c tau + d)^{-k} base(gamma tau),
/// over ctx.cosets (720 representatives of Sp(4, Z) / Gamma_2(2)), reduced in
/// coset order. Runs the level-two pretest first at a fixed interior point
/// and throws std::runtime_error when it fails.
template <class Real>
FormValue<Real> symmetrize(const BaseFunction<Real>& base, const SlashContext& ctx, const SiegelPoint<Real>& tau,
                           double eps);

/// {[00;00], [00;01], [01;00]}, the first C_3^- triple in code order.
CharTriple azy_base_triple();

/// (theta_m1 theta_m2 theta_m3)^20 for the azy base triple.
template <class Real>
FormValue<Real> azy_base(const SiegelPoint<Real>& tau, double eps);

/// (product of the six even theta constants outside M_0)^4.
template <class Real>
FormValue<Real> chi12_base(const SiegelPoint<Real>& tau, double eps);

/// Weight 30, character chi_P. Normalized so that the base triple's own
/// term has coefficient +1.
template <class Real>
FormValue<Real> azy_classical(const SiegelPoint<Real>& tau, double eps, const CosetSystem& principal2);

/// Weight 12, trivial character, normalized so that the M_0 complement term
/// has coefficient +1.
template <class Real>
FormValue<Real> chi12(const SiegelPoint<Real>& tau, double eps, const CosetSystem& principal2);

inline constexpr const char* kAzyNormalization =
    "azy = (1/12) sum over Sp4(Z)/Gamma2(2) of chi_P(g) det(c tau+d)^-30 (theta_[00;00] theta_[00;01] "
    "theta_[01;00])^20(g tau); coefficient of the base triple is +1";
inline constexpr const char* kChi12Normalization =
    "chi12 = (1/48) sum over Sp4(Z)/Gamma2(2) of det(c tau+d)^-12 (prod of the six even thetas outside M0)^4(g tau)";

/// How each C_3^- triple enters the expanded azy sum.
struct TripleTerm {
  CharSet triple;
  int count = 0;
  /// Mean of the unit coefficients collected for this triple.
  std::complex<double> coefficient;
  /// Max distance of a single coefficient from the mean.
  double spread = 0.0;
};

/// For each coset gamma, chi_P(gamma) det^-30 base(gamma tau) divided by
/// (prod theta_{gamma^-1 m})^20 (tau); grouped by the image triple gamma^-1 T.
std::vector<TripleTerm> azy_expansion(const SiegelPoint<double>& tau, double eps, const CosetSystem& principal2);

}  // namespace azy
