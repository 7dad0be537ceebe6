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

// The weight-30 form phi: a product over the 15 cosets of Gamma_{2,0}(2)
// of chi_P-twisted weight-2 slashes of P_2 = F_{M_0}, and its comparison with
// the symmetrized azy form.

#include <complex>
#include <random>
#include <vector>

#include "azy/modular_forms.hpp"
#include "azy/quadric_geometry.hpp"
#include "azy/symplectic.hpp"

namespace azy {

struct PhiFactor {
  SymplecticMatrix gamma;
  int chi_sign = 1;
};

std::vector<PhiFactor> phi_factors(const CosetSystem& theta0_cosets);

/// For eta in Gamma_{2,0}(2): the sign of a mod 2 as a permutation of the
/// three nonzero vectors of F_2^2. F_{M0} transforms under eta with
/// chi_P(eta) times this sign, so phi_{eta gamma} = sign * phi_gamma.
int theta0_sign_defect(const SymplecticMatrix& eta);

/// Predicted phi(other) / phi(reference) for two systems of Gamma_{2,0}(2)
/// cosets: the product of theta0_sign_defect(eta_i) with other_i = eta_i ref_i.
int phi_system_sign(const CosetSystem& reference, const CosetSystem& other);

/// phi_gamma(tau) = chi_P(gamma) det(c tau + d)^-2 P_2(gamma tau).
template <class Real>
FormValue<Real> phi_gamma(const SymplecticMatrix& gamma, const SiegelPoint<Real>& tau, double eps);

/// Product of phi_gamma over the 15 representatives.
template <class Real>
FormValue<Real> phi(const SiegelPoint<Real>& tau, double eps, const CosetSystem& theta0_cosets);

/// phi(gamma tau) / (chi_P(gamma) det(c tau + d)^30 phi(tau)) - 1.
template <class Real>
double phi_modularity_residual(const SymplecticMatrix& gamma, const SiegelPoint<Real>& tau, double eps,
                               const CosetSystem& theta0_cosets);

/// Ratio statistics. relative_spread = max_{i,j} |r_i - r_j| / |median|.
struct RatioStats {
  std::vector<std::complex<double>> ratios;
  /// Componentwise median.
  std::complex<double> median;
  double relative_spread = 0.0;
};

RatioStats ratio_stats(std::vector<std::complex<double>> ratios);

inline constexpr double kLambdaTolerance = 1e-5;
inline constexpr double kLambdaTolerancePrecise = 1e-20;

struct LambdaEstimate {
  RatioStats stats;
  /// Indices (into the input samples) rejected because azy was not
  /// distinguishable from 0.
  std::vector<std::size_t> rejected;
  std::vector<std::complex<double>> phi_values;
  std::vector<std::complex<double>> azy_values;
};

/// phi / azy at each sample. A sample is rejected when |azy| does not exceed
/// 1e3 times its error bound.
template <class Real>
LambdaEstimate estimate_lambda(const std::vector<SiegelPoint<Real>>& samples, double eps,
                               const CosetSystem& theta0_cosets, const CosetSystem& principal2);

/// F_{gamma^-1 M_0}(tau) / phi_gamma(tau) over the samples.
RatioStats crosscheck_geometric(const SymplecticMatrix& gamma, const std::vector<SiegelPoint<double>>& samples,
                                double eps);

/// prod over all 15 tetrahedra of F_M(tau).
template <class Real>
Complex<Real> geometric_product(const SiegelPoint<Real>& tau, double eps, const std::vector<Tetrahedron>& tets);

/// tau = i (1 + S) + 0.1 B with S random positive semidefinite of spectral
/// norm <= 0.5 u (u uniform in [0, 1]) and B symmetric with entries uniform
/// in [-1, 1].
SiegelPoint<double> sample_tau(std::mt19937_64& rng);
std::vector<SiegelPoint<double>> sample_taus(std::uint64_t seed, int count);

}  // namespace azy
