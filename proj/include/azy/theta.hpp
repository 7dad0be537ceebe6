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

// Theta constants with half-integer characteristics, second-order theta
// constants and their gradients, and the factors of the theta
// transformation law.
//
// Exponential convention: exp(w) stands for e^{pi i w} throughout, so
//   theta_m(tau) = sum_{n in Z^g} exp{ x^t tau x + x^t m'' },  x = n + m'/2.

#include <array>
#include <cstdint>

#include "azy/characteristic.hpp"
#include "azy/precision.hpp"
#include "azy/siegel.hpp"
#include "azy/symplectic_matrix.hpp"

namespace azy {

template <class Real>
struct ThetaValue {
  Complex<Real> value;
  /// Analytic bound on the truncated lattice tail.
  double abs_error_bound = 0.0;
};

/// Upper bound for the sum of |terms| with max-norm index > radius:
///
///   tail <= sum_{r > R} N_g(r) w(r) exp(-pi lambda_min (r - 1/2)^2),
///
/// with N_1(r) = 2, N_2(r) = 8r lattice points on the shell |n|_inf = r,
/// |x|_2 >= |x|_inf >= r - 1/2 for x = n + m'/2, and w(r) = 1 for values or
/// w(r) = 4 pi (r + 1/2)^2 when bounding first derivatives (order 2 moments).
double tail_bound(double lambda_min, int g, int radius, int derivative_order = 0);

/// Smallest R >= 1 with tail_bound(lambda_min, g, R) <= eps.
int truncation_radius(double lambda_min, int g, double eps, int derivative_order = 0);

template <class Real>
int truncation_radius(const SiegelPoint<Real>& tau, double eps, int derivative_order = 0) {
  return truncation_radius(tau.lambda_min(), tau.genus(), eps, derivative_order);
}

/// theta_m(tau) within eps; odd characteristics short-circuit to exactly 0.
template <class Real>
ThetaValue<Real> theta_constant(const Characteristic& m, const SiegelPoint<Real>& tau, double eps);

/// Unreduced characteristic, via theta_{r+2n} = (-1)^{r'.n''} theta_r.
template <class Real>
ThetaValue<Real> theta_constant(const IntCharacteristic& m, const SiegelPoint<Real>& tau, double eps);

/// All 16 genus-2 theta constants indexed by characteristic code (odd ones
/// are 0). shift_mask selects which m' cosets (bit m'code) are summed; the
/// rest are left at 0.
template <class Real>
std::array<ThetaValue<Real>, 16> theta_constants(const SiegelPoint<Real>& tau, double eps,
                                                 std::uint8_t shift_mask = 0xF);

/// Theta_{m'}(tau) = theta_{[m';0]}(2 tau). m_prime_code = 2 m'_1 + m'_2.
template <class Real>
ThetaValue<Real> theta_second_order(unsigned m_prime_code, const SiegelPoint<Real>& tau, double eps);

template <class Real>
std::array<ThetaValue<Real>, 4> theta_second_order_all(const SiegelPoint<Real>& tau, double eps);

/// Partials (d/dtau11, d/dtau12, d/dtau22); the symmetric entry tau12 = tau21
/// is one variable.
template <class Real>
using ThetaGradient = std::array<Complex<Real>, 3>;

template <class Real>
struct SecondOrderJet {
  std::array<ThetaValue<Real>, 4> values;
  std::array<ThetaGradient<Real>, 4> gradients;
  double gradient_error_bound = 0.0;
};

template <class Real>
SecondOrderJet<Real> theta_second_order_jet(const SiegelPoint<Real>& tau, double eps);

template <class Real>
ThetaGradient<Real> theta_gradient(unsigned m_prime_code, const SiegelPoint<Real>& tau, double eps);

// ---------------------------------------------------------------------------
// Transformation law
//
//   theta_{gamma m}(gamma tau) = kappa(gamma) chi_m(gamma) det(c tau + d)^{1/2} theta_m(tau)
//
// with gamma m the unreduced image characteristic.

struct XiChi {
  /// 8 xi_m(gamma) mod 8 (xi_m lies in Z/8).
  int xi_eighths = 0;
  /// chi_m = exp{2 xi_m} = e^{2 pi i xi_m}.
  std::complex<double> chi{1.0, 0.0};
};

/// 8 xi_m(gamma) = -(m'^t b^t d m' + m''^t a^t c m'' - 2 m'^t b^t c m'')
///                 + 2 diag(a b^t)^t (d m' - c m'').
XiChi xi_chi(const Characteristic& m, const SymplecticMatrix& gamma);

/// e^{pi i Tr(b^t c)}, the value of kappa(gamma)^4.
int kappa_fourth_power(const SymplecticMatrix& gamma);

template <class Real>
struct KappaEstimate {
  Complex<Real> value;
  /// max |kappa_m - kappa_probe| over all usable even probes m.
  double probe_spread = 0.0;
  /// | |kappa| - 1 |
  double modulus_residual = 0.0;
  /// |kappa^4 - e^{pi i Tr(b^t c)}|
  double fourth_power_residual = 0.0;
  Characteristic probe;
  int probes_used = 0;
};

inline constexpr double kKappaFourthPowerTolerance = 1e-8;

/// kappa(gamma) from theta values at tau0, with the principal branch of
/// det(c tau0 + d)^{1/2}. Probes whose theta value is too small are skipped.
/// Throws std::runtime_error when the fourth-power identity fails beyond
/// kKappaFourthPowerTolerance.
template <class Real>
KappaEstimate<Real> kappa_numeric(const SymplecticMatrix& gamma, const SiegelPoint<Real>& tau0, double eps);

/// gamma~ = [[a, 2b], [c/2, d]] for gamma in Gamma_{2,0}(2).
SymplecticMatrix tilde_matrix(const SymplecticMatrix& gamma);

template <class Real>
struct SecondOrderLawCheck {
  /// Per m': Theta_{image}(gamma tau) / (chi(gamma~) det(c tau + d)^{1/2} Theta_{m'}(tau)).
  std::array<Complex<Real>, 4> kappa_ratios;
  std::array<unsigned, 4> image_code;
  double modulus_residual = 0.0;       // max | |ratio| - 1 |
  double fourth_power_residual = 0.0;  // max |ratio^4 - kappa(gamma~)^4|
  double spread = 0.0;                 // max |ratio_i - ratio_0|
};

/// Second-order transformation law for gamma in Gamma_{2,0}(2).
template <class Real>
SecondOrderLawCheck<Real> second_order_law(const SymplecticMatrix& gamma, const SiegelPoint<Real>& tau, double eps);

}  // namespace azy
