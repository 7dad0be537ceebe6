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

#include <complex>
#include <numbers>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace azy {

/// ~50 significant decimal digits; expression templates off so that
/// std::complex<HighReal> and generic std:: algorithms behave.
using HighReal = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>,
                                               boost::multiprecision::et_off>;

template <class Real>
using Complex = std::complex<Real>;

template <class Real>
inline Real pi_v() {
  if constexpr (std::is_same_v<Real, double>) {
    return std::numbers::pi;
  } else {
    return boost::math::constants::pi<Real>();
  }
}

template <class Real>
inline double to_double(const Real& x) {
  return static_cast<double>(x);
}

template <class Real>
inline std::complex<double> to_double(const std::complex<Real>& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

template <class Real>
inline std::complex<Real> from_double(std::complex<double> z) {
  return {Real(z.real()), Real(z.imag())};
}

/// e^{pi i w}: the exponential convention used by every theta-related formula.
template <class Real>
inline std::complex<Real> exp_pi_i(const std::complex<Real>& w) {
  using std::exp;
  const std::complex<Real> arg(-pi_v<Real>() * w.imag(), pi_v<Real>() * w.real());
  return exp(arg);
}

/// e^{2 pi i k / 8} for an integer k, exact on the eighth roots of unity.
template <class Real>
inline std::complex<Real> eighth_root_of_unity(int k) {
  k = ((k % 8) + 8) % 8;
  using std::sqrt;
  const Real h = sqrt(Real(2)) / 2;
  switch (k) {
    case 0: return {Real(1), Real(0)};
    case 1: return {h, h};
    case 2: return {Real(0), Real(1)};
    case 3: return {-h, h};
    case 4: return {Real(-1), Real(0)};
    case 5: return {-h, -h};
    case 6: return {Real(0), Real(-1)};
    default: return {h, -h};
  }
}

}  // namespace azy
