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

// Inner loop of the theta lattice sums.
//
// Along one lattice row the Gaussian terms obey t_{k+1} = t_k r_k with
// r_{k+1} = r_k s, so a row walk is fully described by (t_0, r_0, count) and
// the common second ratio s. The kernel accumulates the moments
// sum_k k^j t_k (j <= 2) separately over even and odd k.
//
// The scalar kernel is the reference (and the only path for non-double
// reals). The AVX2 kernel walks two rows per 256-bit register with the same
// operation order, so both produce bit-identical results when compiled
// without floating-point contraction.

#include <array>
#include <optional>
#include <span>
#include <string>

#include "azy/precision.hpp"

namespace azy::kernels {

template <class Real>
struct RowWalk {
  Complex<Real> start;
  Complex<Real> ratio;
  int count = 0;
};

template <class Real>
struct WalkMoments {
  std::array<Complex<Real>, 3> even{};
  std::array<Complex<Real>, 3> odd{};
};

/// order 0 accumulates only sum t_k; order 2 accumulates k^0, k^1, k^2.
template <class Real>
void walk_moments_scalar(std::span<const RowWalk<Real>> walks, const Complex<Real>& step, int order,
                         std::span<WalkMoments<Real>> out) {
  const Real sr = step.real();
  const Real si = step.imag();
  for (std::size_t w = 0; w < walks.size(); ++w) {
    Real tr = walks[w].start.real(), ti = walks[w].start.imag();
    Real rr = walks[w].ratio.real(), ri = walks[w].ratio.imag();
    std::array<std::array<Real, 6>, 2> acc{};  // [parity][re0, im0, re1, im1, re2, im2]
    for (auto& a : acc) a.fill(Real(0));
    for (int k = 0; k < walks[w].count; ++k) {
      auto& a = acc[static_cast<std::size_t>(k & 1)];
      a[0] = a[0] + tr;
      a[1] = a[1] + ti;
      if (order > 0) {
        const Real kd = Real(k);
        const Real kk = kd * kd;
        a[2] = a[2] + kd * tr;
        a[3] = a[3] + kd * ti;
        a[4] = a[4] + kk * tr;
        a[5] = a[5] + kk * ti;
      }
      const Real ntr = tr * rr - ti * ri;
      const Real nti = ti * rr + tr * ri;
      tr = ntr;
      ti = nti;
      const Real nrr = rr * sr - ri * si;
      const Real nri = ri * sr + rr * si;
      rr = nrr;
      ri = nri;
    }
    for (std::size_t j = 0; j < 3; ++j) {
      out[w].even[j] = Complex<Real>(acc[0][2 * j], acc[0][2 * j + 1]);
      out[w].odd[j] = Complex<Real>(acc[1][2 * j], acc[1][2 * j + 1]);
    }
  }
}

enum class Isa { scalar, avx2 };

std::string to_string(Isa isa);
bool avx2_supported();

/// Only callable when avx2_supported().
void walk_moments_avx2(std::span<const RowWalk<double>> walks, std::complex<double> step, int order,
                       std::span<WalkMoments<double>> out);

/// ISA used by walk_moments(): AZY_SIMD=scalar|avx2 in the environment, an
/// explicit force_isa() override, or the best supported one.
Isa active_isa();
/// Pins the dispatch (nullopt restores automatic selection). Requesting an
/// unsupported ISA throws std::runtime_error.
void force_isa(std::optional<Isa> isa);

void walk_moments(std::span<const RowWalk<double>> walks, std::complex<double> step, int order,
                  std::span<WalkMoments<double>> out);

template <class Real>
void walk_moments(std::span<const RowWalk<Real>> walks, const Complex<Real>& step, int order,
                  std::span<WalkMoments<Real>> out) {
  walk_moments_scalar<Real>(walks, step, order, out);
}

}  // namespace azy::kernels
