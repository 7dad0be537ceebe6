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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "azy/lattice_kernels.hpp"

namespace azy::kernels {
namespace {

// -1: automatic; otherwise the forced Isa value.
std::atomic<int> g_forced{-1};

Isa detect() {
  if (const char* env = std::getenv("AZY_SIMD")) {
    const std::string_view v(env);
    if (v == "scalar") return Isa::scalar;
    if (v == "avx2" && avx2_supported()) return Isa::avx2;
  }
  return avx2_supported() ? Isa::avx2 : Isa::scalar;
}

}  // namespace

std::string to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

Isa active_isa() {
  const int forced = g_forced.load(std::memory_order_relaxed);
  if (forced >= 0) return static_cast<Isa>(forced);
  static const Isa detected = detect();
  return detected;
}

void force_isa(std::optional<Isa> isa) {
  if (isa && *isa == Isa::avx2 && !avx2_supported()) {
    throw std::runtime_error("AVX2 requested but not supported by this CPU");
  }
  g_forced.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

void walk_moments(std::span<const RowWalk<double>> walks, std::complex<double> step, int order,
                  std::span<WalkMoments<double>> out) {
  if (out.size() < walks.size()) throw std::invalid_argument("walk_moments output too small");
  if (active_isa() == Isa::avx2) {
    walk_moments_avx2(walks, step, order, out);
  } else {
    walk_moments_scalar<double>(walks, step, order, out);
  }
}

}  // namespace azy::kernels
