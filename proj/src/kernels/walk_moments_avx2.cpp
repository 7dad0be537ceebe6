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

#include <stdexcept>

#include "azy/lattice_kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define AZY_X86 1
#include <immintrin.h>
#else
#define AZY_X86 0
#endif

namespace azy::kernels {

#if AZY_X86

#define AZY_TARGET_AVX2 __attribute__((target("avx2")))

namespace {

// Lanes hold [re0, im0, re1, im1] for two complex numbers.
AZY_TARGET_AVX2 inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);        // [br, br]
  const __m256d b_im = _mm256_permute_pd(b, 0xF);   // [bi, bi]
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);   // [ai, ar]
  const __m256d p1 = _mm256_mul_pd(a, b_re);        // [ar br, ai br]
  const __m256d p2 = _mm256_mul_pd(a_sw, b_im);     // [ai bi, ar bi]
  return _mm256_addsub_pd(p1, p2);                  // [ar br - ai bi, ai br + ar bi]
}

AZY_TARGET_AVX2 inline __m256d load_pair(const std::complex<double>& x, const std::complex<double>& y) {
  return _mm256_set_pd(y.imag(), y.real(), x.imag(), x.real());
}

AZY_TARGET_AVX2 inline void store_pair(__m256d v, std::complex<double>& x, std::complex<double>& y) {
  alignas(32) double buf[4];
  _mm256_store_pd(buf, v);
  x = {buf[0], buf[1]};
  y = {buf[2], buf[3]};
}

AZY_TARGET_AVX2 void walk_pair(const RowWalk<double>& w0, const RowWalk<double>& w1, __m256d s, int order,
                               WalkMoments<double>& o0, WalkMoments<double>& o1) {
  __m256d t = load_pair(w0.start, w1.start);
  __m256d r = load_pair(w0.ratio, w1.ratio);
  __m256d acc[2][3];
  for (auto& par : acc)
    for (auto& a : par) a = _mm256_setzero_pd();
  const int max_count = std::max(w0.count, w1.count);
  const __m256d count = _mm256_set_pd(w1.count, w1.count, w0.count, w0.count);
  for (int k = 0; k < max_count; ++k) {
    const __m256d kd = _mm256_set1_pd(static_cast<double>(k));
    const __m256d live = _mm256_cmp_pd(kd, count, _CMP_LT_OQ);
    __m256d* a = acc[k & 1];
    a[0] = _mm256_blendv_pd(a[0], _mm256_add_pd(a[0], t), live);
    if (order > 0) {
      const __m256d kk = _mm256_mul_pd(kd, kd);
      a[1] = _mm256_blendv_pd(a[1], _mm256_add_pd(a[1], _mm256_mul_pd(kd, t)), live);
      a[2] = _mm256_blendv_pd(a[2], _mm256_add_pd(a[2], _mm256_mul_pd(kk, t)), live);
    }
    t = cmul(t, r);
    r = cmul(r, s);
  }
  for (std::size_t j = 0; j < 3; ++j) {
    store_pair(acc[0][j], o0.even[j], o1.even[j]);
    store_pair(acc[1][j], o0.odd[j], o1.odd[j]);
  }
}

}  // namespace

AZY_TARGET_AVX2 void walk_moments_avx2(std::span<const RowWalk<double>> walks, std::complex<double> step, int order,
                                       std::span<WalkMoments<double>> out) {
  const __m256d s = load_pair(step, step);
  std::size_t w = 0;
  for (; w + 1 < walks.size(); w += 2) walk_pair(walks[w], walks[w + 1], s, order, out[w], out[w + 1]);
  if (w < walks.size()) walk_moments_scalar<double>(walks.subspan(w, 1), step, order, out.subspan(w, 1));
}

bool avx2_supported() { return __builtin_cpu_supports("avx2"); }

#else

void walk_moments_avx2(std::span<const RowWalk<double>>, std::complex<double>, int, std::span<WalkMoments<double>>) {
  throw std::runtime_error("AVX2 kernel not built for this architecture");
}

bool avx2_supported() { return false; }

#endif

}  // namespace azy::kernels
