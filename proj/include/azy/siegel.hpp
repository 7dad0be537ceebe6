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

// Points of the Siegel upper half-space (g = 1, 2), the action of Sp(2g, Z)
// on them, and the automorphy factor det(c tau + d)^k.

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "azy/precision.hpp"
#include "azy/symplectic_matrix.hpp"

namespace azy {

/// Receives non-fatal numerical warnings (ill-conditioned c tau + d, ...).
/// Defaults to a line on stderr.
using WarningHandler = std::function<void(const std::string&)>;
void set_warning_handler(WarningHandler handler);
void emit_warning(const std::string& message);

inline constexpr double kIllConditionedThreshold = 1e12;

/// Smallest eigenvalue of the real symmetric matrix [[y11, y12], [y12, y22]].
inline double smallest_eigenvalue_2x2(double y11, double y12, double y22) {
  const double mean = 0.5 * (y11 + y22);
  const double half_diff = 0.5 * (y11 - y22);
  return mean - std::hypot(half_diff, y12);
}

/// Complex symmetric g x g matrix with positive-definite imaginary part.
/// Only the upper triangle (tau11, tau12, tau22) is stored.
template <class Real>
class SiegelPoint {
 public:
  using C = Complex<Real>;

  static SiegelPoint genus1(C tau) { return SiegelPoint(1, {tau, C{}, C{}}); }
  static SiegelPoint genus2(C t11, C t12, C t22) { return SiegelPoint(2, {t11, t12, t22}); }
  /// i * t * 1_g.
  static SiegelPoint scalar_imaginary(int g, Real t) {
    const C it(Real(0), t);
    return g == 1 ? genus1(it) : genus2(it, C{}, it);
  }

  [[nodiscard]] int genus() const noexcept { return g_; }
  [[nodiscard]] const C& operator()(int i, int j) const noexcept {
    return (i == 0 && j == 0) ? upper_[0] : (i == 1 && j == 1) ? upper_[2] : upper_[1];
  }
  [[nodiscard]] const std::array<C, 3>& upper() const noexcept { return upper_; }
  [[nodiscard]] double lambda_min() const noexcept { return lambda_min_; }

  [[nodiscard]] SiegelPoint scaled(const Real& s) const {
    return SiegelPoint(g_, {upper_[0] * s, upper_[1] * s, upper_[2] * s});
  }
  /// tau + B for an integer symmetric B (row-major).
  [[nodiscard]] SiegelPoint shifted(const std::array<std::int64_t, 4>& b) const {
    return SiegelPoint(g_, {upper_[0] + Real(b[0]), upper_[1] + Real(b[1]), upper_[2] + Real(b[3])});
  }

  template <class R2>
  [[nodiscard]] SiegelPoint<R2> convert() const {
    auto cv = [](const C& z) { return Complex<R2>(R2(z.real()), R2(z.imag())); };
    return SiegelPoint<R2>::from_upper(g_, {cv(upper_[0]), cv(upper_[1]), cv(upper_[2])});
  }

  static SiegelPoint from_upper(int g, const std::array<C, 3>& upper) { return SiegelPoint(g, upper); }

 private:
  SiegelPoint(int g, const std::array<C, 3>& upper) : g_(g), upper_(upper) {
    if (g != 1 && g != 2) throw std::invalid_argument("Siegel point genus must be 1 or 2");
    if (g == 1) {
      upper_[1] = C{};
      upper_[2] = C{};
      lambda_min_ = to_double(upper_[0].imag());
    } else {
      lambda_min_ = smallest_eigenvalue_2x2(to_double(upper_[0].imag()), to_double(upper_[1].imag()),
                                            to_double(upper_[2].imag()));
    }
    if (!(lambda_min_ > 0.0)) {
      throw std::domain_error("imaginary part of tau is not positive definite");
    }
  }

  int g_ = 2;
  std::array<C, 3> upper_{};
  double lambda_min_ = 0.0;
};

namespace detail {

/// Plain 2x2 complex matrix used for the fractional-linear action.
template <class Real>
struct Mat2 {
  Complex<Real> m00, m01, m10, m11;

  [[nodiscard]] Complex<Real> det() const { return m00 * m11 - m01 * m10; }
  [[nodiscard]] Mat2 inverse() const {
    const auto dt = det();
    return {m11 / dt, -m01 / dt, -m10 / dt, m00 / dt};
  }
  Mat2 operator*(const Mat2& o) const {
    return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11, m10 * o.m00 + m11 * o.m10,
            m10 * o.m01 + m11 * o.m11};
  }
};

/// X tau + Y for integer blocks X, Y of gamma (g = 2).
template <class Real>
Mat2<Real> affine_block(const SiegelPoint<Real>& tau, const std::array<std::int64_t, 4>& x,
                        const std::array<std::int64_t, 4>& y) {
  auto t = [&tau](int i, int j) { return tau(i, j); };
  auto entry = [&](int i, int j) {
    return Real(x[static_cast<std::size_t>(i * 2)]) * t(0, j) + Real(x[static_cast<std::size_t>(i * 2 + 1)]) * t(1, j) +
           Real(y[static_cast<std::size_t>(i * 2 + j)]);
  };
  return {entry(0, 0), entry(0, 1), entry(1, 0), entry(1, 1)};
}

inline std::array<std::int64_t, 4> block(const SymplecticMatrix& m, char which) {
  std::array<std::int64_t, 4> out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      std::int64_t v = 0;
      switch (which) {
        case 'a': v = m.a(i, j); break;
        case 'b': v = m.b(i, j); break;
        case 'c': v = m.c(i, j); break;
        default: v = m.d(i, j); break;
      }
      out[static_cast<std::size_t>(i * 2 + j)] = v;
    }
  return out;
}

/// 2-norm condition number of a 2x2 complex matrix from its Frobenius norm and |det|.
template <class Real>
double condition_number(const Mat2<Real>& m) {
  const double f2 = std::norm(to_double(m.m00)) + std::norm(to_double(m.m01)) + std::norm(to_double(m.m10)) +
                    std::norm(to_double(m.m11));
  const double ad = std::abs(to_double(m.det()));
  if (ad == 0.0) return INFINITY;
  // sigma_max^2 + sigma_min^2 = f2, sigma_max sigma_min = ad
  const double disc = std::sqrt(std::max(0.0, f2 * f2 - 4.0 * ad * ad));
  const double smax2 = 0.5 * (f2 + disc);
  return smax2 / ad;
}

}  // namespace detail

/// c tau + d as a complex matrix (g x g, embedded in 2x2).
template <class Real>
detail::Mat2<Real> c_tau_plus_d(const SymplecticMatrix& gamma, const SiegelPoint<Real>& tau) {
  if (gamma.genus() != tau.genus()) throw std::invalid_argument("genus mismatch between matrix and tau");
  if (tau.genus() == 1) {
    const Complex<Real> v = Real(gamma.c(0, 0)) * tau(0, 0) + Real(gamma.d(0, 0));
    return {v, Complex<Real>{}, Complex<Real>{}, Complex<Real>(Real(1))};
  }
  return detail::affine_block(tau, detail::block(gamma, 'c'), detail::block(gamma, 'd'));
}

/// gamma . tau = (a tau + b)(c tau + d)^{-1}. Emits a warning when c tau + d
/// has condition number above kIllConditionedThreshold.
template <class Real>
SiegelPoint<Real> act_tau(const SymplecticMatrix& gamma, const SiegelPoint<Real>& tau) {
  using C = Complex<Real>;
  const auto den = c_tau_plus_d(gamma, tau);
  if (detail::condition_number(den) > kIllConditionedThreshold) {
    emit_warning("ill-conditioned c*tau+d in act_tau");
  }
  if (tau.genus() == 1) {
    const C num = Real(gamma.a(0, 0)) * tau(0, 0) + Real(gamma.b(0, 0));
    return SiegelPoint<Real>::genus1(num / den.m00);
  }
  const auto num = detail::affine_block(tau, detail::block(gamma, 'a'), detail::block(gamma, 'b'));
  const auto r = num * den.inverse();
  const C off = (r.m01 + r.m10) / Real(2);
  return SiegelPoint<Real>::genus2(r.m00, off, r.m11);
}

/// Weight as a half-integer k = twice / 2.
struct HalfInteger {
  int twice = 0;
  static constexpr HalfInteger integer(int k) { return {2 * k}; }
  [[nodiscard]] constexpr bool is_integer() const { return twice % 2 == 0; }
};

/// det(c tau + d).
template <class Real>
Complex<Real> automorphy_det(const SymplecticMatrix& gamma, const SiegelPoint<Real>& tau) {
  return c_tau_plus_d(gamma, tau).det();
}

template <class Real>
Complex<Real> integer_power(Complex<Real> z, int k) {
  if (k < 0) return Complex<Real>(Real(1)) / integer_power(z, -k);
  Complex<Real> r(Real(1));
  while (k > 0) {
    if (k & 1) r *= z;
    z *= z;
    k >>= 1;
  }
  return r;
}

/// det(c tau + d)^k. Half-integer powers use the principal square root of
/// the determinant; the remaining sign is absorbed by the numerically
/// determined kappa of the theta transformation law.
template <class Real>
Complex<Real> automorphy_factor(const SymplecticMatrix& gamma, const SiegelPoint<Real>& tau, HalfInteger k) {
  const auto det = automorphy_det(gamma, tau);
  if (k.is_integer()) return integer_power(det, k.twice / 2);
  using std::sqrt;
  return integer_power(sqrt(det), k.twice);
}

}  // namespace azy
