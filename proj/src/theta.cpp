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

#include "azy/theta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "azy/lattice_kernels.hpp"

namespace azy {
namespace {

// Lattice sums for one shift m' = (s1, s2) and all four m'' at once.
//
// value[m''] = sum_x exp{x^t T x} e^{pi i x.m''}, and with order 2 also the
// moments sum x1^2 t, sum x1 x2 t, sum x2^2 t (same phases).
template <class Real>
struct ShiftSums {
  std::array<Complex<Real>, 4> value{};
  std::array<std::array<Complex<Real>, 3>, 4> moment{};
};

// Phase e^{pi i s m / 2} = i^{s m} for s, m in {0, 1}.
template <class Real>
Complex<Real> quarter_phase(int s, int m) {
  return (s & m) ? Complex<Real>(Real(0), Real(1)) : Complex<Real>(Real(1));
}

template <class Real>
ShiftSums<Real> lattice_sums(int g, const std::array<Complex<Real>, 3>& t, int s1, int s2, int radius, int order) {
  using C = Complex<Real>;
  const C t11 = t[0], t12 = t[1], t22 = t[2];
  const Real half(0.5);
  const C step = exp_pi_i<Real>(Real(2) * t22);
  const double im12 = to_double(t12.imag());
  const double im22 = to_double(t22.imag());

  const int row_lo = g == 1 ? 0 : -radius;
  const int row_hi = g == 1 ? 0 : radius;
  const int rows = row_hi - row_lo + 1;

  // Two walks per row: up from the peak p, down from p - 1.
  std::vector<kernels::RowWalk<Real>> walks(static_cast<std::size_t>(2 * rows));
  std::vector<int> peak(static_cast<std::size_t>(rows));
  for (int r = 0; r < rows; ++r) {
    const int n1 = row_lo + r;
    const Real x1 = g == 1 ? Real(0) : Real(n1) + half * Real(s1);
    const double x1d = to_double(x1);
    const double centre = -im12 * x1d / im22 - 0.5 * s2;
    const int p = static_cast<int>(std::clamp(std::lround(centre), static_cast<long>(-radius), static_cast<long>(radius)));
    peak[static_cast<std::size_t>(r)] = p;

    const Real xu = Real(p) + half * Real(s2);
    const Real xd = xu - Real(1);
    const C lin = Real(2) * t12 * x1;
    auto quad = [&](const Real& x2) { return t11 * (x1 * x1) + Real(2) * t12 * (x1 * x2) + t22 * (x2 * x2); };

    auto& up = walks[static_cast<std::size_t>(2 * r)];
    up.start = exp_pi_i<Real>(quad(xu));
    up.ratio = exp_pi_i<Real>(t22 * (Real(2) * xu + Real(1)) + lin);
    up.count = radius - p + 1;

    auto& down = walks[static_cast<std::size_t>(2 * r + 1)];
    down.start = exp_pi_i<Real>(quad(xd));
    down.ratio = exp_pi_i<Real>(t22 * (Real(1) - Real(2) * xd) - lin);
    down.count = p + radius;
  }

  std::vector<kernels::WalkMoments<Real>> mom(walks.size());
  kernels::walk_moments(std::span<const kernels::RowWalk<Real>>(walks), step, order,
                        std::span<kernels::WalkMoments<Real>>(mom));

  ShiftSums<Real> out;
  const C i_s2 = quarter_phase<Real>(s2, 1);
  const C i_s1 = quarter_phase<Real>(s1, 1);
  for (int r = 0; r < rows; ++r) {
    const int n1 = row_lo + r;
    const int p = peak[static_cast<std::size_t>(r)];
    const Real x1 = g == 1 ? Real(0) : Real(n1) + half * Real(s1);

    // Row moments in x2, split by the parity of n2: s[par][j] = sum x2^j t.
    std::array<std::array<C, 3>, 2> s{};
    for (int dir = 0; dir < 2; ++dir) {
      const auto& w = mom[static_cast<std::size_t>(2 * r + dir)];
      // Up: n2 = p + k, x2 = c + k. Down: n2 = p - 1 - k, x2 = c - k.
      const Real c = dir == 0 ? Real(p) + half * Real(s2) : Real(p - 1) + half * Real(s2);
      const Real sg = dir == 0 ? Real(1) : Real(-1);
      const int base_parity = dir == 0 ? (p & 1) : ((p - 1) & 1);
      for (int kpar = 0; kpar < 2; ++kpar) {
        const auto& m = kpar == 0 ? w.even : w.odd;
        auto& dst = s[static_cast<std::size_t>((base_parity + kpar) & 1)];
        dst[0] += m[0];
        if (order > 0) {
          dst[1] += c * m[0] + sg * m[1];
          dst[2] += (c * c) * m[0] + Real(2) * c * sg * m[1] + m[2];
        }
      }
    }

    // m''2 = 0 sums both parities; m''2 = 1 weights by (-1)^{n2} i^{s2}.
    std::array<std::array<C, 3>, 2> row{};
    for (std::size_t j = 0; j < 3; ++j) {
      row[0][j] = s[0][j] + s[1][j];
      row[1][j] = i_s2 * (s[0][j] - s[1][j]);
    }
    const bool odd_row = (n1 & 1) != 0;
    for (int mpp1 = 0; mpp1 < 2; ++mpp1) {
      const C ph = mpp1 == 0 ? C(Real(1)) : (odd_row ? -i_s1 : i_s1);
      for (int mpp2 = 0; mpp2 < 2; ++mpp2) {
        const auto& rr = row[static_cast<std::size_t>(mpp2)];
        const auto idx = static_cast<std::size_t>(2 * mpp1 + mpp2);
        out.value[idx] += ph * rr[0];
        if (order > 0) {
          out.moment[idx][0] += ph * ((x1 * x1) * rr[0]);
          out.moment[idx][1] += ph * (x1 * rr[1]);
          out.moment[idx][2] += ph * rr[2];
        }
      }
    }
  }
  return out;
}

}  // namespace

double tail_bound(double lambda_min, int g, int radius, int derivative_order) {
  if (!(lambda_min > 0.0)) throw std::domain_error("tail_bound needs lambda_min > 0");
  if (g != 1 && g != 2) throw std::invalid_argument("tail_bound: genus must be 1 or 2");
  double sum = 0.0;
  for (int r = radius + 1; r < radius + 400; ++r) {
    const double shells = g == 1 ? 2.0 : 8.0 * r;
    const double w = derivative_order > 0 ? 4.0 * std::numbers::pi * (r + 0.5) * (r + 0.5) : 1.0;
    const double term = shells * w * std::exp(-std::numbers::pi * lambda_min * (r - 0.5) * (r - 0.5));
    sum += term;
    if (term == 0.0 || term < sum * 1e-18) break;
  }
  return sum;
}

int truncation_radius(double lambda_min, int g, double eps, int derivative_order) {
  if (!(eps > 0.0)) throw std::invalid_argument("truncation_radius needs eps > 0");
  int r = 1;
  while (tail_bound(lambda_min, g, r, derivative_order) > eps) {
    if (++r > 100000) throw std::runtime_error("truncation radius diverged (lambda_min too small)");
  }
  return r;
}

template <class Real>
std::array<ThetaValue<Real>, 16> theta_constants(const SiegelPoint<Real>& tau, double eps, std::uint8_t shift_mask) {
  if (tau.genus() != 2) throw std::invalid_argument("theta_constants expects a genus-2 point");
  const int radius = truncation_radius(tau, eps);
  const double bound = tail_bound(tau.lambda_min(), 2, radius);
  std::array<ThetaValue<Real>, 16> out{};
  for (unsigned mp = 0; mp < 4; ++mp) {
    if (!((shift_mask >> mp) & 1u)) continue;
    const auto sums = lattice_sums<Real>(2, tau.upper(), static_cast<int>(mp >> 1), static_cast<int>(mp & 1), radius, 0);
    for (unsigned mpp = 0; mpp < 4; ++mpp) {
      const unsigned code = (mp << 2) | mpp;
      if (!is_even(Characteristic::from_code(2, code))) continue;
      out[code] = {sums.value[mpp], bound};
    }
  }
  return out;
}

template <class Real>
ThetaValue<Real> theta_constant(const Characteristic& m, const SiegelPoint<Real>& tau, double eps) {
  if (m.genus() != tau.genus()) throw std::invalid_argument("theta_constant: genus mismatch");
  if (!is_even(m)) return {Complex<Real>{}, 0.0};
  if (tau.genus() == 2) {
    const unsigned mp = m.code() >> 2;
    return theta_constants(tau, eps, static_cast<std::uint8_t>(1u << mp))[m.code()];
  }
  const int radius = truncation_radius(tau, eps);
  // The genus-1 sum is a single row with x1 = 0 and T22 = tau.
  const std::array<Complex<Real>, 3> t{Complex<Real>{}, Complex<Real>{}, tau(0, 0)};
  const auto sums = lattice_sums<Real>(1, t, 0, m.prime(0), radius, 0);
  return {sums.value[static_cast<std::size_t>(m.double_prime(0))], tail_bound(tau.lambda_min(), 1, radius)};
}

template <class Real>
ThetaValue<Real> theta_constant(const IntCharacteristic& m, const SiegelPoint<Real>& tau, double eps) {
  auto v = theta_constant(m.reduced(), tau, eps);
  if (m.reduction_sign() < 0) v.value = -v.value;
  return v;
}

template <class Real>
ThetaValue<Real> theta_second_order(unsigned m_prime_code, const SiegelPoint<Real>& tau, double eps) {
  if (m_prime_code > 3) throw std::invalid_argument("second-order characteristic code must be < 4");
  const auto t2 = tau.scaled(Real(2));
  return theta_constants(t2, eps, static_cast<std::uint8_t>(1u << m_prime_code))[m_prime_code << 2];
}

template <class Real>
std::array<ThetaValue<Real>, 4> theta_second_order_all(const SiegelPoint<Real>& tau, double eps) {
  const auto t2 = tau.scaled(Real(2));
  const auto all = theta_constants(t2, eps);
  return {all[0], all[4], all[8], all[12]};
}

template <class Real>
SecondOrderJet<Real> theta_second_order_jet(const SiegelPoint<Real>& tau, double eps) {
  if (tau.genus() != 2) throw std::invalid_argument("second-order theta constants are genus 2");
  const auto t2 = tau.scaled(Real(2));
  const int radius = std::max(truncation_radius(t2, eps, 0), truncation_radius(t2, eps, 1));
  const double vbound = tail_bound(t2.lambda_min(), 2, radius, 0);
  SecondOrderJet<Real> jet;
  jet.gradient_error_bound = tail_bound(t2.lambda_min(), 2, radius, 1);
  const Complex<Real> pi_i(Real(0), pi_v<Real>());
  for (unsigned mp = 0; mp < 4; ++mp) {
    const auto sums = lattice_sums<Real>(2, t2.upper(), static_cast<int>(mp >> 1), static_cast<int>(mp & 1), radius, 2);
    jet.values[mp] = {sums.value[0], vbound};
    // d/dtau = 2 d/dT at T = 2 tau; the off-diagonal entry appears twice in x^t T x.
    const auto& mo = sums.moment[0];
    jet.gradients[mp] = {Real(2) * pi_i * mo[0], Real(4) * pi_i * mo[1], Real(2) * pi_i * mo[2]};
  }
  return jet;
}

template <class Real>
ThetaGradient<Real> theta_gradient(unsigned m_prime_code, const SiegelPoint<Real>& tau, double eps) {
  if (m_prime_code > 3) throw std::invalid_argument("second-order characteristic code must be < 4");
  return theta_second_order_jet(tau, eps).gradients[m_prime_code];
}

XiChi xi_chi(const Characteristic& m, const SymplecticMatrix& gamma) {
  if (m.genus() != gamma.genus()) throw std::invalid_argument("xi_chi: genus mismatch");
  const int g = gamma.genus();
  std::array<std::int64_t, 2> p{}, q{};
  for (int i = 0; i < g; ++i) {
    p[static_cast<std::size_t>(i)] = m.prime(i);
    q[static_cast<std::size_t>(i)] = m.double_prime(i);
  }
  // x^t X^t Y z for g x g blocks.
  auto form = [&](const std::array<std::int64_t, 2>& x, char bx, char by, const std::array<std::int64_t, 2>& z) {
    std::int64_t s = 0;
    for (int i = 0; i < g; ++i)
      for (int j = 0; j < g; ++j)
        for (int k = 0; k < g; ++k) {
          auto blk = [&](char w, int r, int c) {
            switch (w) {
              case 'a': return gamma.a(r, c);
              case 'b': return gamma.b(r, c);
              case 'c': return gamma.c(r, c);
              default: return gamma.d(r, c);
            }
          };
          // (X^t)_{ik} = X_{ki}
          s += x[static_cast<std::size_t>(i)] * blk(bx, k, i) * blk(by, k, j) * z[static_cast<std::size_t>(j)];
        }
    return s;
  };
  std::int64_t v = -(form(p, 'b', 'd', p) + form(q, 'a', 'c', q) - 2 * form(p, 'b', 'c', q));
  for (int i = 0; i < g; ++i) {
    std::int64_t diag_ab = 0, lin = 0;
    for (int j = 0; j < g; ++j) {
      diag_ab += gamma.a(i, j) * gamma.b(i, j);
      lin += gamma.d(i, j) * p[static_cast<std::size_t>(j)] - gamma.c(i, j) * q[static_cast<std::size_t>(j)];
    }
    v += 2 * diag_ab * lin;
  }
  XiChi out;
  out.xi_eighths = static_cast<int>(((v % 8) + 8) % 8);
  out.chi = eighth_root_of_unity<double>(out.xi_eighths);
  return out;
}

int kappa_fourth_power(const SymplecticMatrix& gamma) {
  std::int64_t tr = 0;
  for (int i = 0; i < gamma.genus(); ++i)
    for (int k = 0; k < gamma.genus(); ++k) tr += gamma.b(k, i) * gamma.c(k, i);
  return (tr % 2 == 0) ? 1 : -1;
}

template <class Real>
KappaEstimate<Real> kappa_numeric(const SymplecticMatrix& gamma, const SiegelPoint<Real>& tau0, double eps) {
  using C = Complex<Real>;
  const int g = tau0.genus();
  const auto image = act_tau(gamma, tau0);
  using std::sqrt;
  const C root = sqrt(automorphy_det(gamma, tau0));

  std::vector<std::pair<Characteristic, C>> kappas;
  double best_mag = -1.0;
  std::size_t best = 0;
  for (const auto& m : even_characteristics(g)) {
    const auto th = theta_constant(m, tau0, eps);
    const double mag = std::abs(to_double(th.value));
    if (mag < 1e-6) continue;
    const auto gm = act_char_unreduced(gamma, lift(m));
    const auto lhs = theta_constant(gm, image, eps);
    if (std::abs(to_double(lhs.value)) < 1e-6) continue;
    const C chi = eighth_root_of_unity<Real>(xi_chi(m, gamma).xi_eighths);
    kappas.emplace_back(m, lhs.value / (chi * root * th.value));
    if (mag > best_mag) {
      best_mag = mag;
      best = kappas.size() - 1;
    }
  }
  if (kappas.empty()) throw std::runtime_error("kappa_numeric: every probe theta value is too small");

  KappaEstimate<Real> est;
  est.probe = kappas[best].first;
  est.value = kappas[best].second;
  est.probes_used = static_cast<int>(kappas.size());
  for (const auto& [m, k] : kappas) est.probe_spread = std::max(est.probe_spread, std::abs(to_double(C(k - est.value))));
  const auto kd = to_double(est.value);
  est.modulus_residual = std::abs(std::abs(kd) - 1.0);
  const C k4 = integer_power(est.value, 4);
  est.fourth_power_residual = std::abs(to_double(C(k4 - C(Real(kappa_fourth_power(gamma))))));
  if (!(est.fourth_power_residual <= kKappaFourthPowerTolerance)) {
    throw std::runtime_error("kappa^4 identity violated (residual " + std::to_string(est.fourth_power_residual) +
                             ") for gamma = " + to_string(gamma));
  }
  return est;
}

SymplecticMatrix tilde_matrix(const SymplecticMatrix& gamma) {
  const int g = gamma.genus();
  IntRows rows(static_cast<std::size_t>(2 * g), std::vector<std::int64_t>(static_cast<std::size_t>(2 * g)));
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      if (gamma.c(i, j) % 2 != 0) throw std::invalid_argument("tilde_matrix needs c = 0 mod 2");
      const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
      const auto gi = static_cast<std::size_t>(i + g), gj = static_cast<std::size_t>(j + g);
      rows[ui][uj] = gamma.a(i, j);
      rows[ui][gj] = 2 * gamma.b(i, j);
      rows[gi][uj] = gamma.c(i, j) / 2;
      rows[gi][gj] = gamma.d(i, j);
    }
  return SymplecticMatrix::from_rows(rows);
}

template <class Real>
SecondOrderLawCheck<Real> second_order_law(const SymplecticMatrix& gamma, const SiegelPoint<Real>& tau, double eps) {
  using C = Complex<Real>;
  const auto gt = tilde_matrix(gamma);
  const auto image = act_tau(gamma, tau);
  const auto lhs = theta_second_order_all(image, eps);
  const auto rhs = theta_second_order_all(tau, eps);
  using std::sqrt;
  const C root = sqrt(automorphy_det(gamma, tau));
  const int k4 = kappa_fourth_power(gt);

  SecondOrderLawCheck<Real> out;
  for (unsigned mp = 0; mp < 4; ++mp) {
    const auto m = Characteristic::from_code(2, mp << 2);
    const auto img = act_char_unreduced(gt, lift(m));
    const auto red = img.reduced();
    if ((red.code() & 3u) != 0) throw std::logic_error("second-order image has nonzero m''");
    out.image_code[mp] = red.code() >> 2;
    const C chi = eighth_root_of_unity<Real>(xi_chi(m, gt).xi_eighths);
    C num = lhs[out.image_code[mp]].value;
    if (img.reduction_sign() < 0) num = -num;
    out.kappa_ratios[mp] = num / (chi * root * rhs[mp].value);
  }
  for (unsigned mp = 0; mp < 4; ++mp) {
    const auto r = to_double(out.kappa_ratios[mp]);
    out.modulus_residual = std::max(out.modulus_residual, std::abs(std::abs(r) - 1.0));
    const auto r4 = to_double(integer_power(out.kappa_ratios[mp], 4));
    out.fourth_power_residual = std::max(out.fourth_power_residual, std::abs(r4 - std::complex<double>(k4)));
    out.spread = std::max(out.spread, std::abs(r - to_double(out.kappa_ratios[0])));
  }
  return out;
}

#define AZY_INSTANTIATE_THETA(R)                                                                                    \
  template std::array<ThetaValue<R>, 16> theta_constants<R>(const SiegelPoint<R>&, double, std::uint8_t);          \
  template ThetaValue<R> theta_constant<R>(const Characteristic&, const SiegelPoint<R>&, double);                   \
  template ThetaValue<R> theta_constant<R>(const IntCharacteristic&, const SiegelPoint<R>&, double);               \
  template ThetaValue<R> theta_second_order<R>(unsigned, const SiegelPoint<R>&, double);                           \
  template std::array<ThetaValue<R>, 4> theta_second_order_all<R>(const SiegelPoint<R>&, double);                  \
  template SecondOrderJet<R> theta_second_order_jet<R>(const SiegelPoint<R>&, double);                             \
  template ThetaGradient<R> theta_gradient<R>(unsigned, const SiegelPoint<R>&, double);                            \
  template KappaEstimate<R> kappa_numeric<R>(const SymplecticMatrix&, const SiegelPoint<R>&, double);              \
  template SecondOrderLawCheck<R> second_order_law<R>(const SymplecticMatrix&, const SiegelPoint<R>&, double);

AZY_INSTANTIATE_THETA(double)
AZY_INSTANTIATE_THETA(HighReal)

}  // namespace azy
