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

#include "azy/azy_construction.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "azy/parallel.hpp"

namespace azy {

std::vector<PhiFactor> phi_factors(const CosetSystem& theta0_cosets) {
  if (!(theta0_cosets.subgroup == SubgroupSpec::theta0(2)) || theta0_cosets.index() != 15) {
    throw std::invalid_argument("phi needs the 15 cosets of Gamma_{2,0}(2)");
  }
  std::vector<PhiFactor> out;
  for (const auto& g : theta0_cosets.representatives) out.push_back({g, chi_p(g)});
  return out;
}

template <class Real>
FormValue<Real> phi_gamma(const SymplecticMatrix& gamma, const SiegelPoint<Real>& tau, double eps) {
  const auto f = p2(act_tau(gamma, tau), eps);
  const auto d = automorphy_factor(gamma, tau, HalfInteger::integer(-2));
  const Real sign(chi_p(gamma));
  return {sign * d * f.value, std::abs(to_double(d)) * f.abs_error_bound};
}

int theta0_sign_defect(const SymplecticMatrix& eta) {
  constexpr int kVec[3][2] = {{1, 0}, {0, 1}, {1, 1}};
  std::array<int, 3> image{};
  for (int i = 0; i < 3; ++i) {
    const auto x = (eta.a(0, 0) * kVec[i][0] + eta.a(0, 1) * kVec[i][1]) & 1;
    const auto y = (eta.a(1, 0) * kVec[i][0] + eta.a(1, 1) * kVec[i][1]) & 1;
    image[static_cast<std::size_t>(i)] = static_cast<int>(x + 2 * y) - 1;  // (1,0)->0, (0,1)->1, (1,1)->2
  }
  int inversions = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) inversions += image[i] > image[j];
  return inversions % 2 ? -1 : 1;
}

int phi_system_sign(const CosetSystem& reference, const CosetSystem& other) {
  if (reference.index() != other.index()) throw std::invalid_argument("coset systems differ in size");
  int sign = 1;
  for (const auto& r : other.representatives) {
    bool found = false;
    for (const auto& g : reference.representatives) {
      const auto eta = r * g.inverse();
      if (in_subgroup(eta, SubgroupSpec::theta0(2))) {
        sign *= theta0_sign_defect(eta);
        found = true;
        break;
      }
    }
    if (!found) throw std::invalid_argument("representative outside every reference coset");
  }
  return sign;
}

template <class Real>
FormValue<Real> phi(const SiegelPoint<Real>& tau, double eps, const CosetSystem& theta0_cosets) {
  const auto factors = phi_factors(theta0_cosets);
  const auto vals = parallel_map<FormValue<Real>>(factors.size(),
                                                  [&](std::size_t i) { return phi_gamma(factors[i].gamma, tau, eps); });
  FormValue<Real> out{Complex<Real>(Real(1)), 0.0};
  double rel = 0.0;
  for (const auto& v : vals) {
    out.value *= v.value;
    rel += v.abs_error_bound / std::abs(to_double(v.value));
  }
  out.abs_error_bound = std::abs(to_double(out.value)) * rel;
  return out;
}

template <class Real>
double phi_modularity_residual(const SymplecticMatrix& gamma, const SiegelPoint<Real>& tau, double eps,
                               const CosetSystem& theta0_cosets) {
  const auto lhs = phi(act_tau(gamma, tau), eps, theta0_cosets).value;
  const auto rhs = phi(tau, eps, theta0_cosets).value * automorphy_factor(gamma, tau, HalfInteger::integer(30)) *
                   Real(chi_p(gamma));
  return std::abs(to_double(Complex<Real>(lhs / rhs - Real(1))));
}

RatioStats ratio_stats(std::vector<std::complex<double>> ratios) {
  if (ratios.empty()) throw std::invalid_argument("ratio_stats needs at least one ratio");
  RatioStats s;
  s.ratios = std::move(ratios);
  auto median_of = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  };
  std::vector<double> re, im;
  for (const auto& r : s.ratios) {
    re.push_back(r.real());
    im.push_back(r.imag());
  }
  s.median = {median_of(re), median_of(im)};
  double spread = 0.0;
  for (const auto& a : s.ratios)
    for (const auto& b : s.ratios) spread = std::max(spread, std::abs(a - b));
  s.relative_spread = spread / std::abs(s.median);
  return s;
}

template <class Real>
LambdaEstimate estimate_lambda(const std::vector<SiegelPoint<Real>>& samples, double eps,
                               const CosetSystem& theta0_cosets, const CosetSystem& principal2) {
  LambdaEstimate est;
  std::vector<std::complex<double>> ratios;
  // Spreads below double resolution are computed from Real-valued ratios.
  std::vector<Complex<Real>> exact;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto a = azy_classical(samples[i], eps, principal2);
    if (!(std::abs(to_double(a.value)) > 1e3 * a.abs_error_bound)) {
      est.rejected.push_back(i);
      continue;
    }
    const auto p = phi(samples[i], eps, theta0_cosets);
    est.phi_values.push_back(to_double(p.value));
    est.azy_values.push_back(to_double(a.value));
    exact.push_back(p.value / a.value);
    ratios.push_back(to_double(exact.back()));
  }
  if (ratios.empty()) throw std::runtime_error("estimate_lambda: every sample was rejected");
  est.stats = ratio_stats(ratios);
  if constexpr (!std::is_same_v<Real, double>) {
    Real spread(0);
    for (const auto& x : exact)
      for (const auto& y : exact) spread = std::max(spread, Real(abs(Complex<Real>(x - y))));
    est.stats.relative_spread = static_cast<double>(spread / abs(from_double<Real>(est.stats.median)));
  }
  return est;
}

RatioStats crosscheck_geometric(const SymplecticMatrix& gamma, const std::vector<SiegelPoint<double>>& samples,
                                double eps) {
  const auto target = act_char(gamma.inverse(), m0_quadruple().as_set());
  const auto& tet = tetrahedron_for(target);
  std::vector<std::complex<double>> ratios;
  for (const auto& tau : samples) ratios.push_back(f_m(tet, tau, eps).value / phi_gamma(gamma, tau, eps).value);
  return ratio_stats(std::move(ratios));
}

template <class Real>
Complex<Real> geometric_product(const SiegelPoint<Real>& tau, double eps, const std::vector<Tetrahedron>& tets) {
  const auto th = theta_second_order_all(tau, eps);
  const std::array<Complex<Real>, 4> x = {th[0].value, th[1].value, th[2].value, th[3].value};
  Complex<Real> prod(Real(1));
  for (const auto& t : tets) prod *= face_product(t, x);
  return prod;
}

SiegelPoint<double> sample_tau(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  const double a00 = normal(rng), a01 = normal(rng), a10 = normal(rng), a11 = normal(rng);
  // S = A A^t, rescaled to spectral norm 0.5 u.
  double s00 = a00 * a00 + a01 * a01;
  double s01 = a00 * a10 + a01 * a11;
  double s11 = a10 * a10 + a11 * a11;
  const double norm = 0.5 * (s00 + s11) + std::hypot(0.5 * (s00 - s11), s01);
  const double scale = norm > 0.0 ? 0.5 * unit(rng) / norm : 0.0;
  s00 *= scale;
  s01 *= scale;
  s11 *= scale;
  const double b00 = sym(rng), b01 = sym(rng), b11 = sym(rng);
  using C = std::complex<double>;
  return SiegelPoint<double>::genus2(C(0.1 * b00, 1.0 + s00), C(0.1 * b01, s01), C(0.1 * b11, 1.0 + s11));
}

std::vector<SiegelPoint<double>> sample_taus(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<SiegelPoint<double>> out;
  for (int i = 0; i < count; ++i) out.push_back(sample_tau(rng));
  return out;
}

#define AZY_INSTANTIATE_AZY(R)                                                                                  \
  template FormValue<R> phi_gamma<R>(const SymplecticMatrix&, const SiegelPoint<R>&, double);                    \
  template FormValue<R> phi<R>(const SiegelPoint<R>&, double, const CosetSystem&);                               \
  template double phi_modularity_residual<R>(const SymplecticMatrix&, const SiegelPoint<R>&, double,             \
                                             const CosetSystem&);                                                \
  template LambdaEstimate estimate_lambda<R>(const std::vector<SiegelPoint<R>>&, double, const CosetSystem&,     \
                                             const CosetSystem&);                                                \
  template Complex<R> geometric_product<R>(const SiegelPoint<R>&, double, const std::vector<Tetrahedron>&);

AZY_INSTANTIATE_AZY(double)
AZY_INSTANTIATE_AZY(HighReal)

}  // namespace azy
