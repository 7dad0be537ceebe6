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

#include "azy/modular_forms.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "azy/parallel.hpp"

namespace azy {
namespace {

// prod theta_i^{power}, with the relative errors of the factors summed.
template <class Real>
FormValue<Real> power_product(const std::array<ThetaValue<Real>, 16>& th, std::uint16_t mask, int power) {
  FormValue<Real> out{Complex<Real>(Real(1)), 0.0};
  double rel = 0.0;
  for (unsigned code = 0; code < 16; ++code) {
    if (!((mask >> code) & 1u)) continue;
    out.value *= integer_power(th[code].value, power);
    const double mag = std::abs(to_double(th[code].value));
    rel += mag > 0.0 ? power * th[code].abs_error_bound / mag : INFINITY;
  }
  out.abs_error_bound = std::abs(to_double(out.value)) * rel;
  return out;
}

std::uint8_t shift_mask_of(std::uint16_t mask) {
  std::uint8_t s = 0;
  for (unsigned code = 0; code < 16; ++code)
    if ((mask >> code) & 1u) s = static_cast<std::uint8_t>(s | (1u << (code >> 2)));
  return s;
}

// Fixed interior point for the level-two pretest.
template <class Real>
SiegelPoint<Real> pretest_point() {
  using C = Complex<Real>;
  return SiegelPoint<Real>::genus2(C(Real(0.1), Real(1.1)), C(Real(0.2), Real(0.15)), C(Real(-0.2), Real(0.95)));
}

}  // namespace

template <class Real>
Complex<Real> det4(const std::array<Complex<Real>, 16>& m) {
  // Laplace expansion along the first row with 2x2 minors of rows 2-3.
  auto at = [&m](int r, int c) { return m[static_cast<std::size_t>(4 * r + c)]; };
  auto minor3 = [&](int skip) {
    int cols[3];
    for (int c = 0, k = 0; c < 4; ++c)
      if (c != skip) cols[k++] = c;
    auto d2 = [&](int a, int b) { return at(2, a) * at(3, b) - at(2, b) * at(3, a); };
    return at(1, cols[0]) * d2(cols[1], cols[2]) - at(1, cols[1]) * d2(cols[0], cols[2]) +
           at(1, cols[2]) * d2(cols[0], cols[1]);
  };
  return at(0, 0) * minor3(0) - at(0, 1) * minor3(1) + at(0, 2) * minor3(2) - at(0, 3) * minor3(3);
}

template <class Real>
FormValue<Real> chi5_product(const SiegelPoint<Real>& tau, double eps) {
  std::uint16_t mask = 0;
  for (const auto& m : even_characteristics(2)) mask = static_cast<std::uint16_t>(mask | (1u << m.code()));
  return power_product(theta_constants(tau, eps), mask, 1);
}

template <class Real>
FormValue<Real> chi5_determinant(const SiegelPoint<Real>& tau, double eps) {
  const auto jet = theta_second_order_jet(tau, eps);
  std::array<Complex<Real>, 16> m{};
  double scale = 0.0;
  for (std::size_t c = 0; c < 4; ++c) {
    m[c] = jet.values[c].value;
    for (std::size_t r = 0; r < 3; ++r) m[4 * (r + 1) + c] = jet.gradients[c][r];
    for (std::size_t r = 0; r < 4; ++r) scale = std::max(scale, std::abs(to_double(m[4 * r + c])));
  }
  // Perturbing one entry by e changes the determinant by at most e * (3! scale^3).
  const double err = std::max(jet.values[0].abs_error_bound, jet.gradient_error_bound);
  return {det4(m), 16.0 * err * 6.0 * scale * scale * scale};
}

template <class Real>
FormValue<Real> chi10(const SiegelPoint<Real>& tau, double eps) {
  const auto c5 = chi5_product(tau, eps);
  return {c5.value * c5.value, 2.0 * std::abs(to_double(c5.value)) * c5.abs_error_bound};
}

template <class Real>
FormValue<Real> p2(const SiegelPoint<Real>& tau, double eps) {
  const auto th = theta_second_order_all(tau, eps);
  FormValue<Real> out{Complex<Real>(Real(1)), 0.0};
  double rel = 0.0;
  for (const auto& t : th) {
    out.value *= t.value;
    rel += t.abs_error_bound / std::abs(to_double(t.value));
  }
  out.abs_error_bound = std::abs(to_double(out.value)) * rel;
  return out;
}

SlashContext trivial_context(int weight, const CosetSystem& cosets, int multiplicity, std::string label) {
  return {weight, [](const SymplecticMatrix&) { return 1; }, &cosets, multiplicity, std::move(label)};
}

SlashContext chi_p_context(int weight, const CosetSystem& cosets, int multiplicity, std::string label) {
  return {weight, [](const SymplecticMatrix& g) { return chi_p(g); }, &cosets, multiplicity, std::move(label)};
}

const std::vector<SymplecticMatrix>& level_two_test_elements() {
  static const std::vector<SymplecticMatrix> elems = [] {
    std::vector<SymplecticMatrix> v;
    for (const auto& b : std::vector<std::array<std::int64_t, 4>>{{2, 0, 0, 0}, {0, 0, 0, 2}, {0, 2, 2, 0}}) {
      v.push_back(SymplecticMatrix::translation(2, b));
      v.push_back(SymplecticMatrix::lower_translation(2, b));
    }
    v.push_back(SymplecticMatrix::block_diagonal(2, {1, 2, 0, 1}));
    v.push_back(-SymplecticMatrix::identity(2));
    return v;
  }();
  return elems;
}

template <class Real>
ModularityPretest pretest_level_two(const BaseFunction<Real>& base, int weight, const SiegelPoint<Real>& tau,
                                    double eps) {
  const auto f0 = base(tau, eps).value;
  ModularityPretest out;
  for (const auto& eta : level_two_test_elements()) {
    const auto f1 = base(act_tau(eta, tau), eps).value;
    const auto expect = automorphy_factor(eta, tau, HalfInteger::integer(weight)) * f0;
    out.max_residual = std::max(out.max_residual, std::abs(to_double(Complex<Real>(f1 / expect - Real(1)))));
  }
  out.passed = out.max_residual <= kPretestTolerance;
  return out;
}

template <class Real>
FormValue<Real> symmetrize(const BaseFunction<Real>& base, const SlashContext& ctx, const SiegelPoint<Real>& tau,
                           double eps) {
  if (!ctx.cosets || ctx.cosets->index() != 720) {
    throw std::invalid_argument("symmetrize needs the 720 cosets of Gamma_2(2)");
  }
  if (ctx.multiplicity < 1) throw std::invalid_argument("symmetrize: multiplicity must be positive");
  const auto pre = pretest_level_two(base, ctx.weight, pretest_point<Real>(), eps);
  if (!pre.passed) {
    throw std::runtime_error("base function '" + ctx.label + "' fails the Gamma_2(2) modularity pretest (residual " +
                             std::to_string(pre.max_residual) + ")");
  }
  const auto& reps = ctx.cosets->representatives;
  const auto terms = parallel_map<FormValue<Real>>(reps.size(), [&](std::size_t i) {
    const auto& g = reps[i];
    const auto f = base(act_tau(g, tau), eps);
    const auto d = automorphy_factor(g, tau, HalfInteger::integer(-ctx.weight));
    const Real sign(ctx.character(g));
    return FormValue<Real>{sign * d * f.value, std::abs(to_double(d)) * f.abs_error_bound};
  });
  FormValue<Real> out{Complex<Real>{}, 0.0};
  for (const auto& t : terms) {
    out.value += t.value;
    out.abs_error_bound += t.abs_error_bound;
  }
  out.value /= Real(ctx.multiplicity);
  out.abs_error_bound /= ctx.multiplicity;
  return out;
}

CharTriple azy_base_triple() {
  return CharTriple({Characteristic::from_code(2, 0), Characteristic::from_code(2, 1), Characteristic::from_code(2, 4)});
}

template <class Real>
FormValue<Real> azy_base(const SiegelPoint<Real>& tau, double eps) {
  const auto mask = azy_base_triple().as_set().mask();
  return power_product(theta_constants(tau, eps, shift_mask_of(mask)), mask, 20);
}

template <class Real>
FormValue<Real> chi12_base(const SiegelPoint<Real>& tau, double eps) {
  const auto mask = m0_quadruple().as_set().even_complement().mask();
  return power_product(theta_constants(tau, eps, shift_mask_of(mask)), mask, 4);
}

template <class Real>
FormValue<Real> azy_classical(const SiegelPoint<Real>& tau, double eps, const CosetSystem& principal2) {
  const auto ctx = chi_p_context(30, principal2, 12, "azy base triple");
  return symmetrize<Real>(BaseFunction<Real>(azy_base<Real>), ctx, tau, eps);
}

template <class Real>
FormValue<Real> chi12(const SiegelPoint<Real>& tau, double eps, const CosetSystem& principal2) {
  const auto ctx = trivial_context(12, principal2, 48, "M0 complement");
  return symmetrize<Real>(BaseFunction<Real>(chi12_base<Real>), ctx, tau, eps);
}

std::vector<TripleTerm> azy_expansion(const SiegelPoint<double>& tau, double eps, const CosetSystem& principal2) {
  const auto th = theta_constants(tau, eps);
  const auto base_set = azy_base_triple().as_set();
  std::map<std::uint16_t, std::vector<std::complex<double>>> groups;
  for (const auto& g : principal2.representatives) {
    const auto image = act_char(g.inverse(), base_set);
    std::complex<double> denom(1.0);
    for (const auto& m : image.elements()) denom *= integer_power(th[m.code()].value, 20);
    const auto term = double(chi_p(g)) * automorphy_factor(g, tau, HalfInteger::integer(-30)) *
                      azy_base(act_tau(g, tau), eps).value;
    groups[image.mask()].push_back(term / denom);
  }
  std::vector<TripleTerm> out;
  for (const auto& [mask, coeffs] : groups) {
    TripleTerm t;
    t.triple = CharSet(mask);
    t.count = static_cast<int>(coeffs.size());
    for (const auto& c : coeffs) t.coefficient += c;
    t.coefficient /= static_cast<double>(coeffs.size());
    for (const auto& c : coeffs) t.spread = std::max(t.spread, std::abs(c - t.coefficient));
    out.push_back(t);
  }
  return out;
}

#define AZY_INSTANTIATE_FORMS(R)                                                                              \
  template Complex<R> det4<R>(const std::array<Complex<R>, 16>&);                                              \
  template FormValue<R> chi5_product<R>(const SiegelPoint<R>&, double);                                        \
  template FormValue<R> chi5_determinant<R>(const SiegelPoint<R>&, double);                                    \
  template FormValue<R> chi10<R>(const SiegelPoint<R>&, double);                                               \
  template FormValue<R> p2<R>(const SiegelPoint<R>&, double);                                                  \
  template ModularityPretest pretest_level_two<R>(const BaseFunction<R>&, int, const SiegelPoint<R>&, double); \
  template FormValue<R> symmetrize<R>(const BaseFunction<R>&, const SlashContext&, const SiegelPoint<R>&,      \
                                      double);                                                                 \
  template FormValue<R> azy_base<R>(const SiegelPoint<R>&, double);                                            \
  template FormValue<R> chi12_base<R>(const SiegelPoint<R>&, double);                                          \
  template FormValue<R> azy_classical<R>(const SiegelPoint<R>&, double, const CosetSystem&);                   \
  template FormValue<R> chi12<R>(const SiegelPoint<R>&, double, const CosetSystem&);

AZY_INSTANTIATE_FORMS(double)
AZY_INSTANTIATE_FORMS(HighReal)

}  // namespace azy
