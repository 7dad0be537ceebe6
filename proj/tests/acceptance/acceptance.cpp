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

// Acceptance run: one PASS/FAIL line per criterion.
//
//   azy_acceptance [--seed N] [--expect-fail i,j,...]
//
// Exit status 0 iff every criterion passes, except those listed with
// --expect-fail, which must fail (and are still printed as FAIL).

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "azy/azy_construction.hpp"
#include "azy/campaigns.hpp"
#include "../support/oracles.hpp"

using namespace azy;
using cd = std::complex<double>;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double rel(cd a, cd b) { return std::abs(a - b) / std::abs(b); }

const CosetSystem& c15() {
  static const CosetSystem cs = coset_reps(SubgroupSpec::theta0(2));
  return cs;
}
const CosetSystem& c720() {
  static const CosetSystem cs = coset_reps(SubgroupSpec::principal(2));
  return cs;
}

std::uint64_t g_seed = 7;

std::vector<SiegelPoint<double>> samples(int n) { return sample_taus(g_seed, n); }

Outcome cardinalities() {
  int tm = 0, tp = 0, qm = 0, qp = 0, qs = 0;
  for (const auto& t : all_even_triples()) (classify_triple(t) == TripleClass::minus ? tm : tp)++;
  for (const auto& q : all_even_quadruples()) {
    const auto c = classify_quadruple(q);
    (c == QuadrupleClass::minus ? qm : c == QuadrupleClass::plus ? qp : qs)++;
  }
  const auto ne = even_characteristics(2).size(), no = odd_characteristics(2).size();
  const bool ok = ne == 10 && no == 6 && tm == 60 && tp == 60 && qm == 15 && qp == 15 && qs == 180;
  return {ok, "even/odd " + std::to_string(ne) + "/" + std::to_string(no) + ", C3-/C3+ " + std::to_string(tm) + "/" +
                  std::to_string(tp) + ", C4-/C4+/C4* " + std::to_string(qm) + "/" + std::to_string(qp) + "/" +
                  std::to_string(qs)};
}

Outcome group_structure() {
  const int order = psi_p_image_order();
  std::mt19937_64 rng(g_seed);
  int agree = 0;
  for (int i = 0; i < 200; ++i) {
    const auto g = random_word(rng, 1 + static_cast<int>(rng() % 12));
    agree += stabilizes_m0(g) == in_subgroup(g, SubgroupSpec::theta0(2));
  }
  const bool ok = order == 720 && c15().index() == 15 && c720().index() == 720 && cosets_are_distinct(c15()) &&
                  cosets_are_distinct(c720()) && agree == 200;
  return {ok, "|psi_P| = " + std::to_string(order) + ", cosets " + std::to_string(c15().index()) + "/" +
                  std::to_string(c720().index()) + ", stabilizer agreement " + std::to_string(agree) + "/200"};
}

Outcome addition() {
  double worst = 0.0;
  for (const auto& t : samples(20))
    for (const auto& r : addition_residuals(t, 1e-12)) worst = std::max(worst, r.residual);
  return {worst < 1e-10, fmt("max residual %.2e over 20 tau (< 1e-10)", worst)};
}

Outcome geometry() {
  const auto& tets = all_tetrahedra();
  double quad = 0.0;
  bool four = tets.size() == 15;
  for (const auto& t : tets) {
    quad = std::max(quad, t.quadric_residual);
    four = four && t.vertices.size() == 4;
  }
  const auto& t0 = tetrahedron_for(m0_quadruple().as_set());
  double pts = 0.0, faces = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    double bv = INFINITY, bf = INFINITY;
    for (int k = 0; k < 4; ++k) {
      bv = std::min(bv, (t0.vertices[i].coords() - Vec4c::Unit(k)).cwiseAbs().maxCoeff());
      bf = std::min(bf, (t0.faces[i] - Vec4c::Unit(k)).cwiseAbs().maxCoeff());
    }
    pts = std::max(pts, bv);
    faces = std::max(faces, bf);
  }
  return {four && quad < 1e-8 && pts < 1e-10 && faces < 1e-10,
          fmt("15 x 4 points, quadric residual %.2e; M0 points %.2e, faces %.2e", quad, pts, faces)};
}

Outcome fm0_is_p2() {
  const auto& t0 = tetrahedron_for(m0_quadruple().as_set());
  double same = 0.0, flip = 0.0;
  for (const auto& t : samples(5)) {
    const cd p = p2(t, 1e-12).value;
    same = std::max(same, rel(f_m(t0, t, 1e-12).value, p));
    flip = std::max(flip, rel(p2(act_tau(eta0(), t), 1e-12).value, -p));
  }
  return {same < 1e-12 && flip < 1e-9, fmt("|F_M0/P2 - 1| %.2e; P2(eta0 tau) = -P2(tau) residual %.2e", same, flip)};
}

Outcome representative_independence() {
  const auto pts = samples(3);
  double worst = 0.0, signed_worst = 0.0;
  std::string signs;
  for (std::uint64_t s = 1; s <= 4; ++s) {
    const auto alt = perturbed_coset_system(c15(), g_seed * 100 + s);
    const int sign = phi_system_sign(c15(), alt);
    signs += sign > 0 ? "+" : "-";
    for (const auto& t : pts) {
      const cd a = phi(t, 1e-12, c15()).value;
      const cd b = phi(t, 1e-12, alt).value;
      worst = std::max(worst, rel(b, a));
      signed_worst = std::max(signed_worst, rel(double(sign) * b, a));
    }
  }
  return {worst < 1e-8, fmt("max |phi'/phi - 1| = %.2e over 4 systems x 3 tau; ", worst) + "predicted signs " + signs +
                            fmt(", signed agreement %.2e", signed_worst)};
}

Outcome modularity() {
  const auto pts = samples(5);
  double dbl = 0.0, hp = 0.0;
  for (const auto& g : generators())
    for (const auto& t : pts) {
      dbl = std::max(dbl, phi_modularity_residual(g, t, 1e-12, c15()));
      hp = std::max(hp, phi_modularity_residual(g, t.convert<HighReal>(), 1e-30, c15()));
    }
  return {dbl < 1e-6 && hp < 1e-15, fmt("double %.2e (< 1e-6), high precision %.2e (< 1e-15)", dbl, hp)};
}

Outcome proportionality() {
  const auto pts = samples(5);
  const auto d = estimate_lambda(pts, 1e-12, c15(), c720());
  std::vector<SiegelPoint<HighReal>> hpts;
  for (const auto& t : pts) hpts.push_back(t.convert<HighReal>());
  const auto h = estimate_lambda(hpts, 1e-30, c15(), c720());
  const bool ok = d.rejected.empty() && h.rejected.empty() && d.stats.relative_spread < 1e-5 &&
                  h.stats.relative_spread < 1e-20;
  return {ok, fmt("lambda = %.12e%+.3ei, spread %.2e", d.stats.median.real(), d.stats.median.imag(),
                  d.stats.relative_spread) +
                  fmt(" (double), %.2e (high precision); ", h.stats.relative_spread) + kAzyNormalization};
}

Outcome crosscheck() {
  const auto pts = samples(5);
  double worst = 0.0;
  for (const auto& g : c15().representatives) worst = std::max(worst, crosscheck_geometric(g, pts, 1e-12).relative_spread);
  return {worst < 1e-5, fmt("max spread of F_{g^-1 M0}/phi_g over 15 cosets %.2e (< 1e-5)", worst)};
}

Outcome chi5_identity() {
  std::vector<cd> r;
  for (const auto& t : samples(5)) r.push_back(chi5_product(t, 1e-12).value / chi5_determinant(t, 1e-12).value);
  const auto s = ratio_stats(r);
  return {s.relative_spread < 1e-6,
          fmt("mu = %.12e%+.12ei, spread %.2e (< 1e-6)", s.median.real(), s.median.imag(), s.relative_spread)};
}

Outcome hygiene() {
  double grad = 0.0;
  auto pts = samples(5);
  pts.push_back(SiegelPoint<double>::scalar_imaginary(2, 1.0));
  for (const auto& t : pts) {
    const auto jet = theta_second_order_jet(t, 1e-14);
    for (unsigned c = 0; c < 4; ++c) {
      auto f = [c](cd a, cd b, cd e) { return theta_second_order(c, SiegelPoint<double>::genus2(a, b, e), 1e-15).value; };
      // Relative to the largest partial: the tau12 partials vanish at i 1_2.
      double scale = 0.0;
      for (const auto& g : jet.gradients[c]) scale = std::max(scale, std::abs(g));
      for (int e = 0; e < 3; ++e)
        grad = std::max(grad, std::abs(jet.gradients[c][static_cast<std::size_t>(e)] -
                                       oracle::central_difference(f, t(0, 0), t(0, 1), t(1, 1), e)) /
                                  scale);
    }
  }
  double fact = 0.0;
  const cd t1(0.2, 1.1), t2(-0.1, 0.8);
  const auto diag = SiegelPoint<double>::genus2(t1, 0.0, t2);
  for (const auto& m : all_characteristics(2)) {
    const cd ref = oracle::theta1(m.prime(0), m.double_prime(0), t1) * oracle::theta1(m.prime(1), m.double_prime(1), t2);
    fact = std::max(fact, std::abs(theta_constant(m, diag, 1e-14).value - ref));
  }
  double k4 = 0.0;
  std::mt19937_64 rng(g_seed);
  const auto i1 = SiegelPoint<double>::scalar_imaginary(2, 1.0);
  for (int i = 0; i < 20; ++i)
    k4 = std::max(k4, kappa_numeric(random_word(rng, 1 + static_cast<int>(rng() % 8)), i1, 1e-14).fourth_power_residual);
  return {grad < 1e-6 && fact < 1e-10 && k4 < 1e-8,
          fmt("gradient vs FD %.2e, diagonal factorization %.2e, kappa^4 %.2e", grad, fact, k4)};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expect_fail;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--seed") && i + 1 < argc) {
      g_seed = std::stoull(argv[++i]);
    } else if (!std::strcmp(argv[i], "--expect-fail") && i + 1 < argc) {
      std::string list = argv[++i];
      for (std::size_t p = 0; p < list.size();) {
        const auto q = list.find(',', p);
        expect_fail.insert(std::stoi(list.substr(p, q - p)));
        p = q == std::string::npos ? list.size() : q + 1;
      }
    } else {
      std::fprintf(stderr, "usage: %s [--seed N] [--expect-fail i,j,...]\n", argv[0]);
      return 2;
    }
  }

  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "cardinalities", 1.0, cardinalities},
      {2, "group structure", 10.0, group_structure},
      {3, "addition formulas", 5.0, addition},
      {4, "tetrahedra", 30.0, geometry},
      {5, "F_M0 = P2 and its sign under eta0", 60.0, fm0_is_p2},
      {6, "phi independent of coset representatives", 60.0, representative_independence},
      {7, "phi modular of weight 30 with character chi_P", 600.0, modularity},
      {8, "phi = lambda azy", 1800.0, proportionality},
      {9, "geometric cross-validation", 60.0, crosscheck},
      {10, "chi5 product / determinant constant", 60.0, chi5_identity},
      {11, "numerical hygiene", 60.0, hygiene},
  };

  int unexpected = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (sec > c.budget_s) {
      o.passed = false;
      o.detail += fmt(" [over time budget %.0f s]", c.budget_s);
    }
    const bool expected = expect_fail.count(c.id) != 0;
    std::printf("%s %2d %s: %s (%.2f s)%s\n", o.passed ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), sec,
                expected ? (o.passed ? " [expected to fail but passed]" : " [known failure]") : "");
    std::fflush(stdout);
    if (o.passed == expected) ++unexpected;
  }
  std::printf("%s\n", unexpected == 0 ? "acceptance: OK" : "acceptance: UNEXPECTED RESULTS");
  return unexpected == 0 ? 0 : 1;
}
