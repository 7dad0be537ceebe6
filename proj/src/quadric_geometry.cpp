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

#include "azy/quadric_geometry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace azy {
namespace {

// One row per even characteristic: (label, pairs (i, j, coefficient of X_i X_j)).
struct Term {
  int i, j, c;
};

QuadricForm make_form(const char* label, std::initializer_list<Term> terms) {
  QuadricForm q;
  q.label = parse_characteristic(label);
  for (const auto& t : terms) {
    if (t.i == t.j) {
      q.coeffs[static_cast<std::size_t>(5 * t.i)] += t.c;
    } else {
      // 2 X_i X_j with c = 2 gives A_ij = A_ji = 1.
      q.coeffs[static_cast<std::size_t>(4 * t.i + t.j)] += t.c / 2;
      q.coeffs[static_cast<std::size_t>(4 * t.j + t.i)] += t.c / 2;
    }
  }
  return q;
}

constexpr double kNewtonTolerance = 1e-13;
constexpr int kNewtonIterations = 60;

struct NewtonOutcome {
  Vec4c x;
  bool converged = false;
};

NewtonOutcome gauss_newton(const std::vector<const QuadricForm*>& qs, Vec4c x) {
  NewtonOutcome out;
  for (int it = 0; it < kNewtonIterations; ++it) {
    Eigen::Index chart = 0;
    x.cwiseAbs().maxCoeff(&chart);
    x /= x[chart];
    Eigen::VectorXcd f(static_cast<Eigen::Index>(qs.size()));
    Eigen::MatrixXcd jac(static_cast<Eigen::Index>(qs.size()), 3);
    for (std::size_t r = 0; r < qs.size(); ++r) {
      const auto ri = static_cast<Eigen::Index>(r);
      f[ri] = qs[r]->evaluate(x);
      const Vec4c grad = qs[r]->gradient(x);
      for (Eigen::Index k = 0, col = 0; k < 4; ++k)
        if (k != chart) jac(ri, col++) = grad[k];
    }
    if (f.cwiseAbs().maxCoeff() < kNewtonTolerance) {
      out.converged = true;
      break;
    }
    const Eigen::VectorXcd delta = jac.colPivHouseholderQr().solve(-f);
    if (!delta.allFinite()) break;
    for (Eigen::Index k = 0, col = 0; k < 4; ++k)
      if (k != chart) x[k] += delta[col++];
  }
  out.x = x;
  return out;
}

// Radical-inverse (Halton) coordinate in [0, 1).
double halton(int index, int base) {
  double f = 1.0, r = 0.0;
  for (int i = index; i > 0; i /= base) {
    f /= base;
    r += f * (i % base);
  }
  return r;
}

Vec4c grid_start(int k) {
  constexpr int primes[6] = {2, 3, 5, 7, 11, 13};
  Vec4c x;
  for (int c = 0; c < 3; ++c) {
    const double rad = 1.5 * halton(k + 1, primes[2 * c]);
    const double ang = 2.0 * std::numbers::pi * halton(k + 1, primes[2 * c + 1]);
    x[c] = std::polar(rad, ang);
  }
  x[3] = 1.0;
  // Rotate the unit coordinate through all four positions.
  std::swap(x[3], x[k % 4]);
  return x;
}

}  // namespace

std::complex<double> QuadricForm::evaluate(const Vec4c& x) const {
  return evaluate<std::complex<double>>({x[0], x[1], x[2], x[3]});
}

Vec4c QuadricForm::gradient(const Vec4c& x) const {
  Vec4c g = Vec4c::Zero();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g[i] += 2.0 * double((*this)(i, j)) * x[j];
  return g;
}

const std::vector<QuadricForm>& addition_table() {
  static const std::vector<QuadricForm> table = [] {
    std::vector<QuadricForm> t = {
        make_form("[00;00]", {{0, 0, 1}, {1, 1, 1}, {2, 2, 1}, {3, 3, 1}}),
        make_form("[00;01]", {{0, 0, 1}, {1, 1, -1}, {2, 2, 1}, {3, 3, -1}}),
        make_form("[00;10]", {{0, 0, 1}, {1, 1, 1}, {2, 2, -1}, {3, 3, -1}}),
        make_form("[00;11]", {{0, 0, 1}, {1, 1, -1}, {2, 2, -1}, {3, 3, 1}}),
        make_form("[01;00]", {{0, 1, 2}, {2, 3, 2}}),
        make_form("[01;10]", {{0, 1, 2}, {2, 3, -2}}),
        make_form("[10;00]", {{0, 2, 2}, {1, 3, 2}}),
        make_form("[10;01]", {{0, 2, 2}, {1, 3, -2}}),
        make_form("[11;00]", {{0, 3, 2}, {1, 2, 2}}),
        make_form("[11;11]", {{0, 3, 2}, {1, 2, -2}}),
    };
    std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) { return a.label.code() < b.label.code(); });
    return t;
  }();
  return table;
}

const QuadricForm& quadric_for(const Characteristic& m) {
  for (const auto& q : addition_table())
    if (q.label == m) return q;
  throw std::invalid_argument("no quadric for odd characteristic " + to_string(m));
}

std::vector<AdditionResidual> addition_residuals(const SiegelPoint<double>& tau, double eps) {
  const auto th = theta_constants(tau, eps);
  const auto big = theta_second_order_all(tau, eps);
  const std::array<std::complex<double>, 4> x = {big[0].value, big[1].value, big[2].value, big[3].value};
  double xmax = 0.0, xerr = 0.0;
  for (const auto& v : big) {
    xmax = std::max(xmax, std::abs(v.value));
    xerr = std::max(xerr, v.abs_error_bound);
  }
  std::vector<AdditionResidual> out;
  for (const auto& q : addition_table()) {
    const auto lhs = th[q.label.code()];
    AdditionResidual r;
    r.label = q.label;
    r.residual = std::abs(lhs.value * lhs.value - q.evaluate(x));
    // |Q| <= 4 sum |X|^2: first-order bound in the X errors plus the theta error.
    r.bound = 2.0 * std::abs(lhs.value) * lhs.abs_error_bound + 16.0 * xmax * xerr;
    out.push_back(r);
  }
  return out;
}

ProjectivePoint::ProjectivePoint(const Vec4c& x) {
  Eigen::Index k = 0;
  const double m = x.cwiseAbs().maxCoeff(&k);
  if (!(m > 0.0)) throw std::invalid_argument("projective point with all coordinates zero");
  x_ = x / x[k];
  x_[k] = 1.0;
}

double ProjectivePoint::distance(const ProjectivePoint& o) const {
  // Chordal distance after aligning phases; unlike sqrt(1 - cos^2) it keeps
  // full relative accuracy for nearby points.
  const Vec4c a = x_.normalized();
  const Vec4c b = o.x_.normalized();
  const std::complex<double> ip = b.dot(a);
  const std::complex<double> phase = std::abs(ip) > 0.0 ? ip / std::abs(ip) : 1.0;
  return (a - phase * b).norm();
}

IntersectionResult intersect_quadrics(const CharQuadruple& m, std::uint64_t seed) {
  if (classify_quadruple(m) != QuadrupleClass::plus) {
    throw std::invalid_argument("intersect_quadrics needs a quadruple of class plus");
  }
  std::vector<const QuadricForm*> qs;
  for (const auto& c : m.as_set().even_complement().elements()) qs.push_back(&quadric_for(c));

  IntersectionResult res;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  auto try_start = [&](const Vec4c& x0) {
    ++res.starts;
    const auto o = gauss_newton(qs, x0);
    if (!o.converged) return;
    ++res.converged;
    const ProjectivePoint p(o.x);
    for (const auto& q : res.points)
      if (q.distance(p) < kClusterDistance) return;
    res.points.push_back(p);
  };
  for (int k = 0; k < kGridStarts; ++k) try_start(grid_start(k));
  for (int k = 0; k < kRandomStarts; ++k) {
    Vec4c x;
    for (int c = 0; c < 4; ++c) x[c] = {normal(rng), normal(rng)};
    try_start(x);
  }
  if (res.points.size() != 4) {
    throw std::runtime_error("quadric intersection for " + to_string(m.as_set()) + " found " +
                             std::to_string(res.points.size()) + " points, expected 4");
  }
  // Deterministic order: lexicographic on rounded coordinates.
  auto key = [](const ProjectivePoint& p) {
    std::array<double, 8> k{};
    for (int i = 0; i < 4; ++i) {
      k[static_cast<std::size_t>(2 * i)] = -std::round(std::abs(p.coords()[i]) * 1e6);
      k[static_cast<std::size_t>(2 * i + 1)] = std::round(std::arg(p.coords()[i]) * 1e6);
    }
    return k;
  };
  std::sort(res.points.begin(), res.points.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
  for (const auto& p : res.points)
    for (const auto* q : qs) res.max_residual = std::max(res.max_residual, std::abs(q->evaluate(p.coords())));
  return res;
}

std::array<Vec4c, 4> faces_from_vertices(const std::array<ProjectivePoint, 4>& vertices) {
  Eigen::Matrix4cd all;
  for (int i = 0; i < 4; ++i) all.row(i) = vertices[static_cast<std::size_t>(i)].coords().transpose();
  Eigen::JacobiSVD<Eigen::Matrix4cd> full(all);
  const auto sv = full.singularValues();
  if (sv[3] < 1e-8 * sv[0]) throw std::runtime_error("tetrahedron vertices are coplanar");

  std::array<Vec4c, 4> faces;
  for (int i = 0; i < 4; ++i) {
    Eigen::Matrix<std::complex<double>, 3, 4> rows;
    for (int j = 0, r = 0; j < 4; ++j)
      if (j != i) rows.row(r++) = vertices[static_cast<std::size_t>(j)].coords().transpose();
    Eigen::JacobiSVD<Eigen::Matrix<std::complex<double>, 3, 4>> svd(rows, Eigen::ComputeFullV);
    // face(v) = sum a_k v_k, so a spans the right null space of rows.
    Vec4c a = svd.matrixV().col(3);
    a.normalize();
    for (int k = 0; k < 4; ++k) {
      if (std::abs(a[k]) > 1e-12) {
        a *= std::conj(a[k]) / std::abs(a[k]);
        a[k] = std::abs(a[k]);
        break;
      }
    }
    // Clean entries that are zero up to rounding so printed faces stay exact.
    for (int k = 0; k < 4; ++k)
      if (std::abs(a[k]) < 1e-15) a[k] = 0.0;
    faces[static_cast<std::size_t>(i)] = a;
  }
  return faces;
}

Tetrahedron build_tetrahedron(const CharQuadruple& m) {
  const auto inter = intersect_quadrics(m);
  Tetrahedron t;
  t.quadruple = m.as_set();
  std::copy(inter.points.begin(), inter.points.end(), t.vertices.begin());
  t.faces = faces_from_vertices(t.vertices);
  t.quadric_residual = inter.max_residual;
  t.min_excluded_value = INFINITY;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      const double v = std::abs(t.faces[i].dot(t.vertices[j].coords().conjugate()));
      if (i == j) {
        t.min_excluded_value = std::min(t.min_excluded_value, v);
      } else {
        t.face_residual = std::max(t.face_residual, v);
      }
    }
  return t;
}

const std::vector<Tetrahedron>& all_tetrahedra() {
  static const std::vector<Tetrahedron> tets = [] {
    std::vector<Tetrahedron> v;
    for (const auto& q : all_even_quadruples())
      if (classify_quadruple(q) == QuadrupleClass::plus) v.push_back(build_tetrahedron(q));
    return v;
  }();
  return tets;
}

const Tetrahedron& tetrahedron_for(const CharSet& m) {
  for (const auto& t : all_tetrahedra())
    if (t.quadruple == m) return t;
  throw std::invalid_argument("no tetrahedron for " + to_string(m) + " (not in C_4^+)");
}

template <class Real>
Complex<Real> face_product(const Tetrahedron& t, const std::array<Complex<Real>, 4>& x) {
  Complex<Real> prod(Real(1));
  for (const auto& f : t.faces) {
    Complex<Real> s{};
    for (int k = 0; k < 4; ++k) s += from_double<Real>(f[k]) * x[static_cast<std::size_t>(k)];
    prod *= s;
  }
  return prod;
}

template <class Real>
ThetaValue<Real> f_m(const Tetrahedron& t, const SiegelPoint<Real>& tau, double eps) {
  const auto th = theta_second_order_all(tau, eps);
  const std::array<Complex<Real>, 4> x = {th[0].value, th[1].value, th[2].value, th[3].value};
  const auto v = face_product(t, x);
  // Unit faces: each factor moves by at most 2 * max error (|a|_1 <= 2).
  double rel = 0.0;
  for (const auto& f : t.faces) {
    Complex<Real> s{};
    for (int k = 0; k < 4; ++k) s += from_double<Real>(f[k]) * x[static_cast<std::size_t>(k)];
    rel += 2.0 * th[0].abs_error_bound / std::abs(to_double(s));
  }
  return {v, std::abs(to_double(v)) * rel};
}

Eigen::Matrix4cd theta_transport(const Word& word) {
  Eigen::Matrix4cd l = Eigen::Matrix4cd::Identity();
  for (int gi : word) {
    Eigen::Matrix4cd step = Eigen::Matrix4cd::Zero();
    if (gi == 0) {
      for (int s = 0; s < 4; ++s)
        for (int r = 0; r < 4; ++r) step(s, r) = (std::popcount(static_cast<unsigned>(s & r)) % 2) ? -0.5 : 0.5;
    } else {
      const auto& b = generators().at(static_cast<std::size_t>(gi));
      for (int s = 0; s < 4; ++s) {
        const int m1 = s >> 1, m2 = s & 1;
        const std::int64_t q = m1 * m1 * b.b(0, 0) + 2 * m1 * m2 * b.b(0, 1) + m2 * m2 * b.b(1, 1);
        static const std::complex<double> pw[4] = {1.0, {0.0, 1.0}, -1.0, {0.0, -1.0}};
        step(s, s) = pw[((q % 4) + 4) % 4];
      }
    }
    l = l * step;
  }
  return l;
}

template Complex<double> face_product<double>(const Tetrahedron&, const std::array<Complex<double>, 4>&);
template Complex<HighReal> face_product<HighReal>(const Tetrahedron&, const std::array<Complex<HighReal>, 4>&);
template ThetaValue<double> f_m<double>(const Tetrahedron&, const SiegelPoint<double>&, double);
template ThetaValue<HighReal> f_m<HighReal>(const Tetrahedron&, const SiegelPoint<HighReal>&, double);

}  // namespace azy
