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

// Quadrics Q_m(X1..X4) expressing theta_m^2 through the second-order theta
// constants X = (Theta_00, Theta_01, Theta_10, Theta_11), their four-point
// intersections, and the tetrahedra T_M for M in C_4^+.

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "azy/characteristic.hpp"
#include "azy/siegel.hpp"
#include "azy/symplectic.hpp"
#include "azy/theta.hpp"

namespace azy {

using Vec4c = Eigen::Vector4cd;

/// Q_m(X) = X^t A X for a symmetric integer matrix A (row-major).
struct QuadricForm {
  Characteristic label;
  std::array<int, 16> coeffs{};

  [[nodiscard]] int operator()(int i, int j) const noexcept { return coeffs[static_cast<std::size_t>(4 * i + j)]; }

  template <class T>
  [[nodiscard]] T evaluate(const std::array<T, 4>& x) const {
    T s{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if ((*this)(i, j) != 0) s += T((*this)(i, j)) * x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)];
    return s;
  }
  [[nodiscard]] std::complex<double> evaluate(const Vec4c& x) const;
  /// dQ/dX = 2 A X.
  [[nodiscard]] Vec4c gradient(const Vec4c& x) const;
};

/// The ten addition-formula quadrics, in characteristic code order.
const std::vector<QuadricForm>& addition_table();
const QuadricForm& quadric_for(const Characteristic& m);

/// theta_m^2 - Q_m(Theta) for every even m; residuals in code order.
struct AdditionResidual {
  Characteristic label;
  double residual = 0.0;
  double bound = 0.0;
};
std::vector<AdditionResidual> addition_residuals(const SiegelPoint<double>& tau, double eps);

/// A point of P^3, scaled so that its largest-modulus coordinate equals 1.
class ProjectivePoint {
 public:
  ProjectivePoint() = default;
  explicit ProjectivePoint(const Vec4c& x);

  [[nodiscard]] const Vec4c& coords() const noexcept { return x_; }
  /// min over |u| = 1 of |a/|a| - u b/|b||: 0 iff projectively equal.
  [[nodiscard]] double distance(const ProjectivePoint& o) const;

 private:
  Vec4c x_ = Vec4c::Zero();
};

struct IntersectionResult {
  std::vector<ProjectivePoint> points;
  /// max |Q_m(v)| over the six quadrics and all points (normalized points).
  double max_residual = 0.0;
  int starts = 0;
  int converged = 0;
};

inline constexpr int kGridStarts = 200;
inline constexpr int kRandomStarts = 300;
inline constexpr double kClusterDistance = 1e-6;

/// Common zeros of the six quadrics Q_m, m in M^c. Gauss-Newton in the chart
/// of the largest coordinate from kGridStarts deterministic and kRandomStarts
/// seeded starts, clustered at projective distance kClusterDistance. Throws
/// std::runtime_error unless exactly four points are found.
IntersectionResult intersect_quadrics(const CharQuadruple& m, std::uint64_t seed = 0x5eed);

/// Face i is the plane through all vertices except vertex i, as a unit
/// coefficient vector whose first nonzero entry is real positive.
std::array<Vec4c, 4> faces_from_vertices(const std::array<ProjectivePoint, 4>& vertices);

struct Tetrahedron {
  CharSet quadruple;
  std::array<ProjectivePoint, 4> vertices;
  std::array<Vec4c, 4> faces;
  double quadric_residual = 0.0;
  /// max |face_i(v_j)|, j != i.
  double face_residual = 0.0;
  /// min |face_i(v_i)|.
  double min_excluded_value = 0.0;
};

Tetrahedron build_tetrahedron(const CharQuadruple& m);
/// All 15 tetrahedra, one per element of C_4^+ in lexicographic order. Built
/// once and cached.
const std::vector<Tetrahedron>& all_tetrahedra();
const Tetrahedron& tetrahedron_for(const CharSet& m);

/// prod_i face_i(X).
template <class Real>
Complex<Real> face_product(const Tetrahedron& t, const std::array<Complex<Real>, 4>& x);

/// F_M(tau) = prod of the faces of T_M at the second-order theta constants.
template <class Real>
ThetaValue<Real> f_m(const Tetrahedron& t, const SiegelPoint<Real>& tau, double eps);

/// Linear map L_g with Theta(g tau) proportional to L_g Theta(tau), built
/// from the generator word: L_J is the sign matrix (-1)^{a.b}, L_{T(B)} is
/// diag(i^{m'^t B m'}).
Eigen::Matrix4cd theta_transport(const Word& word);

}  // namespace azy
