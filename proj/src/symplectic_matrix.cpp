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

#include "azy/symplectic_matrix.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace azy {
namespace {

int genus_of_shape(const IntRows& m) {
  const std::size_t n = m.size();
  if (n != 2 && n != 4) {
    throw std::invalid_argument("symplectic matrix must be 2x2 or 4x4");
  }
  for (const auto& row : m) {
    if (row.size() != n) {
      throw std::invalid_argument("symplectic matrix must be square");
    }
  }
  return static_cast<int>(n / 2);
}

std::array<std::int64_t, 16> pack(const IntRows& m) {
  std::array<std::int64_t, 16> e{};
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      e[i * 4 + j] = m[i][j];
    }
  }
  return e;
}

}  // namespace

bool is_symplectic(const IntRows& m) {
  const int g = genus_of_shape(m);
  const int n = 2 * g;
  // J_{ij} = 1 if j = i + g, -1 if i = j + g.
  auto jmat = [g](int i, int j) -> std::int64_t {
    if (j == i + g) return 1;
    if (i == j + g) return -1;
    return 0;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // (M^t J M)_{ij} = sum_{k,l} M_{ki} J_{kl} M_{lj}
      std::int64_t s = 0;
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          const std::int64_t jkl = jmat(k, l);
          if (jkl != 0) s += m[k][i] * jkl * m[l][j];
        }
      }
      if (s != jmat(i, j)) return false;
    }
  }
  return true;
}

SymplecticMatrix SymplecticMatrix::from_rows(const IntRows& rows) {
  const int g = genus_of_shape(rows);
  if (!is_symplectic(rows)) {
    throw std::invalid_argument("matrix is not symplectic");
  }
  return SymplecticMatrix(g, pack(rows));
}

SymplecticMatrix SymplecticMatrix::identity(int g) {
  std::array<std::int64_t, 16> e{};
  for (int i = 0; i < 2 * g; ++i) e[static_cast<std::size_t>(i * 4 + i)] = 1;
  return SymplecticMatrix(g, e);
}

SymplecticMatrix SymplecticMatrix::involution_j(int g) {
  std::array<std::int64_t, 16> e{};
  for (int i = 0; i < g; ++i) {
    e[static_cast<std::size_t>(i * 4 + i + g)] = 1;
    e[static_cast<std::size_t>((i + g) * 4 + i)] = -1;
  }
  return SymplecticMatrix(g, e);
}

SymplecticMatrix SymplecticMatrix::translation(int g, const std::array<std::int64_t, 4>& b) {
  IntRows r(static_cast<std::size_t>(2 * g), std::vector<std::int64_t>(static_cast<std::size_t>(2 * g), 0));
  for (int i = 0; i < 2 * g; ++i) r[i][i] = 1;
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) r[i][j + g] = b[static_cast<std::size_t>(i * 2 + j)];
  return from_rows(r);
}

SymplecticMatrix SymplecticMatrix::lower_translation(int g, const std::array<std::int64_t, 4>& c) {
  IntRows r(static_cast<std::size_t>(2 * g), std::vector<std::int64_t>(static_cast<std::size_t>(2 * g), 0));
  for (int i = 0; i < 2 * g; ++i) r[i][i] = 1;
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) r[i + g][j] = c[static_cast<std::size_t>(i * 2 + j)];
  return from_rows(r);
}

SymplecticMatrix SymplecticMatrix::block_diagonal(int g, const std::array<std::int64_t, 4>& u) {
  IntRows r(static_cast<std::size_t>(2 * g), std::vector<std::int64_t>(static_cast<std::size_t>(2 * g), 0));
  if (g == 1) {
    if (std::llabs(u[0]) != 1) throw std::invalid_argument("U must be unimodular");
    r[0][0] = u[0];
    r[1][1] = u[0];
    return from_rows(r);
  }
  const std::int64_t det = u[0] * u[3] - u[1] * u[2];
  if (det != 1 && det != -1) throw std::invalid_argument("U must be unimodular");
  // U^{-t} = (1/det) [[u3, -u2], [-u1, u0]]
  r[0][0] = u[0];
  r[0][1] = u[1];
  r[1][0] = u[2];
  r[1][1] = u[3];
  r[2][2] = det * u[3];
  r[2][3] = -det * u[2];
  r[3][2] = -det * u[1];
  r[3][3] = det * u[0];
  return from_rows(r);
}

SymplecticMatrix SymplecticMatrix::inverse() const {
  std::array<std::int64_t, 16> e{};
  const int g = g_;
  auto at = [&e](int i, int j) -> std::int64_t& { return e[static_cast<std::size_t>(i * 4 + j)]; };
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      at(i, j) = d(j, i);
      at(i, j + g) = -b(j, i);
      at(i + g, j) = -c(j, i);
      at(i + g, j + g) = a(j, i);
    }
  }
  return SymplecticMatrix(g, e);
}

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix& o) const {
  if (o.g_ != g_) throw std::invalid_argument("genus mismatch in product");
  std::array<std::int64_t, 16> e{};
  const int n = dim();
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const std::int64_t x = (*this)(i, k);
      if (x == 0) continue;
      for (int j = 0; j < n; ++j) e[static_cast<std::size_t>(i * 4 + j)] += x * o(k, j);
    }
  return SymplecticMatrix(g_, e);
}

SymplecticMatrix SymplecticMatrix::operator-() const {
  auto e = e_;
  for (auto& x : e) x = -x;
  return SymplecticMatrix(g_, e);
}

std::uint16_t SymplecticMatrix::mod2_key() const noexcept {
  std::uint16_t k = 0;
  for (std::size_t i = 0; i < 16; ++i) {
    if ((e_[i] & 1) != 0) k = static_cast<std::uint16_t>(k | (1u << i));
  }
  return k;
}

IntRows SymplecticMatrix::rows() const {
  const int n = dim();
  IntRows r(static_cast<std::size_t>(n), std::vector<std::int64_t>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r[i][j] = (*this)(i, j);
  return r;
}

std::int64_t SymplecticMatrix::max_abs_entry() const noexcept {
  std::int64_t m = 0;
  for (auto x : e_) m = std::max(m, x < 0 ? -x : x);
  return m;
}

std::string to_string(const SymplecticMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < m.dim(); ++i) {
    if (i) os << ',';
    os << '[';
    for (int j = 0; j < m.dim(); ++j) {
      if (j) os << ',';
      os << m(i, j);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace azy
