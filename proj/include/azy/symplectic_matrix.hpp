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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace azy {

using IntRows = std::vector<std::vector<std::int64_t>>;

/// True iff M^t J M = J with J = [[0, 1_g], [-1_g, 0]], in exact integer
/// arithmetic. Throws std::invalid_argument unless M is 2x2 or 4x4.
bool is_symplectic(const IntRows& m);

/// An element of Sp(2g, Z) for g in {1, 2}, stored row-major.
class SymplecticMatrix {
 public:
  /// Validates shape and the symplectic identity.
  static SymplecticMatrix from_rows(const IntRows& rows);
  static SymplecticMatrix identity(int g);
  /// [[0, 1], [-1, 0]] in blocks.
  static SymplecticMatrix involution_j(int g);
  /// [[1, B], [0, 1]] for an integer symmetric g x g block B (row-major).
  static SymplecticMatrix translation(int g, const std::array<std::int64_t, 4>& b);
  /// [[1, 0], [C, 1]] for integer symmetric C.
  static SymplecticMatrix lower_translation(int g, const std::array<std::int64_t, 4>& c);
  /// [[U, 0], [0, U^{-t}]] for U in GL(g, Z) given row-major.
  static SymplecticMatrix block_diagonal(int g, const std::array<std::int64_t, 4>& u);

  [[nodiscard]] int genus() const noexcept { return g_; }
  [[nodiscard]] int dim() const noexcept { return 2 * g_; }

  [[nodiscard]] std::int64_t operator()(int i, int j) const noexcept {
    return e_[static_cast<std::size_t>(i * 4 + j)];
  }
  [[nodiscard]] std::int64_t a(int i, int j) const noexcept { return (*this)(i, j); }
  [[nodiscard]] std::int64_t b(int i, int j) const noexcept { return (*this)(i, j + g_); }
  [[nodiscard]] std::int64_t c(int i, int j) const noexcept { return (*this)(i + g_, j); }
  [[nodiscard]] std::int64_t d(int i, int j) const noexcept { return (*this)(i + g_, j + g_); }

  /// Exact inverse [[d^t, -b^t], [-c^t, a^t]].
  [[nodiscard]] SymplecticMatrix inverse() const;
  [[nodiscard]] SymplecticMatrix operator*(const SymplecticMatrix& o) const;
  [[nodiscard]] SymplecticMatrix operator-() const;
  bool operator==(const SymplecticMatrix& o) const = default;

  /// Reduction mod 2 packed into 16 bits (row-major over the 4x4 frame).
  [[nodiscard]] std::uint16_t mod2_key() const noexcept;
  [[nodiscard]] IntRows rows() const;
  [[nodiscard]] std::int64_t max_abs_entry() const noexcept;

 private:
  SymplecticMatrix(int g, const std::array<std::int64_t, 16>& e) : g_(g), e_(e) {}

  int g_ = 2;
  std::array<std::int64_t, 16> e_{};
};

std::string to_string(const SymplecticMatrix& m);

}  // namespace azy
