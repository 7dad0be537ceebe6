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

// Combinatorics of theta characteristics: parity, the modular group action,
// orbit classes of even triples and quadruples (genus 2), and the sign
// character obtained from the permutation action on the six odd
// characteristics.

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "azy/symplectic_matrix.hpp"

namespace azy {

/// A reduced g-characteristic [m'; m''] with m', m'' in Z_2^g, g in {1, 2}.
///
/// Packed as a 2g-bit code, lexicographic on (m'_1, .., m'_g, m''_1, .., m''_g):
/// for g = 2 the code of [01;10] is 0b0110 = 6.
class Characteristic {
 public:
  Characteristic() = default;
  Characteristic(int g, std::array<int, 2> m_prime, std::array<int, 2> m_double_prime);
  static Characteristic from_code(int g, unsigned code);

  [[nodiscard]] int genus() const noexcept { return g_; }
  [[nodiscard]] unsigned code() const noexcept { return code_; }
  [[nodiscard]] int prime(int i) const noexcept { return static_cast<int>((code_ >> (2 * g_ - 1 - i)) & 1u); }
  [[nodiscard]] int double_prime(int i) const noexcept { return static_cast<int>((code_ >> (g_ - 1 - i)) & 1u); }

  auto operator<=>(const Characteristic&) const = default;

 private:
  int g_ = 2;
  unsigned code_ = 0;
};

/// An integral (unreduced) characteristic; m = r + 2n with r reduced.
struct IntCharacteristic {
  int g = 2;
  std::array<std::int64_t, 2> prime{};
  std::array<std::int64_t, 2> double_prime{};

  [[nodiscard]] Characteristic reduced() const;
  /// theta_m = reduction_sign() * theta_{reduced()}, from
  /// theta_{r+2n} = (-1)^{r'.n''} theta_r.
  [[nodiscard]] int reduction_sign() const;
};

IntCharacteristic lift(const Characteristic& m);

/// (-1)^{<m', m''>}.
int parity(const Characteristic& m);
inline bool is_even(const Characteristic& m) { return parity(m) == 1; }

/// Componentwise sum mod 2.
Characteristic operator+(const Characteristic& x, const Characteristic& y);

/// All 4^g characteristics in canonical (code) order.
std::vector<Characteristic> all_characteristics(int g);
std::vector<Characteristic> even_characteristics(int g);
std::vector<Characteristic> odd_characteristics(int g);

/// Text form "[m'_1m'_2;m''_1m''_2]", e.g. "[01;10]"; genus-1 form "[1;0]".
std::string to_string(const Characteristic& m);
/// Inverse of to_string; throws std::invalid_argument on malformed input.
Characteristic parse_characteristic(std::string_view text);

/// gamma . m before reduction mod 2:
///   [d m' - c m'' + diag(c d^t); -b m' + a m'' + diag(a b^t)].
IntCharacteristic act_char_unreduced(const SymplecticMatrix& gamma, const IntCharacteristic& m);
/// The same action reduced mod 2. Throws std::invalid_argument on genus mismatch.
Characteristic act_char(const SymplecticMatrix& gamma, const Characteristic& m);

// ---------------------------------------------------------------------------
// Genus-2 orbit classes

enum class TripleClass { minus, plus };
enum class QuadrupleClass { minus, plus, star };

std::string to_string(TripleClass c);
std::string to_string(QuadrupleClass c);

/// A set of even genus-2 characteristics, as a 16-bit membership mask over codes.
class CharSet {
 public:
  CharSet() = default;
  explicit CharSet(std::uint16_t mask) : mask_(mask) {}
  static CharSet of(const std::vector<Characteristic>& elems);

  [[nodiscard]] std::uint16_t mask() const noexcept { return mask_; }
  [[nodiscard]] int size() const noexcept;
  [[nodiscard]] bool contains(const Characteristic& m) const noexcept { return (mask_ >> m.code()) & 1u; }
  [[nodiscard]] std::vector<Characteristic> elements() const;
  /// Complement inside the ten even characteristics.
  [[nodiscard]] CharSet even_complement() const;

  auto operator<=>(const CharSet&) const = default;

 private:
  std::uint16_t mask_ = 0;
};

CharSet act_char(const SymplecticMatrix& gamma, const CharSet& s);
std::string to_string(const CharSet& s);

/// Three distinct even characteristics; throws std::invalid_argument otherwise.
struct CharTriple {
  std::array<Characteristic, 3> elems;
  explicit CharTriple(std::array<Characteristic, 3> e);
  [[nodiscard]] CharSet as_set() const;
};

/// Four distinct even characteristics; throws std::invalid_argument otherwise.
struct CharQuadruple {
  std::array<Characteristic, 4> elems;
  explicit CharQuadruple(std::array<Characteristic, 4> e);
  static CharQuadruple from_set(const CharSet& s);
  [[nodiscard]] CharSet as_set() const;
};

/// minus iff e(m1 + m2 + m3) = -1.
TripleClass classify_triple(const CharTriple& t);
/// minus (resp. plus) iff all four sub-triples are minus (resp. plus).
QuadrupleClass classify_quadruple(const CharQuadruple& q);

std::vector<CharTriple> all_even_triples();        // C(10,3) = 120, lexicographic
std::vector<CharQuadruple> all_even_quadruples();  // C(10,4) = 210, lexicographic

/// {[00;00], [00;01], [00;10], [00;11]}.
CharQuadruple m0_quadruple();

// ---------------------------------------------------------------------------
// Permutation action on the six odd characteristics

/// image[i] = index (in odd_characteristics(2) order) of gamma applied to odd[i].
using OddPermutation = std::array<std::uint8_t, 6>;

OddPermutation identity_permutation();
/// (p o q)[i] = p[q[i]].
OddPermutation compose(const OddPermutation& p, const OddPermutation& q);
int permutation_sign(const OddPermutation& p);

OddPermutation psi_p(const SymplecticMatrix& gamma);
/// Sign of psi_p(gamma).
int chi_p(const SymplecticMatrix& gamma);

}  // namespace azy
