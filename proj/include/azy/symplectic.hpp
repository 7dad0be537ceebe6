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

// Congruence subgroups of Sp(4, Z) and deterministic coset enumeration.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "azy/characteristic.hpp"
#include "azy/siegel.hpp"
#include "azy/symplectic_matrix.hpp"

namespace azy {

struct SubgroupSpec {
  enum class Kind { full, principal, igusa, theta0 };

  Kind kind = Kind::full;
  int n = 1;

  static SubgroupSpec full() { return {Kind::full, 1}; }
  /// Gamma_g(n): gamma = 1 mod n.
  static SubgroupSpec principal(int n);
  /// Gamma_g(n, 2n): Gamma_g(n) with diag(a b^t) = diag(c d^t) = 0 mod 2n.
  static SubgroupSpec igusa(int n);
  /// Gamma_{g,0}(n): c = 0 mod n.
  static SubgroupSpec theta0(int n);

  bool operator==(const SubgroupSpec&) const = default;
};

std::string to_string(const SubgroupSpec& s);
/// Accepts "full", "principal-N", "igusa-N", "theta0-N".
SubgroupSpec parse_subgroup(const std::string& text);

bool in_subgroup(const SymplecticMatrix& gamma, const SubgroupSpec& s);

/// Fixed generating set of Sp(4, Z): J, then [[1, B], [0, 1]] for
/// B = E11, E22, E12 + E21.
const std::vector<SymplecticMatrix>& generators();
const std::vector<std::string>& generator_names();

/// The matrix eta_0 = [[1, E11], [0, 1]] of Gamma_{2,0}(2), on which
/// F_{M_0} changes sign.
SymplecticMatrix eta0();

using Word = std::vector<int>;
SymplecticMatrix evaluate_word(const Word& w);

/// Right cosets Gamma' gamma of a subgroup Gamma' in Sp(4, Z).
struct CosetSystem {
  SubgroupSpec subgroup;
  std::vector<SymplecticMatrix> representatives;
  /// Generator word of each representative (empty when not word-generated).
  std::vector<Word> words;

  [[nodiscard]] int index() const noexcept { return static_cast<int>(representatives.size()); }
};

/// Breadth-first enumeration over generator words; each coset is represented
/// by its shortlex-least word, so the identity represents the trivial coset.
/// Supported: theta0(2) (15 cosets, keyed by gamma^{-1} M_0) and principal(2)
/// (720 cosets, keyed by gamma mod 2) inside the full group.
CosetSystem coset_reps(const SubgroupSpec& s, const SubgroupSpec& within = SubgroupSpec::full());

/// Exact check: gamma_i gamma_j^{-1} is outside the subgroup for all i != j.
bool cosets_are_distinct(const CosetSystem& cs);

/// An independent system for the same subgroup: each representative is
/// replaced by eta_i gamma_i with a random subgroup element eta_i, and the
/// order is shuffled.
CosetSystem perturbed_coset_system(const CosetSystem& cs, std::uint64_t seed);

/// Random product of `length` generators (uniform choice).
SymplecticMatrix random_word(std::mt19937_64& rng, int length, Word* word_out = nullptr);
/// Random element of the given subgroup (theta0(2) or principal(2)) as a
/// product of known subgroup generators.
SymplecticMatrix random_subgroup_element(const SubgroupSpec& s, std::mt19937_64& rng, int length = 6);

/// Stabilizer test for the set action on even quadruples: gamma M_0 = M_0.
bool stabilizes_m0(const SymplecticMatrix& gamma);

}  // namespace azy
