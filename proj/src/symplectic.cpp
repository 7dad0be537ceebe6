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

#include "azy/symplectic.hpp"

#include <algorithm>
#include <deque>
#include <iostream>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace azy {
namespace {

std::mutex g_warning_mutex;
WarningHandler g_warning_handler;

std::int64_t mod(std::int64_t x, std::int64_t n) { return ((x % n) + n) % n; }

}  // namespace

void set_warning_handler(WarningHandler handler) {
  std::lock_guard lock(g_warning_mutex);
  g_warning_handler = std::move(handler);
}

void emit_warning(const std::string& message) {
  std::lock_guard lock(g_warning_mutex);
  if (g_warning_handler) {
    g_warning_handler(message);
  } else {
    std::cerr << "warning: " << message << '\n';
  }
}

SubgroupSpec SubgroupSpec::principal(int n) {
  if (n < 1) throw std::invalid_argument("subgroup level must be >= 1");
  return {Kind::principal, n};
}

SubgroupSpec SubgroupSpec::igusa(int n) {
  if (n < 1) throw std::invalid_argument("subgroup level must be >= 1");
  return {Kind::igusa, n};
}

SubgroupSpec SubgroupSpec::theta0(int n) {
  if (n < 1) throw std::invalid_argument("subgroup level must be >= 1");
  return {Kind::theta0, n};
}

std::string to_string(const SubgroupSpec& s) {
  switch (s.kind) {
    case SubgroupSpec::Kind::full: return "full";
    case SubgroupSpec::Kind::principal: return "principal-" + std::to_string(s.n);
    case SubgroupSpec::Kind::igusa: return "igusa-" + std::to_string(s.n);
    default: return "theta0-" + std::to_string(s.n);
  }
}

SubgroupSpec parse_subgroup(const std::string& text) {
  if (text == "full") return SubgroupSpec::full();
  const auto dash = text.find('-');
  if (dash == std::string::npos) throw std::invalid_argument("unknown subgroup '" + text + "'");
  const std::string name = text.substr(0, dash);
  int n = 0;
  try {
    n = std::stoi(text.substr(dash + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("bad subgroup level in '" + text + "'");
  }
  if (name == "principal") return SubgroupSpec::principal(n);
  if (name == "igusa") return SubgroupSpec::igusa(n);
  if (name == "theta0") return SubgroupSpec::theta0(n);
  throw std::invalid_argument("unknown subgroup '" + text + "'");
}

bool in_subgroup(const SymplecticMatrix& gamma, const SubgroupSpec& s) {
  const int g = gamma.genus();
  const std::int64_t n = s.n;
  switch (s.kind) {
    case SubgroupSpec::Kind::full: return true;
    case SubgroupSpec::Kind::theta0:
      for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j)
          if (mod(gamma.c(i, j), n) != 0) return false;
      return true;
    case SubgroupSpec::Kind::principal:
    case SubgroupSpec::Kind::igusa: {
      for (int i = 0; i < 2 * g; ++i)
        for (int j = 0; j < 2 * g; ++j)
          if (mod(gamma(i, j) - (i == j ? 1 : 0), n) != 0) return false;
      if (s.kind == SubgroupSpec::Kind::principal) return true;
      for (int i = 0; i < g; ++i) {
        std::int64_t ab = 0, cd = 0;
        for (int j = 0; j < g; ++j) {
          ab += gamma.a(i, j) * gamma.b(i, j);
          cd += gamma.c(i, j) * gamma.d(i, j);
        }
        if (mod(ab, 2 * n) != 0 || mod(cd, 2 * n) != 0) return false;
      }
      return true;
    }
  }
  return false;
}

const std::vector<SymplecticMatrix>& generators() {
  static const std::vector<SymplecticMatrix> gens = {
      SymplecticMatrix::involution_j(2),
      SymplecticMatrix::translation(2, {1, 0, 0, 0}),
      SymplecticMatrix::translation(2, {0, 0, 0, 1}),
      SymplecticMatrix::translation(2, {0, 1, 1, 0}),
  };
  return gens;
}

const std::vector<std::string>& generator_names() {
  static const std::vector<std::string> names = {"J", "T(E11)", "T(E22)", "T(E12+E21)"};
  return names;
}

SymplecticMatrix eta0() { return SymplecticMatrix::translation(2, {1, 0, 0, 0}); }

SymplecticMatrix evaluate_word(const Word& w) {
  auto m = SymplecticMatrix::identity(2);
  for (int i : w) m = m * generators().at(static_cast<std::size_t>(i));
  return m;
}

bool stabilizes_m0(const SymplecticMatrix& gamma) {
  const auto m0 = m0_quadruple().as_set();
  return act_char(gamma, m0) == m0;
}

CosetSystem coset_reps(const SubgroupSpec& s, const SubgroupSpec& within) {
  if (!(within == SubgroupSpec::full())) {
    throw std::invalid_argument("coset enumeration is only supported inside the full modular group");
  }
  const auto m0 = m0_quadruple().as_set();
  std::function<std::uint32_t(const SymplecticMatrix&)> key;
  std::size_t expected = 0;
  if (s == SubgroupSpec::theta0(2)) {
    // Gamma' g1 = Gamma' g2  <=>  g1 g2^{-1} stabilizes M0  <=>  g1^{-1} M0 = g2^{-1} M0.
    key = [m0](const SymplecticMatrix& g) { return static_cast<std::uint32_t>(act_char(g.inverse(), m0).mask()); };
    expected = 15;
  } else if (s == SubgroupSpec::principal(2)) {
    key = [](const SymplecticMatrix& g) { return static_cast<std::uint32_t>(g.mod2_key()); };
    expected = 720;
  } else {
    throw std::invalid_argument("coset enumeration not supported for subgroup " + to_string(s));
  }

  CosetSystem cs;
  cs.subgroup = s;
  std::unordered_map<std::uint32_t, std::size_t> seen;
  std::deque<std::size_t> queue;
  const auto id = SymplecticMatrix::identity(2);
  seen.emplace(key(id), 0);
  cs.representatives.push_back(id);
  cs.words.emplace_back();
  queue.push_back(0);
  // The key of w*g depends only on the key of w, so expanding only the first
  // word reaching each key yields shortlex-least representatives.
  while (!queue.empty()) {
    const std::size_t idx = queue.front();
    queue.pop_front();
    for (std::size_t gi = 0; gi < generators().size(); ++gi) {
      const auto next = cs.representatives[idx] * generators()[gi];
      const auto k = key(next);
      if (seen.contains(k)) continue;
      seen.emplace(k, cs.representatives.size());
      auto w = cs.words[idx];
      w.push_back(static_cast<int>(gi));
      cs.representatives.push_back(next);
      cs.words.push_back(std::move(w));
      queue.push_back(cs.representatives.size() - 1);
    }
  }
  if (cs.representatives.size() != expected) {
    throw std::logic_error("coset search found " + std::to_string(cs.representatives.size()) + " cosets, expected " +
                           std::to_string(expected) + " (generator set is wrong)");
  }
  return cs;
}

bool cosets_are_distinct(const CosetSystem& cs) {
  std::vector<SymplecticMatrix> inverses;
  inverses.reserve(cs.representatives.size());
  for (const auto& r : cs.representatives) inverses.push_back(r.inverse());
  for (std::size_t i = 0; i < cs.representatives.size(); ++i)
    for (std::size_t j = 0; j < cs.representatives.size(); ++j)
      if (i != j && in_subgroup(cs.representatives[i] * inverses[j], cs.subgroup)) return false;
  return true;
}

SymplecticMatrix random_word(std::mt19937_64& rng, int length, Word* word_out) {
  std::uniform_int_distribution<int> pick(0, static_cast<int>(generators().size()) - 1);
  Word w;
  auto m = SymplecticMatrix::identity(2);
  for (int i = 0; i < length; ++i) {
    const int g = pick(rng);
    w.push_back(g);
    m = m * generators()[static_cast<std::size_t>(g)];
  }
  if (word_out) *word_out = std::move(w);
  return m;
}

SymplecticMatrix random_subgroup_element(const SubgroupSpec& s, std::mt19937_64& rng, int length) {
  std::vector<SymplecticMatrix> pool;
  auto add_with_inverse = [&pool](const SymplecticMatrix& m) {
    pool.push_back(m);
    pool.push_back(m.inverse());
  };
  if (s == SubgroupSpec::theta0(2)) {
    add_with_inverse(SymplecticMatrix::translation(2, {1, 0, 0, 0}));
    add_with_inverse(SymplecticMatrix::translation(2, {0, 0, 0, 1}));
    add_with_inverse(SymplecticMatrix::translation(2, {0, 1, 1, 0}));
    add_with_inverse(SymplecticMatrix::block_diagonal(2, {0, 1, 1, 0}));
    add_with_inverse(SymplecticMatrix::block_diagonal(2, {1, 1, 0, 1}));
    add_with_inverse(SymplecticMatrix::lower_translation(2, {2, 0, 0, 0}));
    add_with_inverse(SymplecticMatrix::lower_translation(2, {0, 2, 2, 0}));
  } else if (s == SubgroupSpec::principal(2)) {
    add_with_inverse(SymplecticMatrix::translation(2, {2, 0, 0, 0}));
    add_with_inverse(SymplecticMatrix::translation(2, {0, 0, 0, 2}));
    add_with_inverse(SymplecticMatrix::translation(2, {0, 2, 2, 0}));
    add_with_inverse(SymplecticMatrix::lower_translation(2, {2, 0, 0, 0}));
    add_with_inverse(SymplecticMatrix::lower_translation(2, {0, 0, 0, 2}));
    add_with_inverse(SymplecticMatrix::lower_translation(2, {0, 2, 2, 0}));
    add_with_inverse(SymplecticMatrix::block_diagonal(2, {1, 2, 0, 1}));
    add_with_inverse(SymplecticMatrix::block_diagonal(2, {1, 0, 2, 1}));
    pool.push_back(-SymplecticMatrix::identity(2));
  } else {
    throw std::invalid_argument("random elements only for theta0-2 and principal-2");
  }
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  auto m = SymplecticMatrix::identity(2);
  for (int i = 0; i < length; ++i) m = m * pool[pick(rng)];
  return m;
}

CosetSystem perturbed_coset_system(const CosetSystem& cs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CosetSystem out;
  out.subgroup = cs.subgroup;
  std::vector<std::size_t> order(cs.representatives.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i : order) {
    out.representatives.push_back(random_subgroup_element(cs.subgroup, rng, 3) * cs.representatives[i]);
    out.words.emplace_back();
  }
  return out;
}

}  // namespace azy
