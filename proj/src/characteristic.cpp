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

#include "azy/characteristic.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace azy {
namespace {

int mod2(std::int64_t x) { return static_cast<int>(((x % 2) + 2) % 2); }

std::int64_t floor_div2(std::int64_t x) { return (x - mod2(x)) / 2; }

void require_genus(int g) {
  if (g != 1 && g != 2) throw std::invalid_argument("genus must be 1 or 2");
}

void require_even_genus2(const Characteristic& m) {
  if (m.genus() != 2 || !is_even(m)) {
    throw std::invalid_argument("expected an even genus-2 characteristic, got " + to_string(m));
  }
}

}  // namespace

Characteristic::Characteristic(int g, std::array<int, 2> mp, std::array<int, 2> mpp) : g_(g) {
  require_genus(g);
  unsigned code = 0;
  for (int i = 0; i < g; ++i) {
    if ((mp[i] != 0 && mp[i] != 1) || (mpp[i] != 0 && mpp[i] != 1)) {
      throw std::invalid_argument("characteristic entries must be 0 or 1");
    }
    code |= static_cast<unsigned>(mp[i]) << (2 * g - 1 - i);
    code |= static_cast<unsigned>(mpp[i]) << (g - 1 - i);
  }
  code_ = code;
}

Characteristic Characteristic::from_code(int g, unsigned code) {
  require_genus(g);
  if (code >= (1u << (2 * g))) throw std::invalid_argument("characteristic code out of range");
  Characteristic m;
  m.g_ = g;
  m.code_ = code;
  return m;
}

Characteristic IntCharacteristic::reduced() const {
  std::array<int, 2> mp{}, mpp{};
  for (int i = 0; i < g; ++i) {
    mp[i] = mod2(prime[i]);
    mpp[i] = mod2(double_prime[i]);
  }
  return Characteristic(g, mp, mpp);
}

int IntCharacteristic::reduction_sign() const {
  std::int64_t s = 0;
  for (int i = 0; i < g; ++i) s += mod2(prime[i]) * floor_div2(double_prime[i]);
  return mod2(s) == 0 ? 1 : -1;
}

IntCharacteristic lift(const Characteristic& m) {
  IntCharacteristic r;
  r.g = m.genus();
  for (int i = 0; i < m.genus(); ++i) {
    r.prime[i] = m.prime(i);
    r.double_prime[i] = m.double_prime(i);
  }
  return r;
}

int parity(const Characteristic& m) {
  int s = 0;
  for (int i = 0; i < m.genus(); ++i) s += m.prime(i) * m.double_prime(i);
  return (s % 2 == 0) ? 1 : -1;
}

Characteristic operator+(const Characteristic& x, const Characteristic& y) {
  if (x.genus() != y.genus()) throw std::invalid_argument("genus mismatch in characteristic sum");
  return Characteristic::from_code(x.genus(), x.code() ^ y.code());
}

std::vector<Characteristic> all_characteristics(int g) {
  require_genus(g);
  std::vector<Characteristic> out;
  for (unsigned c = 0; c < (1u << (2 * g)); ++c) out.push_back(Characteristic::from_code(g, c));
  return out;
}

std::vector<Characteristic> even_characteristics(int g) {
  auto all = all_characteristics(g);
  std::erase_if(all, [](const Characteristic& m) { return !is_even(m); });
  return all;
}

std::vector<Characteristic> odd_characteristics(int g) {
  auto all = all_characteristics(g);
  std::erase_if(all, [](const Characteristic& m) { return is_even(m); });
  return all;
}

std::string to_string(const Characteristic& m) {
  std::string s = "[";
  for (int i = 0; i < m.genus(); ++i) s += static_cast<char>('0' + m.prime(i));
  s += ';';
  for (int i = 0; i < m.genus(); ++i) s += static_cast<char>('0' + m.double_prime(i));
  s += ']';
  return s;
}

Characteristic parse_characteristic(std::string_view text) {
  auto bad = [&text]() {
    return std::invalid_argument("malformed characteristic '" + std::string(text) + "'");
  };
  if (text.size() < 5 || text.front() != '[' || text.back() != ']') throw bad();
  const auto body = text.substr(1, text.size() - 2);
  const auto semi = body.find(';');
  if (semi == std::string_view::npos) throw bad();
  const auto top = body.substr(0, semi);
  const auto bottom = body.substr(semi + 1);
  if (top.size() != bottom.size() || (top.size() != 1 && top.size() != 2)) throw bad();
  std::array<int, 2> mp{}, mpp{};
  for (std::size_t i = 0; i < top.size(); ++i) {
    if ((top[i] != '0' && top[i] != '1') || (bottom[i] != '0' && bottom[i] != '1')) throw bad();
    mp[i] = top[i] - '0';
    mpp[i] = bottom[i] - '0';
  }
  return Characteristic(static_cast<int>(top.size()), mp, mpp);
}

IntCharacteristic act_char_unreduced(const SymplecticMatrix& gamma, const IntCharacteristic& m) {
  if (gamma.genus() != m.g) throw std::invalid_argument("genus mismatch between matrix and characteristic");
  const int g = m.g;
  IntCharacteristic r;
  r.g = g;
  for (int i = 0; i < g; ++i) {
    std::int64_t top = 0, bottom = 0, diag_cd = 0, diag_ab = 0;
    for (int j = 0; j < g; ++j) {
      top += gamma.d(i, j) * m.prime[j] - gamma.c(i, j) * m.double_prime[j];
      bottom += -gamma.b(i, j) * m.prime[j] + gamma.a(i, j) * m.double_prime[j];
      diag_cd += gamma.c(i, j) * gamma.d(i, j);
      diag_ab += gamma.a(i, j) * gamma.b(i, j);
    }
    r.prime[i] = top + diag_cd;
    r.double_prime[i] = bottom + diag_ab;
  }
  return r;
}

Characteristic act_char(const SymplecticMatrix& gamma, const Characteristic& m) {
  return act_char_unreduced(gamma, lift(m)).reduced();
}

// ---------------------------------------------------------------------------

std::string to_string(TripleClass c) { return c == TripleClass::minus ? "minus" : "plus"; }

std::string to_string(QuadrupleClass c) {
  switch (c) {
    case QuadrupleClass::minus: return "minus";
    case QuadrupleClass::plus: return "plus";
    default: return "star";
  }
}

CharSet CharSet::of(const std::vector<Characteristic>& elems) {
  std::uint16_t mask = 0;
  for (const auto& m : elems) {
    if (m.genus() != 2) throw std::invalid_argument("CharSet holds genus-2 characteristics");
    mask = static_cast<std::uint16_t>(mask | (1u << m.code()));
  }
  return CharSet(mask);
}

int CharSet::size() const noexcept { return std::popcount(mask_); }

std::vector<Characteristic> CharSet::elements() const {
  std::vector<Characteristic> out;
  for (unsigned c = 0; c < 16; ++c)
    if ((mask_ >> c) & 1u) out.push_back(Characteristic::from_code(2, c));
  return out;
}

CharSet CharSet::even_complement() const {
  std::uint16_t even = 0;
  for (const auto& m : even_characteristics(2)) even = static_cast<std::uint16_t>(even | (1u << m.code()));
  return CharSet(static_cast<std::uint16_t>(even & ~mask_));
}

CharSet act_char(const SymplecticMatrix& gamma, const CharSet& s) {
  std::vector<Characteristic> img;
  for (const auto& m : s.elements()) img.push_back(act_char(gamma, m));
  return CharSet::of(img);
}

std::string to_string(const CharSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& m : s.elements()) {
    if (!first) out += ',';
    out += to_string(m);
    first = false;
  }
  return out + "}";
}

CharTriple::CharTriple(std::array<Characteristic, 3> e) : elems(e) {
  for (const auto& m : elems) require_even_genus2(m);
  std::sort(elems.begin(), elems.end());
  if (elems[0] == elems[1] || elems[1] == elems[2]) throw std::invalid_argument("triple members must be distinct");
}

CharSet CharTriple::as_set() const { return CharSet::of({elems.begin(), elems.end()}); }

CharQuadruple::CharQuadruple(std::array<Characteristic, 4> e) : elems(e) {
  for (const auto& m : elems) require_even_genus2(m);
  std::sort(elems.begin(), elems.end());
  for (int i = 0; i + 1 < 4; ++i)
    if (elems[i] == elems[i + 1]) throw std::invalid_argument("quadruple members must be distinct");
}

CharQuadruple CharQuadruple::from_set(const CharSet& s) {
  const auto el = s.elements();
  if (el.size() != 4) throw std::invalid_argument("quadruple needs exactly four characteristics");
  return CharQuadruple({el[0], el[1], el[2], el[3]});
}

CharSet CharQuadruple::as_set() const { return CharSet::of({elems.begin(), elems.end()}); }

TripleClass classify_triple(const CharTriple& t) {
  return parity(t.elems[0] + t.elems[1] + t.elems[2]) == -1 ? TripleClass::minus : TripleClass::plus;
}

QuadrupleClass classify_quadruple(const CharQuadruple& q) {
  int minus = 0;
  for (int skip = 0; skip < 4; ++skip) {
    std::array<Characteristic, 3> sub{};
    int k = 0;
    for (int i = 0; i < 4; ++i)
      if (i != skip) sub[k++] = q.elems[i];
    if (classify_triple(CharTriple(sub)) == TripleClass::minus) ++minus;
  }
  if (minus == 4) return QuadrupleClass::minus;
  if (minus == 0) return QuadrupleClass::plus;
  return QuadrupleClass::star;
}

std::vector<CharTriple> all_even_triples() {
  const auto ev = even_characteristics(2);
  std::vector<CharTriple> out;
  for (std::size_t i = 0; i < ev.size(); ++i)
    for (std::size_t j = i + 1; j < ev.size(); ++j)
      for (std::size_t k = j + 1; k < ev.size(); ++k) out.emplace_back(std::array{ev[i], ev[j], ev[k]});
  return out;
}

std::vector<CharQuadruple> all_even_quadruples() {
  const auto ev = even_characteristics(2);
  std::vector<CharQuadruple> out;
  for (std::size_t i = 0; i < ev.size(); ++i)
    for (std::size_t j = i + 1; j < ev.size(); ++j)
      for (std::size_t k = j + 1; k < ev.size(); ++k)
        for (std::size_t l = k + 1; l < ev.size(); ++l) out.emplace_back(std::array{ev[i], ev[j], ev[k], ev[l]});
  return out;
}

CharQuadruple m0_quadruple() {
  return CharQuadruple({Characteristic::from_code(2, 0b0000), Characteristic::from_code(2, 0b0001),
                        Characteristic::from_code(2, 0b0010), Characteristic::from_code(2, 0b0011)});
}

// ---------------------------------------------------------------------------

OddPermutation identity_permutation() { return {0, 1, 2, 3, 4, 5}; }

OddPermutation compose(const OddPermutation& p, const OddPermutation& q) {
  OddPermutation r{};
  for (std::size_t i = 0; i < 6; ++i) r[i] = p[q[i]];
  return r;
}

int permutation_sign(const OddPermutation& p) {
  std::array<bool, 6> seen{};
  int sign = 1;
  for (std::size_t i = 0; i < 6; ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

OddPermutation psi_p(const SymplecticMatrix& gamma) {
  if (gamma.genus() != 2) throw std::invalid_argument("psi_P is defined for genus 2");
  static const auto odd = odd_characteristics(2);
  std::array<int, 16> index_of{};
  index_of.fill(-1);
  for (std::size_t i = 0; i < odd.size(); ++i) index_of[odd[i].code()] = static_cast<int>(i);
  OddPermutation p{};
  for (std::size_t i = 0; i < odd.size(); ++i) {
    p[i] = static_cast<std::uint8_t>(index_of[act_char(gamma, odd[i]).code()]);
  }
  return p;
}

int chi_p(const SymplecticMatrix& gamma) { return permutation_sign(psi_p(gamma)); }

}  // namespace azy
