// Copyright 2026 The qsci-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "qsci/detspace.hpp"

#include <algorithm>
#include <stdexcept>

namespace qsci {

namespace {

std::uint64_t low_mask(int n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

// Parity of the occupied count strictly between orbitals a and b.
int between_sign(std::uint64_t bits, int a, int b) {
  if (a > b) std::swap(a, b);
  if (b - a < 2) return 1;
  const std::uint64_t mask = ((std::uint64_t{1} << (b - a - 1)) - 1) << (a + 1);
  return (std::popcount(bits & mask) & 1) ? -1 : 1;
}

// Holes/particles of one spin sector, ascending, plus the fermionic sign of
// the ascending-paired sequential single excitations.
struct SectorExcitation {
  std::vector<int> holes, particles;
  int sign = 1;
};

SectorExcitation sector_excitation(SpinString from, SpinString to) {
  SectorExcitation out;
  std::uint64_t hole_bits = from.bits & ~to.bits;
  std::uint64_t part_bits = to.bits & ~from.bits;
  while (hole_bits) {
    out.holes.push_back(std::countr_zero(hole_bits));
    hole_bits &= hole_bits - 1;
  }
  while (part_bits) {
    out.particles.push_back(std::countr_zero(part_bits));
    part_bits &= part_bits - 1;
  }
  std::uint64_t bits = from.bits;
  for (std::size_t k = 0; k < out.holes.size(); ++k) {
    out.sign *= between_sign(bits, out.holes[k], out.particles[k]);
    bits ^= (std::uint64_t{1} << out.holes[k]) |
            (std::uint64_t{1} << out.particles[k]);
  }
  return out;
}

}  // namespace

std::vector<int> occupied_orbitals(SpinString s, int n_orbitals) {
  std::vector<int> occ;
  std::uint64_t bits = s.bits & low_mask(n_orbitals);
  while (bits) {
    occ.push_back(std::countr_zero(bits));
    bits &= bits - 1;
  }
  return occ;
}

std::vector<SpinString> enumerate_strings(int n_orbitals, int n_electrons) {
  if (n_orbitals < 0 || n_orbitals > kMaxOrbitals)
    throw std::invalid_argument("orbital count outside [0, 32]");
  if (n_electrons < 0 || n_electrons > n_orbitals)
    throw std::invalid_argument("electron count exceeds orbital count");
  std::vector<SpinString> out;
  if (n_electrons == 0) {
    out.push_back(SpinString{0});
    return out;
  }
  // Gosper's hack walks fixed-popcount masks in increasing numeric order.
  const std::uint64_t last = ((std::uint64_t{1} << n_electrons) - 1)
                             << (n_orbitals - n_electrons);
  std::uint64_t v = (std::uint64_t{1} << n_electrons) - 1;
  while (true) {
    out.push_back(SpinString{v});
    if (v == last) break;
    const std::uint64_t t = v | (v - 1);
    v = (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
  }
  return out;
}

Determinant hf_determinant(int n_orbitals, int n_alpha, int n_beta) {
  if (n_alpha > n_orbitals || n_beta > n_orbitals)
    throw std::invalid_argument("electron count exceeds orbital count");
  return Determinant{SpinString{low_mask(n_alpha)}, SpinString{low_mask(n_beta)}};
}

std::pair<SpinString, SpinString> split_raw(RawBitstring x, int n_orbitals) {
  const std::uint64_t mask = low_mask(n_orbitals);
  return {SpinString{x.bits & mask}, SpinString{(x.bits >> n_orbitals) & mask}};
}

RawBitstring join_strings(SpinString alpha, SpinString beta, int n_orbitals) {
  return RawBitstring{alpha.bits | (beta.bits << n_orbitals)};
}

std::string render_bits(RawBitstring x, int n_orbitals, BitOrder order) {
  std::uint64_t bits = x.bits;
  if (order == BitOrder::kAlphaHigh) {
    auto [a, b] = split_raw(x, n_orbitals);
    bits = join_strings(b, a, n_orbitals).bits;
  }
  std::string out(2 * std::size_t(n_orbitals), '0');
  for (int i = 0; i < 2 * n_orbitals; ++i)
    if ((bits >> i) & 1) out[2 * n_orbitals - 1 - i] = '1';
  return out;
}

RawBitstring parse_bits(const std::string& text, int n_orbitals, BitOrder order) {
  if (text.size() != 2 * std::size_t(n_orbitals))
    throw std::invalid_argument("bitstring length must be 2N");
  std::uint64_t bits = 0;
  for (int i = 0; i < 2 * n_orbitals; ++i) {
    const char c = text[2 * n_orbitals - 1 - i];
    if (c == '1')
      bits |= std::uint64_t{1} << i;
    else if (c != '0')
      throw std::invalid_argument("bitstring may contain only 0 and 1");
  }
  if (order == BitOrder::kAlphaHigh) {
    auto [b, a] = split_raw(RawBitstring{bits}, n_orbitals);
    return join_strings(b, a, n_orbitals);  // halves were swapped on disk
  }
  return RawBitstring{bits};
}

Excitation excitation(const Determinant& from, const Determinant& to) {
  if (from.alpha.popcount() != to.alpha.popcount() ||
      from.beta.popcount() != to.beta.popcount())
    throw std::invalid_argument("determinants differ in electron counts");

  Excitation ex;
  const int deg_a = std::popcount(from.alpha.bits ^ to.alpha.bits) / 2;
  const int deg_b = std::popcount(from.beta.bits ^ to.beta.bits) / 2;
  ex.degree = deg_a + deg_b;
  if (ex.degree > 2) return ex;

  auto a = sector_excitation(from.alpha, to.alpha);
  auto b = sector_excitation(from.beta, to.beta);
  // Per-sector parities multiply: number-conserving beta operators cross the
  // whole alpha block an even number of times.
  ex.sign = a.sign * b.sign;
  ex.holes_alpha = std::move(a.holes);
  ex.particles_alpha = std::move(a.particles);
  ex.holes_beta = std::move(b.holes);
  ex.particles_beta = std::move(b.particles);
  return ex;
}

double diagonal_element(const MolecularHamiltonian& h, const Determinant& d) {
  const auto occ_a = occupied_orbitals(d.alpha, h.n_orbitals());
  const auto occ_b = occupied_orbitals(d.beta, h.n_orbitals());
  double e = h.core_energy();
  for (int p : occ_a) e += h.one_body(p, p);
  for (int p : occ_b) e += h.one_body(p, p);
  // Same-spin Coulomb minus exchange; the p == q terms cancel exactly.
  for (int p : occ_a)
    for (int q : occ_a)
      e += 0.5 * (h.two_body(p, p, q, q) - h.two_body(p, q, q, p));
  for (int p : occ_b)
    for (int q : occ_b)
      e += 0.5 * (h.two_body(p, p, q, q) - h.two_body(p, q, q, p));
  for (int p : occ_a)
    for (int q : occ_b) e += h.two_body(p, p, q, q);
  return e;
}

double slater_condon(const MolecularHamiltonian& h, const Determinant& from,
                     const Determinant& to) {
  const Excitation ex = excitation(from, to);
  if (ex.degree > 2) return 0.0;
  if (ex.degree == 0) return diagonal_element(h, from);

  const auto occ_a = occupied_orbitals(from.alpha, h.n_orbitals());
  const auto occ_b = occupied_orbitals(from.beta, h.n_orbitals());

  if (ex.degree == 1) {
    const bool in_alpha = !ex.holes_alpha.empty();
    const int hole = in_alpha ? ex.holes_alpha[0] : ex.holes_beta[0];
    const int part = in_alpha ? ex.particles_alpha[0] : ex.particles_beta[0];
    double v = h.one_body(hole, part);
    const auto& same = in_alpha ? occ_a : occ_b;
    const auto& other = in_alpha ? occ_b : occ_a;
    for (int j : same) {
      if (j == hole) continue;
      v += h.two_body(hole, part, j, j) - h.two_body(hole, j, j, part);
    }
    for (int j : other) v += h.two_body(hole, part, j, j);
    return ex.sign * v;
  }

  // Degree 2: same-spin pairs carry the exchange term, mixed pairs do not.
  if (ex.holes_alpha.size() == 1) {
    return ex.sign * h.two_body(ex.holes_alpha[0], ex.particles_alpha[0],
                                ex.holes_beta[0], ex.particles_beta[0]);
  }
  const auto& holes = ex.holes_alpha.empty() ? ex.holes_beta : ex.holes_alpha;
  const auto& parts =
      ex.holes_alpha.empty() ? ex.particles_beta : ex.particles_alpha;
  return ex.sign * (h.two_body(holes[0], parts[0], holes[1], parts[1]) -
                    h.two_body(holes[0], parts[1], holes[1], parts[0]));
}

}  // namespace qsci
