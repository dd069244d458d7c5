// Copyright 2026 The qsci-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "qsci/integrals.hpp"

namespace qsci {

// Spatial-orbital bitmask for one spin sector; bit p set means orbital p is
// occupied. At most 32 spatial orbitals so a raw (alpha,beta) pair packs
// into one 64-bit word.
inline constexpr int kMaxOrbitals = 32;

struct SpinString {
  std::uint64_t bits = 0;

  int popcount() const noexcept { return std::popcount(bits); }
  bool occupied(int p) const noexcept { return (bits >> p) & 1u; }
  auto operator<=>(const SpinString&) const = default;
};

/// Slater determinant as an (alpha, beta) pair of spin strings, totally
/// ordered by (alpha.bits, beta.bits).
struct Determinant {
  SpinString alpha;
  SpinString beta;

  auto operator<=>(const Determinant&) const = default;
};

/// Raw 2N-bit measurement string: low N bits alpha sector, high N bits beta.
/// May violate particle number.
struct RawBitstring {
  std::uint64_t bits = 0;

  auto operator<=>(const RawBitstring&) const = default;
};

/// Occupied/virtual bit lists of one spin string, ascending.
std::vector<int> occupied_orbitals(SpinString s, int n_orbitals);

/// All C(n_orbitals, n_electrons) strings in increasing bits order.
std::vector<SpinString> enumerate_strings(int n_orbitals, int n_electrons);

/// Lowest n_alpha / n_beta orbitals occupied.
Determinant hf_determinant(int n_orbitals, int n_alpha, int n_beta);

std::pair<SpinString, SpinString> split_raw(RawBitstring x, int n_orbitals);
RawBitstring join_strings(SpinString alpha, SpinString beta, int n_orbitals);

inline Determinant to_determinant(RawBitstring x, int n_orbitals) {
  auto [a, b] = split_raw(x, n_orbitals);
  return Determinant{a, b};
}
inline RawBitstring to_raw(const Determinant& d, int n_orbitals) {
  return join_strings(d.alpha, d.beta, n_orbitals);
}

/// Text layout used by all sample-file I/O: 2N characters of 0/1, leftmost
/// character is the highest beta bit, rightmost the lowest alpha bit.
enum class BitOrder {
  kBetaHigh,   // leftmost char = beta orbital N-1 (this module's convention)
  kAlphaHigh,  // sector halves swapped: leftmost char = alpha orbital N-1
};

std::string render_bits(RawBitstring x, int n_orbitals,
                        BitOrder order = BitOrder::kBetaHigh);
RawBitstring parse_bits(const std::string& text, int n_orbitals,
                        BitOrder order = BitOrder::kBetaHigh);

/// Excitation analysis between two determinants with equal per-spin electron
/// counts. For degree <= 2 the hole/particle orbital lists (ascending, per
/// spin) and the fermionic sign are filled; beyond that only the degree.
///
/// Phase convention: orbitals ordered by ascending index within each spin
/// sector, alpha block before beta block. Holes and particles are paired in
/// ascending order and applied as sequential single excitations.
struct Excitation {
  int degree = 0;
  int sign = 1;
  std::vector<int> holes_alpha, particles_alpha;
  std::vector<int> holes_beta, particles_beta;
};

Excitation excitation(const Determinant& from, const Determinant& to);

/// Slater-Condon matrix element <to|H|from> in chemists' notation; zero for
/// excitation degree >= 3. Both determinants must carry the electron counts
/// of `h`.
double slater_condon(const MolecularHamiltonian& h, const Determinant& from,
                     const Determinant& to);

/// <D|H|D> shortcut used for Hamiltonian diagonals.
double diagonal_element(const MolecularHamiltonian& h, const Determinant& d);

}  // namespace qsci
