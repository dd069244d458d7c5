// Copyright 2026 The qsci-lab Authors
// SPDX-License-Identifier: Apache-2.0
//
// Test-only reference implementations, deliberately independent of the
// production code paths they check: matrix elements come from explicit
// creation/annihilation operator algebra on raw bitstrings, and orbital
// rotations from dense determinant minors.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "qsci/detspace.hpp"
#include "qsci/eig.hpp"
#include "qsci/integrals.hpp"

namespace qsci::oracle {

/// a_i / a\dagger_i on a raw 2N-bit ket with global parity counting
/// (spin-orbital i = p for alpha, N + p for beta).
struct OpKet {
  std::uint64_t bits;
  int sign;
};
std::optional<OpKet> annihilate(std::uint64_t bits, int spin_orbital);
std::optional<OpKet> create(std::uint64_t bits, int spin_orbital);

/// Dense matrix of the second-quantized Hamiltonian over `space`, built by
/// operator application alone (no Slater-Condon shortcuts).
Eigen::MatrixXd operator_matrix(const MolecularHamiltonian& h,
                                const std::vector<Determinant>& space);

/// Orbital rotation through per-sector overlap minors:
/// (U psi)_J = sum_I det(U[J_a, I_a]) det(U[J_b, I_b]) c_I over the full
/// fixed-particle-number product space.
CIVector minor_rotation(const CIVector& state, const Eigen::MatrixXcd& u,
                        int n_orbitals, int n_alpha, int n_beta);

/// Random Hamiltonian with exact integral symmetries (seeded).
MolecularHamiltonian random_hamiltonian(int n_orbitals, int n_alpha, int n_beta,
                                        std::uint64_t seed);

/// Random normalized state over the full product space (seeded).
CIVector random_state(int n_orbitals, int n_alpha, int n_beta,
                      std::uint64_t seed);

/// Random anti-Hermitian generator (seeded).
Eigen::MatrixXcd random_generator(int n_orbitals, std::uint64_t seed,
                                  double scale = 0.5);

}  // namespace qsci::oracle
