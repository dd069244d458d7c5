// Copyright 2026 The qsci-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qsci/detspace.hpp"
#include "qsci/integrals.hpp"

namespace qsci {

/// CI state: an ordered, duplicate-free determinant subspace plus complex
/// amplitudes aligned with it.
struct CIVector {
  std::vector<Determinant> space;
  Eigen::VectorXcd amplitudes;

  std::size_t size() const noexcept { return space.size(); }
  double norm() const { return amplitudes.norm(); }
  void normalize();

  /// Amplitude of `d`, or zero when `d` is outside the subspace.
  std::complex<double> amplitude_of(const Determinant& d) const;

  /// Determinants with |c|^2 above `cutoff`.
  std::size_t support_size(double cutoff = 1e-12) const;
};

/// Overlap <a|b> over the union of both subspaces.
std::complex<double> overlap(const CIVector& a, const CIVector& b);

/// Row-compressed symmetric matrix <phi_i|H|phi_j>; the diagonal is stored
/// even where zero, and every off-diagonal entry is mirrored.
class SparseHamiltonian {
 public:
  SparseHamiltonian() = default;

  /// Assembles from COO triplets (upper or lower entries; mirrored here).
  /// Exposed for tests that need hand-built matrices.
  static SparseHamiltonian from_triplets(
      std::size_t dimension,
      std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> entries);

  std::size_t dimension() const noexcept { return dim_; }
  std::size_t nonzeros() const noexcept { return values_.size(); }
  double diagonal(std::size_t i) const;

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
  Eigen::MatrixXd dense() const;

 private:
  std::size_t dim_ = 0;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::uint32_t> col_;
  std::vector<double> values_;
};

enum class ConnectionScan {
  kAuto,      // all-pairs below the threshold, grouped above
  kAllPairs,  // O(dim^2) excitation-degree scan
  kGrouped,   // per-alpha-string grouping with string pair lists
};

/// Assembles the subspace Hamiltonian. All determinants must share the
/// electron counts of `h`; nonzeros appear exactly at excitation degree <= 2
/// with a nonvanishing Slater-Condon value. Row/column i follows space[i].
SparseHamiltonian build_hamiltonian(std::span<const Determinant> space,
                                    const MolecularHamiltonian& h,
                                    ConnectionScan scan = ConnectionScan::kAuto);

/// Thrown when Davidson runs out of iterations; carries the best residual.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

struct GroundState {
  double energy = 0.0;
  Eigen::VectorXcd vector;
};

/// Lowest eigenpair by Davidson iteration with a diagonal preconditioner.
/// Complex arithmetic, real Ritz values; the returned vector is normalized
/// and satisfies ||Hv - Ev|| <= tol.
GroundState ground_state(const SparseHamiltonian& hs, double tol = 1e-8,
                         int max_iter = 200);

/// Dense lowest eigenpair; the small-space oracle path (dim <= 4096).
GroundState ground_state_dense(const SparseHamiltonian& hs);

/// Convenience: ground state over an explicit determinant space.
struct SubspaceGround {
  double energy = 0.0;
  CIVector state;
};
SubspaceGround solve_subspace(std::vector<Determinant> space,
                              const MolecularHamiltonian& h, double tol = 1e-8,
                              int max_iter = 200);

/// Per-orbital spin occupations n_{p,sigma}.
struct OccupationVector {
  Eigen::VectorXd alpha;
  Eigen::VectorXd beta;
};

/// Batch-averaged occupations n_ps = (1/N_b) sum_k <Psi_k| n_ps |Psi_k>.
/// States must be normalized over spaces with equal electron counts.
OccupationVector occupations(std::span<const CIVector> states, int n_orbitals);

struct FciOptions {
  std::size_t dense_cutoff = 2000;   // dense solve at or below this dimension
  std::size_t capacity = 4'000'000;  // refuse larger full spaces
  double tol = 1e-9;
  int max_iter = 400;
};

struct FciResult {
  double energy = 0.0;
  CIVector state;
  std::size_t dimension = 0;
};

/// Full-space ground state of `h` (the desk-scale reference).
FciResult full_ci(const MolecularHamiltonian& h, const FciOptions& opts = {});

}  // namespace qsci
