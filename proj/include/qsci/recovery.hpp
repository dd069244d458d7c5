// Copyright 2026 The qsci-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qsci/sampler.hpp"
#include "qsci/subspace.hpp"

namespace qsci {

struct RecoveryConfig {
  int iterations = 5;
  std::uint64_t seed = 0;
  BatchConfig batch;
  /// Inject the HF determinant when iteration 0 finds no physical sample.
  bool hf_fallback = false;
};

/// Keys whose alpha/beta Hamming weights match the electron counts, with
/// counts preserved.
SampleSet filter_physical(const SampleSet& samples, int n_orbitals, int n_alpha,
                          int n_beta);

/// Corrects Hamming-weight violations per spin sector: surplus electrons are
/// removed from occupied bits drawn without replacement with weight
/// |1 - n_ps| + eps, missing electrons added on unoccupied bits with weight
/// n_ps + eps. Physical strings pass through unchanged; counts merge on key
/// collision. Per-key RNG streams derive from the key value.
SampleSet correct_configurations(const SampleSet& raw,
                                 const OccupationVector& occ, int n_orbitals,
                                 int n_alpha, int n_beta, std::uint64_t seed);

struct RecoveryRecord {
  int iteration = 0;
  double energy = 0.0;                 // min over batches
  std::vector<double> batch_energies;  // per batch, diagonalized ones only
  std::size_t dimension = 0;           // subspace of the minimizing batch
  std::size_t distinct_keys = 0;       // distinct keys entering the batches
  OccupationVector occ;
  SampleSet working_set;
};

/// Iterative configuration recovery. Iteration 0 diagonalizes batches built
/// from the physical subset of `raw`; every later iteration corrects the
/// ORIGINAL raw set against the previous iteration's batch-averaged
/// occupations and rebuilds the batches. Returns one record per iteration
/// (iterations + 1 in total).
std::vector<RecoveryRecord> recover_loop(const SampleSet& raw,
                                         const MolecularHamiltonian& h,
                                         const RecoveryConfig& cfg);

/// Trace rows: iteration, min energy, per-batch energies, dimension,
/// distinct corrected keys.
void write_recovery_csv(const std::vector<RecoveryRecord>& records,
                        std::ostream& out);

}  // namespace qsci
