// Copyright 2026 The qsci-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qsci/eig.hpp"
#include "qsci/sampler.hpp"

namespace qsci {

enum class BatchMode {
  kFixedSubspace,  // draw until sqrt(d) distinct strings, dimension d after recombination
  kFixedDraw,      // draw exactly n_draw configurations
};

struct BatchConfig {
  int n_batches = 10;
  BatchMode mode = BatchMode::kFixedSubspace;
  std::uint64_t subspace_dim = 0;  // d; perfect square target in fixed-subspace mode
  std::uint64_t n_draw = 0;        // draws per batch in fixed-draw mode
  std::uint64_t seed = 0;
  std::uint64_t dim_cap = 4'000'000;  // per-batch capacity guard
  bool pool_beta = true;  // pool both halves of each key; false keeps alpha only
  double tol = 1e-8;
  int max_iter = 200;
};

/// Strings pooled from count-weighted draws (with replacement). Each drawn
/// key contributes its alpha and its beta half ("slots"); in fixed-subspace
/// mode drawing stops at sqrt(d) distinct strings or when every string
/// available in the sample set has been collected.
struct DrawResult {
  std::vector<SpinString> strings;  // distinct, ascending
  std::uint64_t slots = 0;          // string slots inspected (2 per draw)
  std::uint64_t draws = 0;
};

DrawResult draw_strings(const SampleSet& samples, const BatchConfig& cfg,
                        std::uint64_t seed);

/// Spin-conserving Cartesian recombination: strings with the alpha electron
/// count take the alpha role, likewise for beta, and every pair forms a
/// determinant. Sorted, duplicate-free.
std::vector<Determinant> recombine(const std::vector<SpinString>& strings,
                                   int n_alpha, int n_beta);

/// Dimension |S_alpha| * |S_beta| without materializing the product.
std::uint64_t recombined_dimension(const std::vector<SpinString>& strings,
                                   int n_alpha, int n_beta);

struct BatchOutcome {
  std::uint64_t slots = 0;
  std::size_t distinct_strings = 0;
  std::size_t dimension = 0;
  double energy = 0.0;  // meaningful only when !empty
  CIVector ground;
  bool empty = true;
};

struct BatchResult {
  std::vector<BatchOutcome> batches;
  double min_energy = 0.0;
  std::size_t min_index = 0;

  const BatchOutcome& best() const { return batches.at(min_index); }
  std::vector<double> energies() const;
};

/// K independent draw+recombine+diagonalize runs with per-batch derived
/// seeds; the reported energy is the minimum across batches. Batch ground
/// states are retained for occupation averaging.
BatchResult run_batches(const SampleSet& samples, const MolecularHamiltonian& h,
                        const BatchConfig& cfg);

/// Single recombination over all distinct pooled strings (no draw limit)
/// and one diagonalization.
struct FullSubspaceResult {
  double energy = 0.0;
  std::size_t dimension = 0;
  CIVector ground;
};

FullSubspaceResult full_subspace(const SampleSet& samples,
                                 const MolecularHamiltonian& h,
                                 const BatchConfig& cfg = {});

/// Batch summary rows: batch, slots_drawn, distinct_strings, dimension, energy.
void write_batch_csv(const BatchResult& result, std::ostream& out);

}  // namespace qsci
