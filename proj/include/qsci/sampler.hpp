// Copyright 2026 The qsci-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "qsci/detspace.hpp"
#include "qsci/eig.hpp"

namespace qsci {

/// Multiset of raw 2N-bit measurement strings with positive counts. Keys may
/// violate particle number. Ordered storage keeps every consumer
/// deterministic.
struct SampleSet {
  std::map<std::uint64_t, std::uint64_t> entries;
  int n_qubits = 0;  // 2N

  std::uint64_t total_counts() const;
  std::size_t distinct() const noexcept { return entries.size(); }
  void add(RawBitstring key, std::uint64_t count);

  bool operator==(const SampleSet&) const = default;
};

struct NoiseConfig {
  double p = 0.0;         // flip-continuation probability in [0,1]
  int max_flips = 0;      // 0 selects the default cap of 16N
  std::uint64_t seed = 0;
};

/// Multinomial draw of n_shots outcomes with probabilities |c_i|^2; keys are
/// join(alpha, beta) raw bitstrings. Deterministic given the seed.
SampleSet sample_exact(const CIVector& state, int n_orbitals,
                       std::uint64_t n_shots, std::uint64_t seed);

/// Exhaustive stand-in for a very large shot budget: one key per determinant
/// with |c|^2 > cutoff, count max(1, round(|c|^2 * weight_scale)).
SampleSet support_set(const CIVector& state, int n_orbitals,
                      double cutoff = 1e-12, double weight_scale = 1e8);

/// The single-parameter flip-chain noise model. Every parent bitstring
/// produces one descendant: while a uniform draw r < p (and fewer than
/// max_flips flips so far), a uniformly chosen bit of the descendant is
/// flipped. The descendant is added with the parent's counts, so output
/// total counts are exactly double the input, all parent keys remain, and
/// the distinct-key count can at most double. Per-parent RNG streams are
/// derived from the parent key value, so results do not depend on
/// scheduling.
SampleSet apply_noise(const SampleSet& samples, const NoiseConfig& cfg);

/// Draws uniform 2N-bit strings until `target_distinct` distinct keys have
/// been drawn (repeats increment counts), then inserts the HF determinant
/// with count 1 when given.
SampleSet random_uniform_set(int n_qubits, std::uint64_t target_distinct,
                             std::optional<Determinant> include_hf,
                             std::uint64_t seed);

/// Line-delimited records {"bits": "<0/1 string of length 2N>", "count": k}.
SampleSet read_samples(std::istream& in, int n_orbitals,
                       BitOrder order = BitOrder::kBetaHigh);
SampleSet read_samples_file(const std::string& path, int n_orbitals,
                            BitOrder order = BitOrder::kBetaHigh);
void write_samples(const SampleSet& set, int n_orbitals, std::ostream& out,
                   BitOrder order = BitOrder::kBetaHigh);
void write_samples_file(const SampleSet& set, int n_orbitals,
                        const std::string& path,
                        BitOrder order = BitOrder::kBetaHigh);

}  // namespace qsci
