// Copyright 2026 The qsci-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "qsci/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "qsci/rng.hpp"

namespace qsci {

namespace {

constexpr double kWeightFloor = 1e-12;

// Adjusts one spin sector to the target weight: surplus electrons leave
// occupied bits, missing electrons land on unoccupied bits, each flip drawn
// without replacement with weight |x_p - n_p| + floor.
std::uint64_t correct_sector(std::uint64_t bits, int n_orbitals, int target,
                             const Eigen::VectorXd& occ, Rng& rng) {
  int weight = std::popcount(bits);
  while (weight != target) {
    const bool removing = weight > target;
    std::vector<int> candidates;
    std::vector<double> weights;
    double total = 0.0;
    for (int p = 0; p < n_orbitals; ++p) {
      const bool set = (bits >> p) & 1;
      if (set != removing) continue;
      candidates.push_back(p);
      const double w = (removing ? std::abs(1.0 - occ[p]) : std::abs(occ[p])) +
                       kWeightFloor;
      total += w;
      weights.push_back(w);
    }
    const double pick = rng.uniform() * total;
    double acc = 0.0;
    std::size_t chosen = candidates.size() - 1;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      acc += weights[i];
      if (pick < acc) {
        chosen = i;
        break;
      }
    }
    bits ^= std::uint64_t{1} << candidates[chosen];
    weight += removing ? -1 : 1;
  }
  return bits;
}

}  // namespace

SampleSet filter_physical(const SampleSet& samples, int n_orbitals, int n_alpha,
                          int n_beta) {
  SampleSet out;
  out.n_qubits = samples.n_qubits;
  for (const auto& [key, count] : samples.entries) {
    auto [a, b] = split_raw(RawBitstring{key}, n_orbitals);
    if (a.popcount() == n_alpha && b.popcount() == n_beta)
      out.entries[key] = count;
  }
  return out;
}

SampleSet correct_configurations(const SampleSet& raw,
                                 const OccupationVector& occ, int n_orbitals,
                                 int n_alpha, int n_beta, std::uint64_t seed) {
  if (occ.alpha.size() != n_orbitals || occ.beta.size() != n_orbitals)
    throw std::invalid_argument("occupation vector length mismatch");

  SampleSet out;
  out.n_qubits = raw.n_qubits;
  for (const auto& [key, count] : raw.entries) {
    auto [a, b] = split_raw(RawBitstring{key}, n_orbitals);
    Rng rng = Rng::stream(seed, key);
    a.bits = correct_sector(a.bits, n_orbitals, n_alpha, occ.alpha, rng);
    b.bits = correct_sector(b.bits, n_orbitals, n_beta, occ.beta, rng);
    out.entries[join_strings(a, b, n_orbitals).bits] += count;
  }
  return out;
}

std::vector<RecoveryRecord> recover_loop(const SampleSet& raw,
                                         const MolecularHamiltonian& h,
                                         const RecoveryConfig& cfg) {
  if (raw.entries.empty())
    throw std::invalid_argument("recovery needs a nonempty sample set");
  if (cfg.iterations < 0)
    throw std::invalid_argument("iteration count must be >= 0");
  const int n = h.n_orbitals();

  std::vector<RecoveryRecord> records;
  OccupationVector last_occ;
  for (int iter = 0; iter <= cfg.iterations; ++iter) {
    const std::uint64_t iter_seed = Rng::derive(cfg.seed, iter);

    SampleSet working;
    if (iter == 0) {
      working = filter_physical(raw, n, h.n_alpha(), h.n_beta());
      if (working.entries.empty()) {
        if (!cfg.hf_fallback)
          throw std::runtime_error(
              "no physical sample at iteration 0 and no HF fallback "
              "configured");
        working.n_qubits = raw.n_qubits;
        working.add(to_raw(hf_determinant(n, h.n_alpha(), h.n_beta()), n), 1);
      }
    } else {
      // Always correct the ORIGINAL raw set against the latest occupations.
      working = correct_configurations(raw, last_occ, n, h.n_alpha(),
                                       h.n_beta(), Rng::derive(iter_seed, 2));
    }

    BatchConfig batch_cfg = cfg.batch;
    batch_cfg.seed = Rng::derive(iter_seed, 1);
    BatchResult batches = run_batches(working, h, batch_cfg);

    std::vector<CIVector> grounds;
    for (const auto& b : batches.batches)
      if (!b.empty) grounds.push_back(b.ground);
    last_occ = occupations(grounds, n);

    RecoveryRecord rec;
    rec.iteration = iter;
    rec.energy = batches.min_energy;
    rec.batch_energies = batches.energies();
    rec.dimension = batches.best().dimension;
    rec.distinct_keys = working.distinct();
    rec.occ = last_occ;
    rec.working_set = std::move(working);
    records.push_back(std::move(rec));
  }
  return records;
}

void write_recovery_csv(const std::vector<RecoveryRecord>& records,
                        std::ostream& out) {
  out << "iteration,energy,batch_energies,dimension,distinct_keys\n";
  char buf[64];
  for (const auto& rec : records) {
    std::snprintf(buf, sizeof buf, "%.12f", rec.energy);
    out << rec.iteration << ',' << buf << ',';
    for (std::size_t i = 0; i < rec.batch_energies.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.12f", rec.batch_energies[i]);
      out << (i ? ";" : "") << buf;
    }
    out << ',' << rec.dimension << ',' << rec.distinct_keys << "\n";
  }
}

}  // namespace qsci
