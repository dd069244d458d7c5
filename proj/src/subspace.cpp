// Copyright 2026 The qsci-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "qsci/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <set>
#include <stdexcept>

#include "qsci/rng.hpp"

namespace qsci {

namespace {

// Distinct strings available in the whole sample set under the configured
// pooling rule; the exhaustion bound for fixed-subspace draws.
std::set<std::uint64_t> available_strings(const SampleSet& samples,
                                          bool pool_beta) {
  const int n = samples.n_qubits / 2;
  std::set<std::uint64_t> all;
  for (const auto& [key, count] : samples.entries) {
    auto [a, b] = split_raw(RawBitstring{key}, n);
    all.insert(a.bits);
    if (pool_beta) all.insert(b.bits);
  }
  return all;
}

std::uint64_t string_target(const BatchConfig& cfg) {
  const auto target = std::uint64_t(std::llround(std::sqrt(double(cfg.subspace_dim))));
  if (target * target != cfg.subspace_dim)
    throw std::invalid_argument(
        "fixed-subspace mode needs a perfect-square dimension target");
  return target;
}

}  // namespace

DrawResult draw_strings(const SampleSet& samples, const BatchConfig& cfg,
                        std::uint64_t seed) {
  if (samples.entries.empty())
    throw std::invalid_argument("cannot draw from an empty sample set");
  const int n = samples.n_qubits / 2;

  // Count-weighted catalogue for draws with replacement.
  std::vector<std::uint64_t> keys;
  std::vector<std::uint64_t> cumulative;
  keys.reserve(samples.entries.size());
  std::uint64_t running = 0;
  for (const auto& [key, count] : samples.entries) {
    running += count;
    keys.push_back(key);
    cumulative.push_back(running);
  }

  DrawResult out;
  std::set<std::uint64_t> pool;
  Rng rng(seed);
  auto draw_key = [&]() {
    const std::uint64_t pick = rng.below(running);
    const std::size_t idx =
        std::upper_bound(cumulative.begin(), cumulative.end(), pick) -
        cumulative.begin();
    ++out.draws;
    return split_raw(RawBitstring{keys[idx]}, n);
  };

  if (cfg.mode == BatchMode::kFixedSubspace) {
    const std::uint64_t target = string_target(cfg);
    const std::size_t available =
        available_strings(samples, cfg.pool_beta).size();
    // The small-sample fallback: when the set cannot yield sqrt(d) distinct
    // strings, every available one ends up used.
    const std::uint64_t stop = std::min<std::uint64_t>(target, available);
    while (pool.size() < stop) {
      auto [a, b] = draw_key();
      pool.insert(a.bits);
      ++out.slots;
      if (pool.size() >= stop) break;  // beta half of the last draw unused
      if (cfg.pool_beta) {
        pool.insert(b.bits);
        ++out.slots;
      }
    }
  } else {
    if (cfg.n_draw < 1)
      throw std::invalid_argument("fixed-draw mode needs n_draw >= 1");
    for (std::uint64_t k = 0; k < cfg.n_draw; ++k) {
      auto [a, b] = draw_key();
      pool.insert(a.bits);
      ++out.slots;
      if (cfg.pool_beta) {
        pool.insert(b.bits);
        ++out.slots;
      }
    }
  }

  out.strings.reserve(pool.size());
  for (std::uint64_t bits : pool) out.strings.push_back(SpinString{bits});
  return out;
}

std::vector<Determinant> recombine(const std::vector<SpinString>& strings,
                                   int n_alpha, int n_beta) {
  std::vector<SpinString> as, bs;
  for (const auto& s : strings) {
    if (s.popcount() == n_alpha) as.push_back(s);
    if (s.popcount() == n_beta) bs.push_back(s);
  }
  std::sort(as.begin(), as.end());
  std::sort(bs.begin(), bs.end());
  std::vector<Determinant> out;
  out.reserve(as.size() * bs.size());
  for (const auto& a : as)
    for (const auto& b : bs) out.push_back(Determinant{a, b});
  return out;
}

std::uint64_t recombined_dimension(const std::vector<SpinString>& strings,
                                   int n_alpha, int n_beta) {
  std::uint64_t na = 0, nb = 0;
  for (const auto& s : strings) {
    if (s.popcount() == n_alpha) ++na;
    if (s.popcount() == n_beta) ++nb;
  }
  return na * nb;
}

std::vector<double> BatchResult::energies() const {
  std::vector<double> out;
  for (const auto& b : batches)
    if (!b.empty) out.push_back(b.energy);
  return out;
}

BatchResult run_batches(const SampleSet& samples, const MolecularHamiltonian& h,
                        const BatchConfig& cfg) {
  if (cfg.n_batches < 1)
    throw std::invalid_argument("batch count must be >= 1");

  BatchResult result;
  result.min_energy = std::numeric_limits<double>::infinity();
  bool any = false;
  for (int k = 0; k < cfg.n_batches; ++k) {
    // seed_k = hash(seed, k); batches are independent and order-free.
    DrawResult drawn = draw_strings(samples, cfg, Rng::derive(cfg.seed, k));
    BatchOutcome outcome;
    outcome.slots = drawn.slots;
    outcome.distinct_strings = drawn.strings.size();

    auto space = recombine(drawn.strings, h.n_alpha(), h.n_beta());
    outcome.dimension = space.size();
    if (outcome.dimension > cfg.dim_cap)
      throw std::runtime_error("batch subspace of dimension " +
                               std::to_string(outcome.dimension) +
                               " exceeds the configured cap");
    if (!space.empty()) {
      auto ground = solve_subspace(std::move(space), h, cfg.tol, cfg.max_iter);
      outcome.energy = ground.energy;
      outcome.ground = std::move(ground.state);
      outcome.empty = false;
      if (outcome.energy < result.min_energy) {
        result.min_energy = outcome.energy;
        result.min_index = result.batches.size();
      }
      any = true;
    }
    result.batches.push_back(std::move(outcome));
  }
  if (!any)
    throw std::runtime_error(
        "no batch produced a nonempty subspace; samples carry no physical "
        "strings");
  return result;
}

FullSubspaceResult full_subspace(const SampleSet& samples,
                                 const MolecularHamiltonian& h,
                                 const BatchConfig& cfg) {
  const auto pool = available_strings(samples, cfg.pool_beta);
  std::vector<SpinString> strings;
  strings.reserve(pool.size());
  for (std::uint64_t bits : pool) strings.push_back(SpinString{bits});

  FullSubspaceResult out;
  const std::uint64_t dim = recombined_dimension(strings, h.n_alpha(), h.n_beta());
  if (dim > cfg.dim_cap)
    throw std::runtime_error("full subspace of dimension " +
                             std::to_string(dim) +
                             " exceeds the configured cap");
  auto space = recombine(strings, h.n_alpha(), h.n_beta());
  out.dimension = space.size();
  if (space.empty())
    throw std::runtime_error("samples contain no physical strings");
  auto ground = solve_subspace(std::move(space), h, cfg.tol, cfg.max_iter);
  out.energy = ground.energy;
  out.ground = std::move(ground.state);
  return out;
}

void write_batch_csv(const BatchResult& result, std::ostream& out) {
  out << "batch,slots_drawn,distinct_strings,dimension,energy\n";
  char buf[64];
  for (std::size_t k = 0; k < result.batches.size(); ++k) {
    const auto& b = result.batches[k];
    out << k << ',' << b.slots << ',' << b.distinct_strings << ','
        << b.dimension << ',';
    if (b.empty) {
      out << "\n";
    } else {
      std::snprintf(buf, sizeof buf, "%.12f\n", b.energy);
      out << buf;
    }
  }
}

}  // namespace qsci
