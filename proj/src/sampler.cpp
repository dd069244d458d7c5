// Copyright 2026 The qsci-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "qsci/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qsci/rng.hpp"

namespace qsci {

std::uint64_t SampleSet::total_counts() const {
  std::uint64_t total = 0;
  for (const auto& [key, count] : entries) total += count;
  return total;
}

void SampleSet::add(RawBitstring key, std::uint64_t count) {
  if (n_qubits < 64 && (key.bits >> n_qubits) != 0)
    throw std::invalid_argument("sample key does not fit in 2N bits");
  entries[key.bits] += count;
}

SampleSet sample_exact(const CIVector& state, int n_orbitals,
                       std::uint64_t n_shots, std::uint64_t seed) {
  if (std::abs(state.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("sampling requires a normalized state");

  // Cumulative |c|^2 table, then binary-search inversion per shot.
  std::vector<double> cdf(state.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    acc += std::norm(state.amplitudes[i]);
    cdf[i] = acc;
  }

  SampleSet out;
  out.n_qubits = 2 * n_orbitals;
  Rng rng(seed);
  for (std::uint64_t shot = 0; shot < n_shots; ++shot) {
    const double u = rng.uniform() * acc;
    const std::size_t idx =
        std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
    const auto& d = state.space[std::min(idx, state.size() - 1)];
    out.add(to_raw(d, n_orbitals), 1);
  }
  return out;
}

SampleSet support_set(const CIVector& state, int n_orbitals, double cutoff,
                      double weight_scale) {
  SampleSet out;
  out.n_qubits = 2 * n_orbitals;
  for (std::size_t i = 0; i < state.size(); ++i) {
    const double w = std::norm(state.amplitudes[i]);
    if (w <= cutoff) continue;
    const long long scaled = std::llround(w * weight_scale);
    out.add(to_raw(state.space[i], n_orbitals),
            scaled < 1 ? 1 : std::uint64_t(scaled));
  }
  return out;
}

SampleSet apply_noise(const SampleSet& samples, const NoiseConfig& cfg) {
  if (cfg.p < 0.0 || cfg.p > 1.0)
    throw std::invalid_argument("flip probability must lie in [0, 1]");
  const int max_flips =
      cfg.max_flips > 0 ? cfg.max_flips : 8 * samples.n_qubits;

  SampleSet out = samples;  // parents always remain
  for (const auto& [parent, count] : samples.entries) {
    // Stream keyed on the parent bitstring itself: independent of iteration
    // order and of any parallel schedule.
    Rng rng = Rng::stream(cfg.seed, parent);
    std::uint64_t descendant = parent;
    int flips = 0;
    while (flips < max_flips && rng.uniform() < cfg.p) {
      descendant ^= std::uint64_t{1} << rng.below(samples.n_qubits);
      ++flips;
    }
    out.entries[descendant] += count;  // parent == descendant doubles it
  }
  return out;
}

SampleSet random_uniform_set(int n_qubits, std::uint64_t target_distinct,
                             std::optional<Determinant> include_hf,
                             std::uint64_t seed) {
  if (n_qubits < 1 || n_qubits > 64)
    throw std::invalid_argument("qubit count must lie in [1, 64]");
  const bool full_width = n_qubits == 64;
  const std::uint64_t space = full_width ? 0 : (std::uint64_t{1} << n_qubits);
  if (!full_width && target_distinct > space)
    throw std::invalid_argument("target exceeds the Fock-space size");

  SampleSet out;
  out.n_qubits = n_qubits;
  Rng rng(seed);
  while (out.entries.size() < target_distinct) {
    const std::uint64_t draw = full_width ? rng.next() : rng.below(space);
    out.entries[draw] += 1;
  }
  if (include_hf)
    out.add(to_raw(*include_hf, n_qubits / 2), 1);
  return out;
}

SampleSet read_samples(std::istream& in, int n_orbitals, BitOrder order) {
  SampleSet out;
  out.n_qubits = 2 * n_orbitals;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.contains("bits") ||
        !record.contains("count"))
      throw ParseError("expected {\"bits\": ..., \"count\": ...}", line_no);
    const auto bits = record["bits"].get<std::string>();
    const auto count = record["count"].get<long long>();
    if (count <= 0) throw ParseError("count must be positive", line_no);
    RawBitstring key;
    try {
      key = parse_bits(bits, n_orbitals, order);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), line_no);
    }
    out.add(key, std::uint64_t(count));
  }
  return out;
}

SampleSet read_samples_file(const std::string& path, int n_orbitals,
                            BitOrder order) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open sample file: " + path);
  return read_samples(in, n_orbitals, order);
}

void write_samples(const SampleSet& set, int n_orbitals, std::ostream& out,
                   BitOrder order) {
  for (const auto& [key, count] : set.entries) {
    nlohmann::json record;
    record["bits"] = render_bits(RawBitstring{key}, n_orbitals, order);
    record["count"] = count;
    out << record.dump() << "\n";
  }
}

void write_samples_file(const SampleSet& set, int n_orbitals,
                        const std::string& path, BitOrder order) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  write_samples(set, n_orbitals, out, order);
}

}  // namespace qsci
