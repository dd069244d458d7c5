// Copyright 2026 The qsci-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qsci/lucj.hpp"
#include "qsci/recovery.hpp"

namespace qsci {

enum class SamplerMode { kExact, kNoisy, kRandom, kExternal };
enum class T2Source { kMp2, kFile };

SamplerMode parse_sampler_mode(const std::string& text);
std::string to_string(SamplerMode mode);

struct GeometryEntry {
  std::string label;
  std::string fcidump_path;
  std::string t2_path;      // used when t2_source == kFile
  std::string samples_path; // used when sampler == kExternal
};

struct ScanConfig {
  std::vector<GeometryEntry> geometries;
  std::optional<AnsatzMode> ansatz = AnsatzMode::k2Lp;  // nullopt: no ansatz
  T2Source t2_source = T2Source::kMp2;
  bool local_couplings = true;
  SamplerMode sampler = SamplerMode::kExact;
  std::uint64_t n_shots = 0;  // 0: exhaustive support enumeration
  double support_cutoff = 1e-12;
  NoiseConfig noise;
  RecoveryConfig recovery;
  std::uint64_t seed = 0;
  std::string output_path;
  BitOrder bit_order = BitOrder::kBetaHigh;
  /// Distinct-key target for the random sampler; when absent it is matched
  /// to the exact sampler's distinct count, which requires an ansatz.
  std::optional<std::uint64_t> random_target;
  bool random_include_hf = true;
  std::uint64_t state_capacity = 12'000'000;  // full product-space amplitude cap
  int workers = 1;
};

/// Plain-text `key = value` configuration with one [geometry] section per
/// geometry; keys are documented in the CLI help.
ScanConfig parse_scan_config(std::istream& in);
ScanConfig parse_scan_config_file(const std::string& path);

struct ScanRow {
  std::string geometry;
  std::string mode;
  int iteration = 0;
  double energy = 0.0;
  std::size_t dimension = 0;
  std::size_t distinct_physical = 0;
  std::optional<double> fci_reference;
  std::optional<double> error_vs_reference;
  std::string note;  // nonempty on per-geometry failure
  bool failed = false;
};

/// Runs the per-geometry pipeline (integrals, ansatz, samples, optional
/// noise, recovery, batches) and emits one row per (geometry, recovery
/// iteration). Failures are recorded as error rows; remaining geometries
/// still run. Deterministic under the global seed.
std::vector<ScanRow> run_scan(const ScanConfig& cfg);

struct SizeRow {
  std::string geometry;
  std::string mode;
  std::size_t distinct_samples = 0;
  std::size_t pooled_strings = 0;
  std::uint64_t recombined_dimension = 0;
  std::string note;
  bool failed = false;
};

/// Sample-set size metrics without any diagonalization.
std::vector<SizeRow> report_sizes(const ScanConfig& cfg);

/// CSV writers; the scan header repeats the effective configuration as
/// comment lines so outputs are self-describing.
void write_scan_csv(const ScanConfig& cfg, const std::vector<ScanRow>& rows,
                    std::ostream& out);
void write_sizes_csv(const ScanConfig& cfg, const std::vector<SizeRow>& rows,
                     std::ostream& out);

}  // namespace qsci
