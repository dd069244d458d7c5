// Copyright 2026 The qsci-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "qsci/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qsci/rng.hpp"

namespace qsci {

namespace {

// Sub-stream tags for the per-geometry seed; fixed so results never depend
// on evaluation order.
enum : std::uint64_t {
  kStreamSample = 11,
  kStreamNoise = 12,
  kStreamRandom = 13,
  kStreamRecovery = 14,
};

bool parse_bool(const std::string& value, const std::string& key) {
  if (value == "1" || value == "true" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "no") return false;
  throw std::invalid_argument("config key `" + key + "` expects a boolean");
}

BitOrder parse_bit_order(const std::string& value) {
  if (value == "beta-high") return BitOrder::kBetaHigh;
  if (value == "alpha-high") return BitOrder::kAlphaHigh;
  throw std::invalid_argument("bit order must be beta-high or alpha-high");
}

std::string bit_order_name(BitOrder order) {
  return order == BitOrder::kBetaHigh ? "beta-high" : "alpha-high";
}

std::string mode_descriptor(const ScanConfig& cfg) {
  std::string out = cfg.ansatz ? to_string(*cfg.ansatz) : "none";
  out += "+" + to_string(cfg.sampler);
  if (cfg.sampler == SamplerMode::kNoisy) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "(p=%g)", cfg.noise.p);
    out += buf;
  }
  return out;
}

struct GeometryOutput {
  std::vector<ScanRow> rows;
};

CIVector build_geometry_state(const ScanConfig& cfg, const GeometryEntry& geo,
                              const MolecularHamiltonian& h) {
  if (!cfg.ansatz)
    throw std::runtime_error("this sampler mode needs an ansatz state");
  const auto alpha_count =
      enumerate_strings(h.n_orbitals(), h.n_alpha()).size();
  const auto beta_count = enumerate_strings(h.n_orbitals(), h.n_beta()).size();
  if (alpha_count * beta_count > cfg.state_capacity)
    throw std::runtime_error(
        "ansatz state of dimension " + std::to_string(alpha_count * beta_count) +
        " exceeds the state capacity (" + std::to_string(cfg.state_capacity) +
        "); reduce the active space");

  T2Tensor t2;
  if (cfg.t2_source == T2Source::kMp2) {
    t2 = mp2_t2(h, fock_diagonal(h));
  } else {
    if (geo.t2_path.empty())
      throw std::runtime_error("t2_source=file needs a t2_file per geometry");
    t2 = parse_t2_file(geo.t2_path);
    if (t2.n_occ() != h.n_alpha() || t2.n_virt() != h.n_orbitals() - h.n_alpha())
      throw std::runtime_error("t2 file dimensions do not match the FCIDUMP");
  }
  const int n_layers = cfg.ansatz == AnsatzMode::k1L ? 1 : 2;
  const LucjParams params = params_from_t2(t2, n_layers, cfg.local_couplings);
  return build_state(h, params, *cfg.ansatz);
}

SampleSet make_samples(const ScanConfig& cfg, const GeometryEntry& geo,
                       const MolecularHamiltonian& h, std::uint64_t gseed) {
  const int n = h.n_orbitals();
  auto exact_samples = [&](std::uint64_t seed) {
    const CIVector state = build_geometry_state(cfg, geo, h);
    return cfg.n_shots > 0 ? sample_exact(state, n, cfg.n_shots, seed)
                           : support_set(state, n, cfg.support_cutoff);
  };

  switch (cfg.sampler) {
    case SamplerMode::kExact:
      return exact_samples(Rng::derive(gseed, kStreamSample));
    case SamplerMode::kNoisy: {
      NoiseConfig noise = cfg.noise;
      noise.seed = Rng::derive(gseed, kStreamNoise);
      return apply_noise(exact_samples(Rng::derive(gseed, kStreamSample)),
                         noise);
    }
    case SamplerMode::kRandom: {
      std::uint64_t target;
      if (cfg.random_target) {
        target = *cfg.random_target;
      } else {
        // Match the exact sampler's distinct count, the |chi| matching rule.
        target = exact_samples(Rng::derive(gseed, kStreamSample)).distinct();
      }
      std::optional<Determinant> hf;
      if (cfg.random_include_hf)
        hf = hf_determinant(n, h.n_alpha(), h.n_beta());
      return random_uniform_set(2 * n, target, hf,
                                Rng::derive(gseed, kStreamRandom));
    }
    case SamplerMode::kExternal: {
      if (geo.samples_path.empty())
        throw std::runtime_error("external sampler needs a samples path");
      return read_samples_file(geo.samples_path, n, cfg.bit_order);
    }
  }
  throw std::logic_error("unreachable sampler mode");
}

GeometryOutput process_geometry(const ScanConfig& cfg, const GeometryEntry& geo,
                                std::uint64_t gseed) {
  GeometryOutput out;
  const std::string mode = mode_descriptor(cfg);
  try {
    const MolecularHamiltonian h = parse_fcidump_file(geo.fcidump_path);

    std::optional<double> fci_ref;
    try {
      FciOptions fci_opts;
      fci_opts.capacity = cfg.recovery.batch.dim_cap;
      fci_ref = full_ci(h, fci_opts).energy;
    } catch (const std::exception&) {
      // Reference unavailable (capacity); rows stay unreferenced.
    }

    const SampleSet samples = make_samples(cfg, geo, h, gseed);

    RecoveryConfig recovery = cfg.recovery;
    recovery.seed = Rng::derive(gseed, kStreamRecovery);
    const auto records = recover_loop(samples, h, recovery);

    for (const auto& rec : records) {
      ScanRow row;
      row.geometry = geo.label;
      row.mode = mode;
      row.iteration = rec.iteration;
      row.energy = rec.energy;
      row.dimension = rec.dimension;
      row.distinct_physical = rec.distinct_keys;
      row.fci_reference = fci_ref;
      if (fci_ref) row.error_vs_reference = rec.energy - *fci_ref;
      out.rows.push_back(std::move(row));
    }
  } catch (const std::exception& e) {
    ScanRow row;
    row.geometry = geo.label;
    row.mode = mode;
    row.failed = true;
    row.note = e.what();
    out.rows.push_back(std::move(row));
  }
  return out;
}

template <typename Fn>
auto run_per_geometry(const ScanConfig& cfg, Fn&& fn) {
  using Result = std::invoke_result_t<Fn, std::size_t>;
  std::vector<Result> results(cfg.geometries.size());
  const int workers = std::max(1, cfg.workers);
  for (std::size_t wave = 0; wave < cfg.geometries.size();
       wave += std::size_t(workers)) {
    const std::size_t end =
        std::min(cfg.geometries.size(), wave + std::size_t(workers));
    std::vector<std::future<Result>> futures;
    for (std::size_t g = wave; g < end; ++g)
      futures.push_back(
          std::async(std::launch::async, [&fn, g]() { return fn(g); }));
    for (std::size_t g = wave; g < end; ++g)
      results[g] = futures[g - wave].get();
  }
  return results;
}

}  // namespace

SamplerMode parse_sampler_mode(const std::string& text) {
  if (text == "exact") return SamplerMode::kExact;
  if (text == "noisy") return SamplerMode::kNoisy;
  if (text == "random") return SamplerMode::kRandom;
  if (text == "external") return SamplerMode::kExternal;
  throw std::invalid_argument("unknown sampler mode: " + text);
}

std::string to_string(SamplerMode mode) {
  switch (mode) {
    case SamplerMode::kExact: return "exact";
    case SamplerMode::kNoisy: return "noisy";
    case SamplerMode::kRandom: return "random";
    case SamplerMode::kExternal: return "external";
  }
  return "?";
}

ScanConfig parse_scan_config(std::istream& in) {
  ScanConfig cfg;
  std::string line;
  long line_no = 0;
  GeometryEntry* geometry = nullptr;

  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string trimmed;
    {
      std::istringstream ls(line);
      std::string word;
      while (ls >> word) trimmed += trimmed.empty() ? word : " " + word;
    }
    if (trimmed.empty()) continue;
    if (trimmed == "[geometry]") {
      cfg.geometries.emplace_back();
      geometry = &cfg.geometries.back();
      continue;
    }
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected `key = value`", line_no);
    std::string key = trimmed.substr(0, eq);
    std::string value = trimmed.substr(eq + 1);
    while (!key.empty() && key.back() == ' ') key.pop_back();
    while (!value.empty() && value.front() == ' ') value.erase(value.begin());
    if (key.empty() || value.empty())
      throw ParseError("expected `key = value`", line_no);

    try {
      if (geometry) {
        if (key == "label") geometry->label = value;
        else if (key == "fcidump") geometry->fcidump_path = value;
        else if (key == "t2_file") geometry->t2_path = value;
        else if (key == "samples") geometry->samples_path = value;
        else throw std::invalid_argument("unknown geometry key: " + key);
      } else if (key == "seed") {
        cfg.seed = std::stoull(value);
      } else if (key == "ansatz") {
        if (value == "none")
          cfg.ansatz.reset();
        else
          cfg.ansatz = parse_ansatz_mode(value);
      } else if (key == "t2_source") {
        if (value == "mp2") cfg.t2_source = T2Source::kMp2;
        else if (value == "file") cfg.t2_source = T2Source::kFile;
        else throw std::invalid_argument("t2_source must be mp2 or file");
      } else if (key == "local") {
        cfg.local_couplings = parse_bool(value, key);
      } else if (key == "sampler") {
        cfg.sampler = parse_sampler_mode(value);
      } else if (key == "n_shots") {
        cfg.n_shots = std::stoull(value);
      } else if (key == "support_cutoff") {
        cfg.support_cutoff = std::stod(value);
      } else if (key == "noise_p") {
        cfg.noise.p = std::stod(value);
      } else if (key == "max_flips") {
        cfg.noise.max_flips = std::stoi(value);
      } else if (key == "recovery_iterations") {
        cfg.recovery.iterations = std::stoi(value);
      } else if (key == "hf_fallback") {
        cfg.recovery.hf_fallback = parse_bool(value, key);
      } else if (key == "batches") {
        cfg.recovery.batch.n_batches = std::stoi(value);
      } else if (key == "batch_mode") {
        if (value == "fixed-subspace")
          cfg.recovery.batch.mode = BatchMode::kFixedSubspace;
        else if (value == "fixed-draw")
          cfg.recovery.batch.mode = BatchMode::kFixedDraw;
        else
          throw std::invalid_argument(
              "batch_mode must be fixed-subspace or fixed-draw");
      } else if (key == "subspace_dim") {
        cfg.recovery.batch.subspace_dim = std::stoull(value);
      } else if (key == "n_draw") {
        cfg.recovery.batch.n_draw = std::stoull(value);
      } else if (key == "dim_cap") {
        cfg.recovery.batch.dim_cap = std::stoull(value);
      } else if (key == "pool_beta") {
        cfg.recovery.batch.pool_beta = parse_bool(value, key);
      } else if (key == "output") {
        cfg.output_path = value;
      } else if (key == "bit_order") {
        cfg.bit_order = parse_bit_order(value);
      } else if (key == "random_target") {
        cfg.random_target = std::stoull(value);
      } else if (key == "random_include_hf") {
        cfg.random_include_hf = parse_bool(value, key);
      } else if (key == "state_capacity") {
        cfg.state_capacity = std::stoull(value);
      } else if (key == "workers") {
        cfg.workers = std::stoi(value);
      } else {
        throw std::invalid_argument("unknown config key: " + key);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  if (cfg.geometries.empty())
    throw ParseError("config declares no [geometry] section", line_no);
  for (const auto& g : cfg.geometries)
    if (g.label.empty() || g.fcidump_path.empty())
      throw ParseError("every geometry needs label and fcidump", line_no);
  return cfg;
}

ScanConfig parse_scan_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  return parse_scan_config(in);
}

std::vector<ScanRow> run_scan(const ScanConfig& cfg) {
  auto outputs = run_per_geometry(cfg, [&](std::size_t g) {
    return process_geometry(cfg, cfg.geometries[g], Rng::derive(cfg.seed, g));
  });
  std::vector<ScanRow> rows;
  for (auto& out : outputs)
    for (auto& row : out.rows) rows.push_back(std::move(row));
  return rows;
}

std::vector<SizeRow> report_sizes(const ScanConfig& cfg) {
  auto outputs = run_per_geometry(cfg, [&](std::size_t g) -> SizeRow {
    const auto& geo = cfg.geometries[g];
    SizeRow row;
    row.geometry = geo.label;
    row.mode = mode_descriptor(cfg);
    try {
      const MolecularHamiltonian h = parse_fcidump_file(geo.fcidump_path);
      const SampleSet samples =
          make_samples(cfg, geo, h, Rng::derive(cfg.seed, g));
      row.distinct_samples = samples.distinct();
      std::set<std::uint64_t> pool;
      for (const auto& [key, count] : samples.entries) {
        auto [a, b] = split_raw(RawBitstring{key}, h.n_orbitals());
        pool.insert(a.bits);
        if (cfg.recovery.batch.pool_beta) pool.insert(b.bits);
      }
      row.pooled_strings = pool.size();
      std::vector<SpinString> strings;
      for (std::uint64_t bits : pool) strings.push_back(SpinString{bits});
      row.recombined_dimension =
          recombined_dimension(strings, h.n_alpha(), h.n_beta());
    } catch (const std::exception& e) {
      row.failed = true;
      row.note = e.what();
    }
    return row;
  });
  return outputs;
}

namespace {

void write_config_header(const ScanConfig& cfg, std::ostream& out) {
  out << "# seed = " << cfg.seed << "\n";
  out << "# ansatz = " << (cfg.ansatz ? to_string(*cfg.ansatz) : "none") << "\n";
  out << "# t2_source = "
      << (cfg.t2_source == T2Source::kMp2 ? "mp2" : "file") << "\n";
  out << "# local = " << (cfg.local_couplings ? "true" : "false") << "\n";
  out << "# sampler = " << to_string(cfg.sampler) << "\n";
  out << "# n_shots = " << cfg.n_shots << "\n";
  out << "# support_cutoff = " << cfg.support_cutoff << "\n";
  out << "# noise_p = " << cfg.noise.p << "\n";
  out << "# max_flips = " << cfg.noise.max_flips << "\n";
  out << "# recovery_iterations = " << cfg.recovery.iterations << "\n";
  out << "# hf_fallback = " << (cfg.recovery.hf_fallback ? "true" : "false")
      << "\n";
  out << "# batches = " << cfg.recovery.batch.n_batches << "\n";
  out << "# batch_mode = "
      << (cfg.recovery.batch.mode == BatchMode::kFixedSubspace
              ? "fixed-subspace"
              : "fixed-draw")
      << "\n";
  out << "# subspace_dim = " << cfg.recovery.batch.subspace_dim << "\n";
  out << "# n_draw = " << cfg.recovery.batch.n_draw << "\n";
  out << "# dim_cap = " << cfg.recovery.batch.dim_cap << "\n";
  out << "# pool_beta = " << (cfg.recovery.batch.pool_beta ? "true" : "false")
      << "\n";
  out << "# bit_order = " << bit_order_name(cfg.bit_order) << "\n";
  if (cfg.random_target) out << "# random_target = " << *cfg.random_target << "\n";
  out << "# random_include_hf = "
      << (cfg.random_include_hf ? "true" : "false") << "\n";
}

}  // namespace

void write_scan_csv(const ScanConfig& cfg, const std::vector<ScanRow>& rows,
                    std::ostream& out) {
  write_config_header(cfg, out);
  out << "geometry,mode,iteration,energy,dimension,distinct_physical,"
         "fci_reference,error_vs_reference,note\n";
  char buf[64];
  for (const auto& row : rows) {
    out << row.geometry << ',' << row.mode << ',';
    if (row.failed) {
      out << ",,,,,," << row.note << "\n";
      continue;
    }
    out << row.iteration << ',';
    std::snprintf(buf, sizeof buf, "%.12f", row.energy);
    out << buf << ',' << row.dimension << ',' << row.distinct_physical << ',';
    if (row.fci_reference) {
      std::snprintf(buf, sizeof buf, "%.12f", *row.fci_reference);
      out << buf;
    }
    out << ',';
    if (row.error_vs_reference) {
      std::snprintf(buf, sizeof buf, "%.6e", *row.error_vs_reference);
      out << buf;
    }
    out << ',' << row.note << "\n";
  }
}

void write_sizes_csv(const ScanConfig& cfg, const std::vector<SizeRow>& rows,
                     std::ostream& out) {
  write_config_header(cfg, out);
  out << "geometry,mode,distinct_samples,pooled_strings,recombined_dimension,"
         "note\n";
  for (const auto& row : rows) {
    out << row.geometry << ',' << row.mode << ',';
    if (row.failed) {
      out << ",,," << row.note << "\n";
      continue;
    }
    out << row.distinct_samples << ',' << row.pooled_strings << ','
        << row.recombined_dimension << ',' << row.note << "\n";
  }
}

}  // namespace qsci
