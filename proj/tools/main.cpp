// Copyright 2026 The qsci-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "qsci/lucj.hpp"
#include "qsci/recovery.hpp"
#include "qsci/rng.hpp"
#include "qsci/scan.hpp"

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

qsci::BitOrder bit_order_from(const std::string& name) {
  if (name == "beta-high") return qsci::BitOrder::kBetaHigh;
  if (name == "alpha-high") return qsci::BitOrder::kAlphaHigh;
  throw CLI::ValidationError("--bit-order must be beta-high or alpha-high");
}

int run_scan_command(const std::string& config_path,
                     const std::string& output_override, bool sizes_only) {
  qsci::ScanConfig cfg = qsci::parse_scan_config_file(config_path);
  std::string out_path =
      output_override.empty() ? cfg.output_path : output_override;
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file = open_output(out_path);
    out = &file;
  }
  if (sizes_only) {
    qsci::write_sizes_csv(cfg, qsci::report_sizes(cfg), *out);
  } else {
    qsci::write_scan_csv(cfg, qsci::run_scan(cfg), *out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qsci-lab: selected-CI subspaces from sampled, noisy, or random "
      "determinant sets"};
  app.require_subcommand(1);

  // ----- scan / sizes -------------------------------------------------------
  std::string config_path, output_override;
  auto* scan = app.add_subcommand(
      "scan", "Run the dissociation-scan pipeline from a config file");
  scan->add_option("--config", config_path, "Scan configuration file")
      ->required()
      ->check(CLI::ExistingFile);
  scan->add_option("--output", output_override,
                   "Output CSV path (overrides the config's `output`)");

  auto* sizes = app.add_subcommand(
      "sizes", "Report sample/subspace size metrics without diagonalizing");
  sizes->add_option("--config", config_path, "Scan configuration file")
      ->required()
      ->check(CLI::ExistingFile);
  sizes->add_option("--output", output_override, "Output CSV path");

  // ----- fci ----------------------------------------------------------------
  std::string fcidump_path;
  std::uint64_t fci_capacity = 4'000'000;
  auto* fci = app.add_subcommand("fci", "Full-CI reference energy");
  fci->add_option("--fcidump", fcidump_path, "FCIDUMP file")
      ->required()
      ->check(CLI::ExistingFile);
  fci->add_option("--capacity", fci_capacity,
                  "Largest full-space dimension accepted", true);

  // ----- sample -------------------------------------------------------------
  std::string state_mode = "2Lp", t2_source = "mp2", t2_file, params_file;
  std::string sample_out, bit_order_name = "beta-high";
  std::uint64_t n_shots = 0, seed = 0;
  double noise_p = -1.0, support_cutoff = 1e-12;
  int max_flips = 0;
  bool nonlocal = false;
  auto* sample = app.add_subcommand(
      "sample", "Build an ansatz state and write a sample set");
  sample->add_option("--fcidump", fcidump_path, "FCIDUMP file")
      ->required()
      ->check(CLI::ExistingFile);
  sample->add_option("--state", state_mode, "Ansatz state: 1L, 2L, or 2Lp",
                     true);
  sample->add_option("--t2", t2_source, "t2 source: mp2 or file", true);
  sample->add_option("--t2-file", t2_file, "Doubles-amplitude file");
  sample->add_option("--params", params_file,
                     "LUCJ parameter file (bypasses the t2 mapping)");
  sample->add_flag("--nonlocal", nonlocal,
                   "Skip the nearest-neighbor/on-site coupling restriction");
  sample->add_option("--shots", n_shots,
                     "Shot count; 0 enumerates the full support", true);
  sample->add_option("--support-cutoff", support_cutoff,
                     "|c|^2 cutoff for --shots 0", true);
  sample->add_option("--noise-p", noise_p,
                     "Apply the flip-chain noise model with this p");
  sample->add_option("--max-flips", max_flips,
                     "Flip cap per parent (0: 16N default)", true);
  sample->add_option("--seed", seed, "RNG seed", true);
  sample->add_option("--bit-order", bit_order_name,
                     "Sample-file bit order: beta-high or alpha-high", true);
  sample->add_option("--out", sample_out, "Output sample file")->required();

  // ----- recover ------------------------------------------------------------
  std::string samples_path, recover_out, batch_csv;
  int iters = 5, batches = 10;
  std::string batch_mode = "fixed-subspace";
  std::uint64_t subspace_dim = 0, n_draw = 0;
  bool hf_fallback = false;
  auto* recover = app.add_subcommand(
      "recover", "Run configuration recovery on a sample file");
  recover->add_option("--samples", samples_path, "Sample file")
      ->required()
      ->check(CLI::ExistingFile);
  recover->add_option("--fcidump", fcidump_path, "FCIDUMP file")
      ->required()
      ->check(CLI::ExistingFile);
  recover->add_option("--iters", iters, "Recovery iterations", true);
  recover->add_option("--seed", seed, "RNG seed", true);
  recover->add_option("--batches", batches, "Batches per iteration", true);
  recover->add_option("--mode", batch_mode,
                      "Batch mode: fixed-subspace or fixed-draw", true);
  recover->add_option("--subspace-dim", subspace_dim,
                      "Target dimension d (fixed-subspace)");
  recover->add_option("--n-draw", n_draw, "Draws per batch (fixed-draw)");
  recover->add_flag("--hf-fallback", hf_fallback,
                    "Seed with the HF determinant when nothing is physical");
  recover->add_option("--bit-order", bit_order_name,
                      "Sample-file bit order", true);
  recover->add_option("--out", recover_out, "Trace CSV path (default stdout)");
  recover->add_option("--batch-csv", batch_csv,
                      "Write the final iteration's batch summary here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (scan->parsed()) return run_scan_command(config_path, output_override, false);
    if (sizes->parsed()) return run_scan_command(config_path, output_override, true);

    if (fci->parsed()) {
      qsci::FciOptions opts;
      opts.capacity = fci_capacity;
      const auto h = qsci::parse_fcidump_file(fcidump_path);
      const auto result = qsci::full_ci(h, opts);
      std::printf("dimension %zu\nenergy %.12f\n", result.dimension,
                  result.energy);
      return 0;
    }

    if (sample->parsed()) {
      const auto h = qsci::parse_fcidump_file(fcidump_path);
      const auto mode = qsci::parse_ansatz_mode(state_mode);
      qsci::LucjParams params;
      if (!params_file.empty()) {
        params = qsci::parse_lucj_params_file(params_file);
      } else {
        qsci::T2Tensor t2;
        if (t2_source == "mp2") {
          t2 = qsci::mp2_t2(h, qsci::fock_diagonal(h));
        } else if (t2_source == "file") {
          if (t2_file.empty())
            throw std::runtime_error("--t2 file needs --t2-file");
          t2 = qsci::parse_t2_file(t2_file);
        } else {
          throw std::runtime_error("--t2 must be mp2 or file");
        }
        params = qsci::params_from_t2(t2, mode == qsci::AnsatzMode::k1L ? 1 : 2,
                                      !nonlocal);
      }
      const auto alpha = qsci::enumerate_strings(h.n_orbitals(), h.n_alpha());
      const auto beta = qsci::enumerate_strings(h.n_orbitals(), h.n_beta());
      if (alpha.size() * beta.size() > 12'000'000)
        throw std::runtime_error(
            "ansatz state would need " +
            std::to_string(alpha.size() * beta.size()) +
            " amplitudes; this exceeds the exact-state capacity");
      const auto state = qsci::build_state(h, params, mode);
      auto set = n_shots > 0
                     ? qsci::sample_exact(state, h.n_orbitals(), n_shots,
                                          qsci::Rng::derive(seed, 11))
                     : qsci::support_set(state, h.n_orbitals(), support_cutoff);
      if (noise_p >= 0.0) {
        qsci::NoiseConfig noise;
        noise.p = noise_p;
        noise.max_flips = max_flips;
        noise.seed = qsci::Rng::derive(seed, 12);
        set = qsci::apply_noise(set, noise);
      }
      qsci::write_samples_file(set, h.n_orbitals(), sample_out,
                               bit_order_from(bit_order_name));
      std::printf("wrote %zu distinct keys (%llu counts) to %s\n",
                  set.distinct(),
                  static_cast<unsigned long long>(set.total_counts()),
                  sample_out.c_str());
      return 0;
    }

    if (recover->parsed()) {
      const auto h = qsci::parse_fcidump_file(fcidump_path);
      const auto set = qsci::read_samples_file(samples_path, h.n_orbitals(),
                                               bit_order_from(bit_order_name));
      qsci::RecoveryConfig cfg;
      cfg.iterations = iters;
      cfg.seed = seed;
      cfg.hf_fallback = hf_fallback;
      cfg.batch.n_batches = batches;
      if (batch_mode == "fixed-subspace") {
        cfg.batch.mode = qsci::BatchMode::kFixedSubspace;
        cfg.batch.subspace_dim = subspace_dim;
      } else if (batch_mode == "fixed-draw") {
        cfg.batch.mode = qsci::BatchMode::kFixedDraw;
        cfg.batch.n_draw = n_draw;
      } else {
        throw std::runtime_error("--mode must be fixed-subspace or fixed-draw");
      }
      const auto records = qsci::recover_loop(set, h, cfg);
      if (recover_out.empty()) {
        qsci::write_recovery_csv(records, std::cout);
      } else {
        auto out = open_output(recover_out);
        qsci::write_recovery_csv(records, out);
      }
      if (!batch_csv.empty()) {
        // Re-run the final iteration's batches for the summary file.
        qsci::BatchConfig bc = cfg.batch;
        bc.seed = qsci::Rng::derive(
            qsci::Rng::derive(cfg.seed, std::uint64_t(records.back().iteration)),
            1);
        auto out = open_output(batch_csv);
        qsci::write_batch_csv(
            qsci::run_batches(records.back().working_set, h, bc), out);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
