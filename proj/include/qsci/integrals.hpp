// Copyright 2026 The qsci-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

namespace qsci {

/// Molecular Hamiltonian in a spatial-orbital basis (hartree units).
///
/// Two-electron integrals (pq|rs) are kept in chemists' notation with full
/// 8-fold permutational symmetry, stored once per canonical index quadruple
/// (lexicographically smallest of the eight permutations).
class MolecularHamiltonian {
 public:
  MolecularHamiltonian() = default;
  MolecularHamiltonian(int n_orbitals, int n_alpha, int n_beta);

  int n_orbitals() const noexcept { return n_orbitals_; }
  int n_alpha() const noexcept { return n_alpha_; }
  int n_beta() const noexcept { return n_beta_; }
  double core_energy() const noexcept { return e_core_; }
  void set_core_energy(double e) noexcept { e_core_ = e; }

  /// One-electron integral h_pq; setter enforces h_pq == h_qp.
  double one_body(int p, int q) const;
  void set_one_body(int p, int q, double value);
  const Eigen::MatrixXd& one_body_matrix() const noexcept { return h_; }

  /// Two-electron integral (pq|rs); any of the 8 equivalent index orders.
  double two_body(int p, int q, int r, int s) const;
  void set_two_body(int p, int q, int r, int s, double value);

  /// Number of stored canonical two-electron entries.
  std::size_t two_body_size() const noexcept { return g_.size(); }

  /// Stored canonical entries as (p,q,r,s,value), sorted by index quadruple.
  std::vector<std::tuple<int, int, int, int, double>> two_body_entries() const;

  bool operator==(const MolecularHamiltonian& other) const;

  static std::uint32_t canonical_key(int p, int q, int r, int s) noexcept;

 private:
  void check_index(int p) const;

  int n_orbitals_ = 0;
  int n_alpha_ = 0;
  int n_beta_ = 0;
  double e_core_ = 0.0;
  Eigen::MatrixXd h_;
  std::unordered_map<std::uint32_t, double> g_;
};

/// Restricted doubles amplitudes t[i][j][a][b] over occupied (i,j) and
/// virtual (a,b) spatial orbitals, with t[i][j][a][b] == t[j][i][b][a].
class T2Tensor {
 public:
  T2Tensor() = default;
  T2Tensor(int n_occ, int n_virt);

  int n_occ() const noexcept { return n_occ_; }
  int n_virt() const noexcept { return n_virt_; }

  double operator()(int i, int j, int a, int b) const;
  /// Sets t[i][j][a][b] and the exchange-symmetric partner t[j][i][b][a].
  void set(int i, int j, int a, int b, double value);

  double max_abs() const;
  bool operator==(const T2Tensor& other) const;

 private:
  std::size_t index(int i, int j, int a, int b) const;

  int n_occ_ = 0;
  int n_virt_ = 0;
  std::vector<double> t_;
};

/// Raised on malformed input files; carries the offending line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, long line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  long line() const noexcept { return line_; }

 private:
  long line_;
};

/// Reads an FCIDUMP stream: a &FCI header carrying NORB/NELEC/MS2 followed
/// by free-format `value p q r s` lines with 1-based indices. Entries with
/// all indices zero set the core energy, r=s=0 entries the one-electron
/// part, fully indexed entries the two-electron part. Duplicate entries
/// that disagree by more than 1e-12 are an error.
MolecularHamiltonian parse_fcidump(std::istream& in);
MolecularHamiltonian parse_fcidump_file(const std::string& path);

/// Writes the canonical symmetry-reduced form; parse(write(H)) == H.
void write_fcidump(const MolecularHamiltonian& h, std::ostream& out);

/// Diagonal Fock elements eps_p = h_pp + sum_i [2(pp|ii) - (pi|ip)], i over
/// the n_alpha lowest orbitals. Assumes the stored orbitals are canonical
/// RHF orbitals; FCIDUMP does not carry orbital energies.
Eigen::VectorXd fock_diagonal(const MolecularHamiltonian& h);

/// First-order doubles amplitudes t_ijab = (ia|jb) / (e_i + e_j - e_a - e_b).
/// Throws if any denominator magnitude falls below `threshold`.
T2Tensor mp2_t2(const MolecularHamiltonian& h, const Eigen::VectorXd& eps,
                double threshold = 1e-8);

/// Reads the `n_occ=<n> n_virt=<m>` header followed by `i j a b value`
/// lines (0-based). Unlisted entries are zero; the exchange-symmetric
/// partner is filled automatically; conflicts beyond 1e-12 are an error.
T2Tensor parse_t2(std::istream& in);
T2Tensor parse_t2_file(const std::string& path);

void write_t2(const T2Tensor& t2, std::ostream& out);

}  // namespace qsci
