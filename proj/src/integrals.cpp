// Copyright 2026 The qsci-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "qsci/integrals.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qsci {

namespace {

constexpr double kDuplicateTol = 1e-12;

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// MolecularHamiltonian

MolecularHamiltonian::MolecularHamiltonian(int n_orbitals, int n_alpha,
                                           int n_beta)
    : n_orbitals_(n_orbitals), n_alpha_(n_alpha), n_beta_(n_beta) {
  if (n_orbitals < 1) throw std::invalid_argument("n_orbitals must be positive");
  if (n_alpha < 1 || n_alpha > n_orbitals || n_beta < 1 || n_beta > n_orbitals)
    throw std::invalid_argument("electron counts must lie in (0, n_orbitals]");
  h_ = Eigen::MatrixXd::Zero(n_orbitals, n_orbitals);
}

void MolecularHamiltonian::check_index(int p) const {
  if (p < 0 || p >= n_orbitals_)
    throw std::out_of_range("orbital index " + std::to_string(p) +
                            " outside [0, " + std::to_string(n_orbitals_) + ")");
}

double MolecularHamiltonian::one_body(int p, int q) const {
  check_index(p);
  check_index(q);
  return h_(p, q);
}

void MolecularHamiltonian::set_one_body(int p, int q, double value) {
  check_index(p);
  check_index(q);
  h_(p, q) = value;
  h_(q, p) = value;
}

std::uint32_t MolecularHamiltonian::canonical_key(int p, int q, int r,
                                                  int s) noexcept {
  // Lexicographically smallest of the eight permutations
  // (pq|rs)=(qp|rs)=(pq|sr)=(qp|sr)=(rs|pq)=(sr|pq)=(rs|qp)=(sr|qp).
  auto pack = [](int a, int b, int c, int d) {
    return (std::uint32_t(a) << 24) | (std::uint32_t(b) << 16) |
           (std::uint32_t(c) << 8) | std::uint32_t(d);
  };
  if (p > q) std::swap(p, q);
  if (r > s) std::swap(r, s);
  if (p > r || (p == r && q > s)) {
    std::swap(p, r);
    std::swap(q, s);
  }
  return pack(p, q, r, s);
}

double MolecularHamiltonian::two_body(int p, int q, int r, int s) const {
  check_index(p);
  check_index(q);
  check_index(r);
  check_index(s);
  auto it = g_.find(canonical_key(p, q, r, s));
  return it == g_.end() ? 0.0 : it->second;
}

void MolecularHamiltonian::set_two_body(int p, int q, int r, int s,
                                        double value) {
  check_index(p);
  check_index(q);
  check_index(r);
  check_index(s);
  g_[canonical_key(p, q, r, s)] = value;
}

std::vector<std::tuple<int, int, int, int, double>>
MolecularHamiltonian::two_body_entries() const {
  std::vector<std::tuple<int, int, int, int, double>> out;
  out.reserve(g_.size());
  for (const auto& [key, value] : g_) {
    out.emplace_back(int(key >> 24) & 0xff, int(key >> 16) & 0xff,
                     int(key >> 8) & 0xff, int(key) & 0xff, value);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool MolecularHamiltonian::operator==(const MolecularHamiltonian& other) const {
  return n_orbitals_ == other.n_orbitals_ && n_alpha_ == other.n_alpha_ &&
         n_beta_ == other.n_beta_ && e_core_ == other.e_core_ &&
         h_ == other.h_ && g_ == other.g_;
}

// ---------------------------------------------------------------------------
// T2Tensor

T2Tensor::T2Tensor(int n_occ, int n_virt) : n_occ_(n_occ), n_virt_(n_virt) {
  if (n_occ < 0 || n_virt < 0)
    throw std::invalid_argument("t2 dimensions must be nonnegative");
  t_.assign(std::size_t(n_occ) * n_occ * n_virt * n_virt, 0.0);
}

std::size_t T2Tensor::index(int i, int j, int a, int b) const {
  if (i < 0 || i >= n_occ_ || j < 0 || j >= n_occ_)
    throw std::out_of_range("t2 occupied index out of range");
  if (a < 0 || a >= n_virt_ || b < 0 || b >= n_virt_)
    throw std::out_of_range("t2 virtual index out of range");
  return ((std::size_t(i) * n_occ_ + j) * n_virt_ + a) * n_virt_ + b;
}

double T2Tensor::operator()(int i, int j, int a, int b) const {
  return t_[index(i, j, a, b)];
}

void T2Tensor::set(int i, int j, int a, int b, double value) {
  t_[index(i, j, a, b)] = value;
  t_[index(j, i, b, a)] = value;
}

double T2Tensor::max_abs() const {
  double m = 0.0;
  for (double v : t_) m = std::max(m, std::abs(v));
  return m;
}

bool T2Tensor::operator==(const T2Tensor& other) const {
  return n_occ_ == other.n_occ_ && n_virt_ == other.n_virt_ && t_ == other.t_;
}

// ---------------------------------------------------------------------------
// FCIDUMP

namespace {

struct FcidumpHeader {
  int norb = -1;
  int nelec = -1;
  int ms2 = 0;
  long last_line = 0;
};

// Header: everything from &FCI up to &END (or a bare / or $END). Key=value
// pairs may be separated by commas, spaces, or newlines.
FcidumpHeader read_header(std::istream& in) {
  FcidumpHeader hdr;
  std::string text;
  std::string line;
  long line_no = 0;
  bool open = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string u = upper(line);
    if (!open) {
      if (u.find("&FCI") == std::string::npos)
        throw ParseError("FCIDUMP header must start with &FCI", line_no);
      open = true;
    }
    text += ' ' + u;
    if (u.find("&END") != std::string::npos ||
        u.find("$END") != std::string::npos ||
        u.find('/') != std::string::npos) {
      hdr.last_line = line_no;
      break;
    }
  }
  if (!open || hdr.last_line == 0)
    throw ParseError("unterminated FCIDUMP header", line_no);

  auto read_int = [&](const std::string& key, int& dst, bool required) {
    auto pos = text.find(key);
    if (pos == std::string::npos) {
      if (required) throw ParseError("header is missing " + key, hdr.last_line);
      return;
    }
    pos += key.size();
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '='))
      ++pos;
    dst = std::atoi(text.c_str() + pos);
  };
  read_int("NORB", hdr.norb, true);
  read_int("NELEC", hdr.nelec, true);
  read_int("MS2", hdr.ms2, false);
  if (hdr.norb < 1 || hdr.norb > 32)
    throw ParseError("NORB must lie in [1, 32]", hdr.last_line);
  if (hdr.nelec < 1) throw ParseError("NELEC must be positive", hdr.last_line);
  if ((hdr.nelec + hdr.ms2) % 2 != 0 || hdr.nelec - std::abs(hdr.ms2) < 0)
    throw ParseError("NELEC and MS2 are inconsistent", hdr.last_line);
  return hdr;
}

}  // namespace

MolecularHamiltonian parse_fcidump(std::istream& in) {
  FcidumpHeader hdr = read_header(in);
  const int n_alpha = (hdr.nelec + hdr.ms2) / 2;
  const int n_beta = (hdr.nelec - hdr.ms2) / 2;
  if (n_alpha < 1 || n_alpha > hdr.norb || n_beta < 1 || n_beta > hdr.norb)
    throw ParseError("electron counts outside (0, NORB]", hdr.last_line);

  MolecularHamiltonian ham(hdr.norb, n_alpha, n_beta);
  // Parse state for duplicate detection: first value seen per slot.
  std::unordered_map<std::uint32_t, double> g_seen;
  Eigen::MatrixXd h_set = Eigen::MatrixXd::Constant(
      hdr.norb, hdr.norb, std::numeric_limits<double>::quiet_NaN());
  bool core_set = false;

  std::string line;
  long line_no = hdr.last_line;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    double value;
    if (!(ls >> value)) {
      // Skip blank lines; anything else is malformed.
      std::string rest;
      if (ls.clear(), ls >> rest)
        throw ParseError("expected `value p q r s`", line_no);
      continue;
    }
    int p, q, r, s;
    if (!(ls >> p >> q >> r >> s))
      throw ParseError("expected four indices after the value", line_no);
    for (int idx : {p, q, r, s})
      if (idx < 0 || idx > hdr.norb)
        throw ParseError("index " + std::to_string(idx) + " outside [0, NORB]",
                         line_no);

    if (p == 0 && q == 0 && r == 0 && s == 0) {
      if (core_set && std::abs(ham.core_energy() - value) > kDuplicateTol)
        throw ParseError("conflicting core-energy entries", line_no);
      ham.set_core_energy(value);
      core_set = true;
    } else if (r == 0 && s == 0) {
      if (p == 0 || q == 0)
        throw ParseError("one-electron entry needs two nonzero indices",
                         line_no);
      const int a = std::min(p, q) - 1, b = std::max(p, q) - 1;
      if (!std::isnan(h_set(a, b)) && std::abs(h_set(a, b) - value) > kDuplicateTol)
        throw ParseError("conflicting one-electron entries", line_no);
      h_set(a, b) = value;
      ham.set_one_body(a, b, value);
    } else if (p != 0 && q != 0 && r != 0 && s != 0) {
      const auto key =
          MolecularHamiltonian::canonical_key(p - 1, q - 1, r - 1, s - 1);
      auto [it, inserted] = g_seen.emplace(key, value);
      if (!inserted && std::abs(it->second - value) > kDuplicateTol)
        throw ParseError("conflicting two-electron entries", line_no);
      ham.set_two_body(p - 1, q - 1, r - 1, s - 1, value);
    } else {
      throw ParseError("mixed zero/nonzero index pattern", line_no);
    }
  }
  return ham;
}

MolecularHamiltonian parse_fcidump_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open FCIDUMP file: " + path);
  return parse_fcidump(in);
}

void write_fcidump(const MolecularHamiltonian& h, std::ostream& out) {
  const int n = h.n_orbitals();
  out << "&FCI NORB=" << n << ",NELEC=" << h.n_alpha() + h.n_beta()
      << ",MS2=" << h.n_alpha() - h.n_beta() << ",\n ORBSYM=";
  for (int p = 0; p < n; ++p) out << "1,";
  out << "\n ISYM=1,\n&END\n";
  char buf[64];
  auto emit = [&](double v, int p, int q, int r, int s) {
    std::snprintf(buf, sizeof buf, "%24.16E %3d %3d %3d %3d\n", v, p, q, r, s);
    out << buf;
  };
  for (const auto& [p, q, r, s, v] : h.two_body_entries())
    if (v != 0.0) emit(v, p + 1, q + 1, r + 1, s + 1);
  for (int p = 0; p < n; ++p)
    for (int q = p; q < n; ++q)
      if (h.one_body(p, q) != 0.0) emit(h.one_body(p, q), p + 1, q + 1, 0, 0);
  emit(h.core_energy(), 0, 0, 0, 0);
}

// ---------------------------------------------------------------------------
// Orbital energies and doubles amplitudes

Eigen::VectorXd fock_diagonal(const MolecularHamiltonian& h) {
  const int n = h.n_orbitals();
  Eigen::VectorXd eps(n);
  for (int p = 0; p < n; ++p) {
    double e = h.one_body(p, p);
    for (int i = 0; i < h.n_alpha(); ++i)
      e += 2.0 * h.two_body(p, p, i, i) - h.two_body(p, i, i, p);
    eps[p] = e;
  }
  return eps;
}

T2Tensor mp2_t2(const MolecularHamiltonian& h, const Eigen::VectorXd& eps,
                double threshold) {
  const int n_occ = h.n_alpha();
  const int n_virt = h.n_orbitals() - n_occ;
  if (eps.size() != h.n_orbitals())
    throw std::invalid_argument("orbital energy vector has wrong length");
  T2Tensor t2(n_occ, n_virt);
  for (int i = 0; i < n_occ; ++i)
    for (int j = 0; j < n_occ; ++j)
      for (int a = 0; a < n_virt; ++a)
        for (int b = 0; b < n_virt; ++b) {
          const double denom = eps[i] + eps[j] - eps[n_occ + a] - eps[n_occ + b];
          if (std::abs(denom) < threshold)
            throw std::runtime_error(
                "degenerate orbital denominator at (i,j,a,b) = (" +
                std::to_string(i) + "," + std::to_string(j) + "," +
                std::to_string(a) + "," + std::to_string(b) + ")");
          t2.set(i, j, a, b,
                 h.two_body(i, n_occ + a, j, n_occ + b) / denom);
        }
  return t2;
}

// ---------------------------------------------------------------------------
// t2 text format

T2Tensor parse_t2(std::istream& in) {
  std::string line;
  long line_no = 0;
  int n_occ = -1, n_virt = -1;
  // Header: first non-comment line `n_occ=<n> n_virt=<m>`.
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (std::sscanf(line.c_str(), "n_occ=%d n_virt=%d", &n_occ, &n_virt) != 2)
      throw ParseError("expected header `n_occ=<n> n_virt=<m>`", line_no);
    break;
  }
  if (n_occ < 0 || n_virt < 0)
    throw ParseError("missing t2 header", line_no);

  T2Tensor t2(n_occ, n_virt);
  std::vector<char> seen(std::size_t(n_occ) * n_occ * n_virt * n_virt, 0);
  auto flat = [&](int i, int j, int a, int b) {
    return ((std::size_t(i) * n_occ + j) * n_virt + a) * n_virt + b;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    int i, j, a, b;
    double value;
    if (!(ls >> i >> j >> a >> b >> value))
      throw ParseError("expected `i j a b value`", line_no);
    if (i < 0 || i >= n_occ || j < 0 || j >= n_occ)
      throw ParseError("occupied index out of declared range", line_no);
    if (a < 0 || a >= n_virt || b < 0 || b >= n_virt)
      throw ParseError("virtual index out of declared range", line_no);
    for (auto [ii, jj, aa, bb] :
         {std::array{i, j, a, b}, std::array{j, i, b, a}}) {
      if (seen[flat(ii, jj, aa, bb)] &&
          std::abs(t2(ii, jj, aa, bb) - value) > kDuplicateTol)
        throw ParseError("exchange-symmetry conflict", line_no);
      seen[flat(ii, jj, aa, bb)] = 1;
    }
    t2.set(i, j, a, b, value);
  }
  return t2;
}

T2Tensor parse_t2_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open t2 file: " + path);
  return parse_t2(in);
}

void write_t2(const T2Tensor& t2, std::ostream& out) {
  out << "n_occ=" << t2.n_occ() << " n_virt=" << t2.n_virt() << "\n";
  char buf[96];
  for (int i = 0; i < t2.n_occ(); ++i)
    for (int j = 0; j < t2.n_occ(); ++j)
      for (int a = 0; a < t2.n_virt(); ++a)
        for (int b = 0; b < t2.n_virt(); ++b) {
          // Skip the exchange partner of an entry already written.
          if (std::make_pair(i * t2.n_virt() + a, j * t2.n_virt() + b) >
              std::make_pair(j * t2.n_virt() + b, i * t2.n_virt() + a))
            continue;
          const double v = t2(i, j, a, b);
          if (v == 0.0) continue;
          std::snprintf(buf, sizeof buf, "%d %d %d %d %.16e\n", i, j, a, b, v);
          out << buf;
        }
}

}  // namespace qsci
