// Copyright 2026 The qsci-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "oracles.hpp"

#include <bit>
#include <map>
#include <stdexcept>

#include "qsci/rng.hpp"

namespace qsci::oracle {

std::optional<OpKet> annihilate(std::uint64_t bits, int spin_orbital) {
  const std::uint64_t mask = std::uint64_t{1} << spin_orbital;
  if (!(bits & mask)) return std::nullopt;
  const int below = std::popcount(bits & (mask - 1));
  return OpKet{bits ^ mask, (below % 2) ? -1 : 1};
}

std::optional<OpKet> create(std::uint64_t bits, int spin_orbital) {
  const std::uint64_t mask = std::uint64_t{1} << spin_orbital;
  if (bits & mask) return std::nullopt;
  const int below = std::popcount(bits & (mask - 1));
  return OpKet{bits | mask, (below % 2) ? -1 : 1};
}

Eigen::MatrixXd operator_matrix(const MolecularHamiltonian& h,
                                const std::vector<Determinant>& space) {
  const int n = h.n_orbitals();
  std::map<std::uint64_t, std::size_t> index;
  for (std::size_t i = 0; i < space.size(); ++i)
    index[to_raw(space[i], n).bits] = i;

  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(space.size(), space.size());
  auto so = [n](int p, int sigma) { return sigma == 0 ? p : n + p; };

  for (std::size_t col = 0; col < space.size(); ++col) {
    const std::uint64_t ket = to_raw(space[col], n).bits;
    std::map<std::uint64_t, double> image;
    image[ket] += h.core_energy();

    // One-body: h_pq a+_{p s} a_{q s}.
    for (int sigma = 0; sigma < 2; ++sigma)
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
          const double hpq = h.one_body(p, q);
          if (hpq == 0.0) continue;
          auto k1 = annihilate(ket, so(q, sigma));
          if (!k1) continue;
          auto k2 = create(k1->bits, so(p, sigma));
          if (!k2) continue;
          image[k2->bits] += hpq * k1->sign * k2->sign;
        }

    // Two-body: 1/2 (pq|rs) a+_{p s} a+_{r t} a_{s t} a_{q s}.
    for (int sigma = 0; sigma < 2; ++sigma)
      for (int tau = 0; tau < 2; ++tau)
        for (int p = 0; p < n; ++p)
          for (int q = 0; q < n; ++q)
            for (int r = 0; r < n; ++r)
              for (int s = 0; s < n; ++s) {
                const double g = h.two_body(p, q, r, s);
                if (g == 0.0) continue;
                auto k1 = annihilate(ket, so(q, sigma));
                if (!k1) continue;
                auto k2 = annihilate(k1->bits, so(s, tau));
                if (!k2) continue;
                auto k3 = create(k2->bits, so(r, tau));
                if (!k3) continue;
                auto k4 = create(k3->bits, so(p, sigma));
                if (!k4) continue;
                image[k4->bits] +=
                    0.5 * g * k1->sign * k2->sign * k3->sign * k4->sign;
              }

    for (const auto& [bits, value] : image) {
      auto it = index.find(bits);
      if (it != index.end()) out(it->second, col) += value;
    }
  }
  return out;
}

namespace {

Eigen::MatrixXcd sector_minors(const std::vector<SpinString>& strings,
                               const Eigen::MatrixXcd& u, int n_orbitals) {
  const std::size_t m = strings.size();
  std::vector<std::vector<int>> occ(m);
  for (std::size_t i = 0; i < m; ++i)
    occ[i] = occupied_orbitals(strings[i], n_orbitals);

  Eigen::MatrixXcd minors(m, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i) {
      const auto& rows = occ[j];
      const auto& cols = occ[i];
      Eigen::MatrixXcd sub(rows.size(), cols.size());
      for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = 0; b < cols.size(); ++b)
          sub(a, b) = u(rows[a], cols[b]);
      minors(j, i) = sub.rows() == 0 ? std::complex<double>(1.0)
                                     : sub.determinant();
    }
  return minors;
}

}  // namespace

CIVector minor_rotation(const CIVector& state, const Eigen::MatrixXcd& u,
                        int n_orbitals, int n_alpha, int n_beta) {
  const auto alpha_strings = enumerate_strings(n_orbitals, n_alpha);
  const auto beta_strings = enumerate_strings(n_orbitals, n_beta);
  const std::size_t ma = alpha_strings.size(), mb = beta_strings.size();

  auto string_index = [](const std::vector<SpinString>& strings, SpinString s) {
    const auto it = std::lower_bound(strings.begin(), strings.end(), s);
    if (it == strings.end() || *it != s)
      throw std::invalid_argument("string outside the sector basis");
    return std::size_t(it - strings.begin());
  };

  Eigen::MatrixXcd amps = Eigen::MatrixXcd::Zero(ma, mb);
  for (std::size_t i = 0; i < state.space.size(); ++i)
    amps(string_index(alpha_strings, state.space[i].alpha),
         string_index(beta_strings, state.space[i].beta)) +=
        state.amplitudes[i];

  const Eigen::MatrixXcd minors_a = sector_minors(alpha_strings, u, n_orbitals);
  const Eigen::MatrixXcd minors_b = sector_minors(beta_strings, u, n_orbitals);
  const Eigen::MatrixXcd rotated = minors_a * amps * minors_b.transpose();

  CIVector out;
  out.space.reserve(ma * mb);
  out.amplitudes.resize(Eigen::Index(ma * mb));
  Eigen::Index k = 0;
  for (std::size_t ia = 0; ia < ma; ++ia)
    for (std::size_t ib = 0; ib < mb; ++ib) {
      out.space.push_back(Determinant{alpha_strings[ia], beta_strings[ib]});
      out.amplitudes[k++] = rotated(ia, ib);
    }
  return out;
}

MolecularHamiltonian random_hamiltonian(int n_orbitals, int n_alpha, int n_beta,
                                        std::uint64_t seed) {
  Rng rng(seed);
  auto draw = [&]() { return 2.0 * rng.uniform() - 1.0; };
  MolecularHamiltonian h(n_orbitals, n_alpha, n_beta);
  h.set_core_energy(draw());
  for (int p = 0; p < n_orbitals; ++p)
    for (int q = p; q < n_orbitals; ++q) h.set_one_body(p, q, draw());
  // One value per canonical quadruple; the setter spreads it over all eight
  // permutations.
  for (int p = 0; p < n_orbitals; ++p)
    for (int q = p; q < n_orbitals; ++q)
      for (int r = p; r < n_orbitals; ++r)
        for (int s = r; s < n_orbitals; ++s) {
          if (p == r && s < q) continue;
          h.set_two_body(p, q, r, s, 0.5 * draw());
        }
  return h;
}

CIVector random_state(int n_orbitals, int n_alpha, int n_beta,
                      std::uint64_t seed) {
  const auto alpha_strings = enumerate_strings(n_orbitals, n_alpha);
  const auto beta_strings = enumerate_strings(n_orbitals, n_beta);
  Rng rng(seed);
  CIVector out;
  out.amplitudes.resize(
      Eigen::Index(alpha_strings.size() * beta_strings.size()));
  Eigen::Index k = 0;
  for (const auto& a : alpha_strings)
    for (const auto& b : beta_strings) {
      out.space.push_back(Determinant{a, b});
      out.amplitudes[k++] = std::complex<double>(2.0 * rng.uniform() - 1.0,
                                                 2.0 * rng.uniform() - 1.0);
    }
  out.normalize();
  return out;
}

Eigen::MatrixXcd random_generator(int n_orbitals, std::uint64_t seed,
                                  double scale) {
  Rng rng(seed);
  Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(n_orbitals, n_orbitals);
  for (int p = 0; p < n_orbitals; ++p) {
    k(p, p) = std::complex<double>(0.0, scale * (2.0 * rng.uniform() - 1.0));
    for (int q = p + 1; q < n_orbitals; ++q) {
      const std::complex<double> v(scale * (2.0 * rng.uniform() - 1.0),
                                   scale * (2.0 * rng.uniform() - 1.0));
      k(p, q) = v;
      k(q, p) = -std::conj(v);
    }
  }
  return k;
}

}  // namespace qsci::oracle
