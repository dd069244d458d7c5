// Copyright 2026 The qsci-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "qsci/eig.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace qsci {

namespace {

constexpr std::size_t kAllPairsThreshold = 512;

int excitation_degree(const Determinant& a, const Determinant& b) {
  return (std::popcount(a.alpha.bits ^ b.alpha.bits) +
          std::popcount(a.beta.bits ^ b.beta.bits)) /
         2;
}

}  // namespace

// ---------------------------------------------------------------------------
// CIVector

void CIVector::normalize() {
  const double n = amplitudes.norm();
  if (n == 0.0) throw std::runtime_error("cannot normalize a zero CI vector");
  amplitudes /= n;
}

std::complex<double> CIVector::amplitude_of(const Determinant& d) const {
  auto it = std::lower_bound(space.begin(), space.end(), d);
  if (it == space.end() || *it != d) return {0.0, 0.0};
  return amplitudes[it - space.begin()];
}

std::size_t CIVector::support_size(double cutoff) const {
  std::size_t n = 0;
  for (Eigen::Index i = 0; i < amplitudes.size(); ++i)
    if (std::norm(amplitudes[i]) > cutoff) ++n;
  return n;
}

std::complex<double> overlap(const CIVector& a, const CIVector& b) {
  // Both spaces are sorted; walk them together.
  std::complex<double> acc{0.0, 0.0};
  std::size_t i = 0, j = 0;
  while (i < a.space.size() && j < b.space.size()) {
    if (a.space[i] < b.space[j]) {
      ++i;
    } else if (b.space[j] < a.space[i]) {
      ++j;
    } else {
      acc += std::conj(a.amplitudes[i]) * b.amplitudes[j];
      ++i;
      ++j;
    }
  }
  return acc;
}

// ---------------------------------------------------------------------------
// SparseHamiltonian

SparseHamiltonian SparseHamiltonian::from_triplets(
    std::size_t dimension,
    std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> entries) {
  // Mirror off-diagonal entries, then deduplicate per (row, col).
  std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> full;
  full.reserve(2 * entries.size() + dimension);
  for (const auto& [i, j, v] : entries) {
    if (i >= dimension || j >= dimension)
      throw std::out_of_range("triplet index outside the matrix");
    full.emplace_back(i, j, v);
    if (i != j) full.emplace_back(j, i, v);
  }
  for (std::uint32_t i = 0; i < dimension; ++i) full.emplace_back(i, i, 0.0);
  std::sort(full.begin(), full.end(),
            [](const auto& a, const auto& b) {
              return std::tie(std::get<0>(a), std::get<1>(a)) <
                     std::tie(std::get<0>(b), std::get<1>(b));
            });

  SparseHamiltonian out;
  out.dim_ = dimension;
  out.row_ptr_.assign(dimension + 1, 0);
  for (std::size_t k = 0; k < full.size();) {
    const auto [i, j, v0] = full[k];
    // Duplicate submissions of one slot sum; the structural diagonal fill
    // contributes zero.
    double v = 0.0;
    std::size_t k2 = k;
    for (; k2 < full.size() && std::get<0>(full[k2]) == i &&
           std::get<1>(full[k2]) == j;
         ++k2)
      v += std::get<2>(full[k2]);
    out.col_.push_back(j);
    out.values_.push_back(v);
    out.row_ptr_[i + 1] = out.col_.size();
    k = k2;
  }
  for (std::size_t i = 1; i <= dimension; ++i)
    out.row_ptr_[i] = std::max(out.row_ptr_[i], out.row_ptr_[i - 1]);
  return out;
}

double SparseHamiltonian::diagonal(std::size_t i) const {
  for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
    if (col_[k] == i) return values_[k];
  return 0.0;
}

Eigen::VectorXcd SparseHamiltonian::apply(const Eigen::VectorXcd& v) const {
  if (std::size_t(v.size()) != dim_)
    throw std::invalid_argument("vector length does not match dimension");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      acc += values_[k] * v[col_[k]];
    out[i] = acc;
  }
  return out;
}

Eigen::MatrixXd SparseHamiltonian::dense() const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      out(i, col_[k]) = values_[k];
  return out;
}

// ---------------------------------------------------------------------------
// Assembly

namespace {

using Triplet = std::tuple<std::uint32_t, std::uint32_t, double>;

void assemble_all_pairs(std::span<const Determinant> space,
                        const MolecularHamiltonian& h,
                        std::vector<Triplet>& out) {
  for (std::uint32_t i = 0; i < space.size(); ++i)
    for (std::uint32_t j = i + 1; j < space.size(); ++j) {
      if (excitation_degree(space[i], space[j]) > 2) continue;
      const double v = slater_condon(h, space[i], space[j]);
      if (v != 0.0) out.emplace_back(i, j, v);
    }
}

// String-based connection search: distinct alpha/beta strings are paired by
// excitation degree once, and determinant pairs come from degree-compatible
// (alpha pair, beta pair) combinations instead of an all-pairs scan.
void assemble_grouped(std::span<const Determinant> space,
                      const MolecularHamiltonian& h, std::vector<Triplet>& out) {
  std::vector<std::uint64_t> alphas, betas;
  alphas.reserve(space.size());
  betas.reserve(space.size());
  for (const auto& d : space) {
    alphas.push_back(d.alpha.bits);
    betas.push_back(d.beta.bits);
  }
  auto uniq = [](std::vector<std::uint64_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  uniq(alphas);
  uniq(betas);

  auto index_of = [](const std::vector<std::uint64_t>& v, std::uint64_t x) {
    return std::uint32_t(std::lower_bound(v.begin(), v.end(), x) - v.begin());
  };
  const std::size_t nb = betas.size();
  std::unordered_map<std::uint64_t, std::uint32_t> det_index;
  det_index.reserve(2 * space.size());
  for (std::uint32_t i = 0; i < space.size(); ++i) {
    const std::uint64_t key =
        std::uint64_t(index_of(alphas, space[i].alpha.bits)) * nb +
        index_of(betas, space[i].beta.bits);
    if (!det_index.emplace(key, i).second)
      throw std::invalid_argument("duplicate determinant in subspace");
  }
  auto find_det = [&](std::uint32_t ia, std::uint32_t ib) -> std::int64_t {
    auto it = det_index.find(std::uint64_t(ia) * nb + ib);
    return it == det_index.end() ? -1 : std::int64_t(it->second);
  };

  // String pairs by excitation degree (1 or 2), indices ascending.
  auto string_pairs = [](const std::vector<std::uint64_t>& v) {
    std::array<std::vector<std::pair<std::uint32_t, std::uint32_t>>, 3> pairs;
    for (std::uint32_t i = 0; i < v.size(); ++i)
      for (std::uint32_t j = i + 1; j < v.size(); ++j) {
        const int deg = std::popcount(v[i] ^ v[j]) / 2;
        if (deg <= 2) pairs[deg].emplace_back(i, j);
      }
    return pairs;
  };
  const auto alpha_pairs = string_pairs(alphas);
  const auto beta_pairs = string_pairs(betas);

  auto emit = [&](std::int64_t i, std::int64_t j) {
    if (i < 0 || j < 0) return;
    auto a = std::uint32_t(std::min(i, j)), b = std::uint32_t(std::max(i, j));
    const double v = slater_condon(h, space[a], space[b]);
    if (v != 0.0) out.emplace_back(a, b, v);
  };

  // Same alpha string, beta excitation of degree 1 or 2.
  for (std::uint32_t ia = 0; ia < alphas.size(); ++ia)
    for (int deg = 1; deg <= 2; ++deg)
      for (const auto& [b1, b2] : beta_pairs[deg])
        emit(find_det(ia, b1), find_det(ia, b2));
  // Alpha degree 1: beta degree 0 or 1 (both orientations).
  for (const auto& [a1, a2] : alpha_pairs[1]) {
    for (std::uint32_t ib = 0; ib < betas.size(); ++ib)
      emit(find_det(a1, ib), find_det(a2, ib));
    for (const auto& [b1, b2] : beta_pairs[1]) {
      emit(find_det(a1, b1), find_det(a2, b2));
      emit(find_det(a1, b2), find_det(a2, b1));
    }
  }
  // Alpha degree 2: beta unchanged.
  for (const auto& [a1, a2] : alpha_pairs[2])
    for (std::uint32_t ib = 0; ib < betas.size(); ++ib)
      emit(find_det(a1, ib), find_det(a2, ib));
}

}  // namespace

SparseHamiltonian build_hamiltonian(std::span<const Determinant> space,
                                    const MolecularHamiltonian& h,
                                    ConnectionScan scan) {
  for (const auto& d : space)
    if (d.alpha.popcount() != h.n_alpha() || d.beta.popcount() != h.n_beta())
      throw std::invalid_argument(
          "subspace determinant has wrong electron counts");

  std::vector<Triplet> triplets;
  for (std::uint32_t i = 0; i < space.size(); ++i)
    triplets.emplace_back(i, i, diagonal_element(h, space[i]));

  const bool grouped = scan == ConnectionScan::kGrouped ||
                       (scan == ConnectionScan::kAuto &&
                        space.size() > kAllPairsThreshold);
  if (grouped)
    assemble_grouped(space, h, triplets);
  else
    assemble_all_pairs(space, h, triplets);
  return SparseHamiltonian::from_triplets(space.size(), std::move(triplets));
}

// ---------------------------------------------------------------------------
// Eigensolvers

GroundState ground_state_dense(const SparseHamiltonian& hs) {
  if (hs.dimension() == 0) throw std::invalid_argument("empty Hamiltonian");
  if (hs.dimension() > 4096)
    throw std::invalid_argument("dense path is limited to dimension 4096");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hs.dense());
  GroundState out;
  out.energy = solver.eigenvalues()[0];
  out.vector = solver.eigenvectors().col(0).cast<std::complex<double>>();
  return out;
}

GroundState ground_state(const SparseHamiltonian& hs, double tol, int max_iter) {
  const std::size_t dim = hs.dimension();
  if (dim == 0) throw std::invalid_argument("empty Hamiltonian");
  if (dim == 1) {
    GroundState out;
    out.energy = hs.diagonal(0);
    out.vector = Eigen::VectorXcd::Ones(1);
    return out;
  }

  constexpr int kMaxSubspace = 20;
  constexpr double kLevelShift = 1e-6;

  // Start on the lowest-diagonal determinant.
  std::size_t start = 0;
  for (std::size_t i = 1; i < dim; ++i)
    if (hs.diagonal(i) < hs.diagonal(start)) start = i;

  Eigen::MatrixXcd basis(dim, 1);
  Eigen::MatrixXcd sigma(dim, 1);
  basis.setZero();
  basis(start, 0) = 1.0;
  sigma.col(0) = hs.apply(basis.col(0));

  double best_residual = std::numeric_limits<double>::infinity();
  double theta = 0.0;
  Eigen::VectorXcd ritz;

  for (int iter = 0; iter < max_iter; ++iter) {
    const Eigen::Index m = basis.cols();
    const Eigen::MatrixXcd small = basis.adjoint() * sigma;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        0.5 * (small + small.adjoint()));
    theta = solver.eigenvalues()[0];
    const Eigen::VectorXcd y = solver.eigenvectors().col(0);
    ritz = basis * y;
    const Eigen::VectorXcd residual = sigma * y - theta * ritz;
    const double rnorm = residual.norm();
    best_residual = std::min(best_residual, rnorm);
    if (rnorm <= tol) {
      GroundState out;
      out.energy = theta;
      out.vector = ritz / ritz.norm();
      return out;
    }

    // Diagonal preconditioner with a level shift against tiny denominators.
    Eigen::VectorXcd t(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      double denom = theta - hs.diagonal(i);
      if (std::abs(denom) < kLevelShift)
        denom = denom >= 0 ? kLevelShift : -kLevelShift;
      t[i] = residual[i] / denom;
    }

    Eigen::MatrixXcd next_basis;
    const bool restart = m >= kMaxSubspace || m >= Eigen::Index(dim);
    if (restart) {
      // Collapse to the current Ritz vector.
      next_basis.resize(dim, 1);
      next_basis.col(0) = ritz / ritz.norm();
    } else {
      next_basis = basis;
    }

    // Orthonormalize the correction (twice, against accumulated roundoff).
    for (int pass = 0; pass < 2; ++pass)
      t -= next_basis * (next_basis.adjoint() * t);
    const double tnorm = t.norm();
    if (tnorm < 1e-12) {
      // Correction collapsed into the subspace; fall back to a deterministic
      // unit direction with the largest residual component outside it.
      Eigen::VectorXcd probe = Eigen::VectorXcd::Zero(dim);
      std::size_t pick = 0;
      double best = -1.0;
      for (std::size_t i = 0; i < dim; ++i)
        if (std::abs(residual[i]) > best) {
          best = std::abs(residual[i]);
          pick = i;
        }
      probe[pick] = 1.0;
      for (int pass = 0; pass < 2; ++pass)
        probe -= next_basis * (next_basis.adjoint() * probe);
      if (probe.norm() < 1e-12)
        throw ConvergenceError(
            "Davidson stalled: subspace cannot be expanded; best residual " +
                std::to_string(best_residual),
            best_residual);
      t = probe;
    }
    t /= t.norm();

    basis.resize(dim, next_basis.cols() + 1);
    basis.leftCols(next_basis.cols()) = next_basis;
    basis.col(next_basis.cols()) = t;
    if (restart) {
      sigma.resize(dim, 1);
      sigma.col(0) = hs.apply(next_basis.col(0));
    }
    sigma.conservativeResize(Eigen::NoChange, basis.cols());
    sigma.col(basis.cols() - 1) = hs.apply(t);
  }
  throw ConvergenceError("Davidson did not converge after " +
                             std::to_string(max_iter) +
                             " iterations; best residual " +
                             std::to_string(best_residual),
                         best_residual);
}

SubspaceGround solve_subspace(std::vector<Determinant> space,
                              const MolecularHamiltonian& h, double tol,
                              int max_iter) {
  std::sort(space.begin(), space.end());
  space.erase(std::unique(space.begin(), space.end()), space.end());
  const auto hs = build_hamiltonian(space, h);
  auto gs = ground_state(hs, tol, max_iter);
  SubspaceGround out;
  out.energy = gs.energy;
  out.state.space = std::move(space);
  out.state.amplitudes = std::move(gs.vector);
  return out;
}

// ---------------------------------------------------------------------------
// Occupations

OccupationVector occupations(std::span<const CIVector> states, int n_orbitals) {
  if (states.empty())
    throw std::invalid_argument("occupation average needs at least one state");
  OccupationVector occ;
  occ.alpha = Eigen::VectorXd::Zero(n_orbitals);
  occ.beta = Eigen::VectorXd::Zero(n_orbitals);
  for (const auto& state : states) {
    for (std::size_t i = 0; i < state.space.size(); ++i) {
      const double w = std::norm(state.amplitudes[i]);
      if (w == 0.0) continue;
      for (int p : occupied_orbitals(state.space[i].alpha, n_orbitals))
        occ.alpha[p] += w;
      for (int p : occupied_orbitals(state.space[i].beta, n_orbitals))
        occ.beta[p] += w;
    }
  }
  occ.alpha /= double(states.size());
  occ.beta /= double(states.size());
  return occ;
}

// ---------------------------------------------------------------------------
// Full CI reference

FciResult full_ci(const MolecularHamiltonian& h, const FciOptions& opts) {
  const auto alpha_strings = enumerate_strings(h.n_orbitals(), h.n_alpha());
  const auto beta_strings = enumerate_strings(h.n_orbitals(), h.n_beta());
  const std::size_t dim = alpha_strings.size() * beta_strings.size();
  if (dim > opts.capacity)
    throw std::runtime_error("full CI space of dimension " +
                             std::to_string(dim) + " exceeds the capacity cap");
  std::vector<Determinant> space;
  space.reserve(dim);
  for (const auto& a : alpha_strings)
    for (const auto& b : beta_strings) space.push_back(Determinant{a, b});

  const auto hs = build_hamiltonian(space, h);
  GroundState gs = dim <= opts.dense_cutoff
                       ? ground_state_dense(hs)
                       : ground_state(hs, opts.tol, opts.max_iter);
  FciResult out;
  out.energy = gs.energy;
  out.dimension = dim;
  out.state.space = std::move(space);
  out.state.amplitudes = std::move(gs.vector);
  return out;
}

}  // namespace qsci
