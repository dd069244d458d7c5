// Copyright 2026 The qsci-lab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qsci/eig.hpp"
#include "qsci/integrals.hpp"

namespace qsci {

/// One product layer: an anti-Hermitian orbital-rotation generator K applied
/// identically to both spin sectors, plus real symmetric density-density
/// couplings split into same-spin and opposite-spin blocks.
struct LucjLayer {
  Eigen::MatrixXcd k;     // K + K^dagger == 0
  Eigen::MatrixXd j_ss;   // symmetric; nearest-neighbor entries only when local
  Eigen::MatrixXd j_os;   // symmetric; diagonal only when local
};

struct LucjParams {
  std::vector<LucjLayer> layers;
  /// Extra closing rotation of the truncated two-layer form.
  std::optional<Eigen::MatrixXcd> final_rotation;

  int n_orbitals() const {
    return layers.empty() ? 0 : static_cast<int>(layers.front().k.rows());
  }
};

enum class AnsatzMode { k1L, k2L, k2Lp };

AnsatzMode parse_ansatz_mode(const std::string& text);
std::string to_string(AnsatzMode mode);

/// Maps doubles amplitudes onto LUCJ layers by double factorization.
///
/// The doubles matrix M[(ia)][(jb)] = t_ijab is eigendecomposed and the L
/// eigenpairs of largest |eta| become layers, ordered by |eta| descending.
/// Each factor vector is embedded into the occupied-virtual block of a
/// Hermitian one-body matrix with phase e^{-i pi/4} (so that the first-order
/// doubles content of the layer is real and adds to the reference with the
/// amplitude's own sign); K is the principal logarithm of its eigenbasis and
/// J_pq = eta d_p d_q is split equally between same-spin and opposite-spin
/// blocks. With `local` set, J entries outside the nearest-neighbor /
/// diagonal masks are zeroed after construction.
LucjParams params_from_t2(const T2Tensor& t2, int n_layers, bool local);

/// Zeroes J entries outside the locality masks in place.
void project_local(LucjLayer& layer);

/// e^{direction * K} applied in the fixed-particle-number determinant basis
/// via Givens decomposition of the single-particle rotation. The result
/// spans the full C(N,n_alpha) x C(N,n_beta) product space.
CIVector apply_orbital_rotation(const CIVector& state, const Eigen::MatrixXcd& k,
                                int direction, int n_orbitals, int n_alpha,
                                int n_beta);

/// Diagonal Jastrow phases: each amplitude is multiplied by exp(i theta_I)
/// with theta_I the ordered double sum of J_ss/J_os over determinant I's
/// occupations. Moduli are unchanged.
CIVector apply_jastrow(const CIVector& state, const Eigen::MatrixXd& j_ss,
                       const Eigen::MatrixXd& j_os, int n_orbitals);

/// Builds the exact ansatz state from the HF reference. Layer factors are
/// applied as e^{-K}, e^{iJ}, e^{+K} per layer; in 2L' mode the second layer
/// contributes only its opening rotation e^{+K_2} (taken from
/// final_rotation when present, else from layers[1]).
CIVector build_state(const MolecularHamiltonian& h, const LucjParams& params,
                     AnsatzMode mode);

/// Converts two or more factorized layers into the truncated two-layer
/// shape: one full layer plus a final rotation.
LucjParams truncate_to_2lp(const LucjParams& params);

/// Parameter file format: per-layer sections with `p q re im` lines for K
/// and `p q value` lines for J_ss/J_os. Unlisted symmetric partners are
/// mirrored; the assembled matrices are validated.
LucjParams parse_lucj_params(std::istream& in);
LucjParams parse_lucj_params_file(const std::string& path);
void write_lucj_params(const LucjParams& params, std::ostream& out);

}  // namespace qsci
