// Copyright 2026 The qsci-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "qsci/lucj.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace qsci {

namespace {

using Complex = std::complex<double>;

constexpr double kHermTol = 1e-10;
constexpr double kMatrixTol = 1e-12;

void require_anti_hermitian(const Eigen::MatrixXcd& k) {
  if (k.rows() != k.cols())
    throw std::invalid_argument("rotation generator must be square");
  if ((k + k.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
    throw std::invalid_argument("rotation generator is not anti-Hermitian");
}

void require_symmetric(const Eigen::MatrixXd& j, const char* name) {
  if (j.rows() != j.cols())
    throw std::invalid_argument(std::string(name) + " must be square");
  if ((j - j.transpose()).cwiseAbs().maxCoeff() > kMatrixTol)
    throw std::invalid_argument(std::string(name) + " is not symmetric");
}

// exp(direction * K) for anti-Hermitian K, through the Hermitian iK; the
// result is unitary by construction.
Eigen::MatrixXcd exp_generator(const Eigen::MatrixXcd& k, int direction) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Complex(0, 1) * k);
  const Eigen::VectorXd lam = es.eigenvalues();
  Eigen::VectorXcd phases(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    phases[i] = std::exp(Complex(0, -direction * lam[i]));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// ---------------------------------------------------------------------------
// Fixed-particle-number product basis and its amplitude matrix.

struct SectorBasis {
  std::vector<SpinString> strings;  // ascending
  std::unordered_map<std::uint64_t, std::uint32_t> index;
};

SectorBasis make_sector(int n_orbitals, int n_electrons) {
  SectorBasis basis;
  basis.strings = enumerate_strings(n_orbitals, n_electrons);
  basis.index.reserve(2 * basis.strings.size());
  for (std::uint32_t i = 0; i < basis.strings.size(); ++i)
    basis.index.emplace(basis.strings[i].bits, i);
  return basis;
}

struct StateMatrix {
  int n_orbitals = 0;
  SectorBasis alpha;
  SectorBasis beta;
  Eigen::MatrixXcd amps;  // row: alpha string, column: beta string

  static StateMatrix hf(int n_orbitals, int n_alpha, int n_beta) {
    StateMatrix s;
    s.n_orbitals = n_orbitals;
    s.alpha = make_sector(n_orbitals, n_alpha);
    s.beta = make_sector(n_orbitals, n_beta);
    s.amps = Eigen::MatrixXcd::Zero(s.alpha.strings.size(),
                                    s.beta.strings.size());
    const Determinant ref = hf_determinant(n_orbitals, n_alpha, n_beta);
    s.amps(s.alpha.index.at(ref.alpha.bits), s.beta.index.at(ref.beta.bits)) =
        1.0;
    return s;
  }

  static StateMatrix from_civector(const CIVector& state, int n_orbitals,
                                   int n_alpha, int n_beta) {
    StateMatrix s;
    s.n_orbitals = n_orbitals;
    s.alpha = make_sector(n_orbitals, n_alpha);
    s.beta = make_sector(n_orbitals, n_beta);
    s.amps = Eigen::MatrixXcd::Zero(s.alpha.strings.size(),
                                    s.beta.strings.size());
    for (std::size_t i = 0; i < state.space.size(); ++i) {
      const auto& d = state.space[i];
      auto ia = s.alpha.index.find(d.alpha.bits);
      auto ib = s.beta.index.find(d.beta.bits);
      if (ia == s.alpha.index.end() || ib == s.beta.index.end())
        throw std::invalid_argument(
            "state determinant violates the sector electron counts");
      s.amps(ia->second, ib->second) = state.amplitudes[i];
    }
    return s;
  }

  CIVector to_civector() const {
    // Row-major (alpha outer, beta inner) is exactly the canonical
    // (alpha.bits, beta.bits) order.
    CIVector out;
    out.space.reserve(amps.size());
    out.amplitudes.resize(amps.size());
    Eigen::Index k = 0;
    for (std::uint32_t ia = 0; ia < alpha.strings.size(); ++ia)
      for (std::uint32_t ib = 0; ib < beta.strings.size(); ++ib) {
        out.space.push_back(Determinant{alpha.strings[ia], beta.strings[ib]});
        out.amplitudes[k++] = amps(ia, ib);
      }
    return out;
  }
};

// Two-level mixing on adjacent orbitals (p, p+1) of one spin sector.
// Occupancy (1,0) <-> (0,1) pairs mix through g without a parity factor
// (nothing lies strictly between adjacent orbitals); (1,1) rows pick up
// det(g).
void apply_two_level(Eigen::MatrixXcd& amps, const SectorBasis& sector, int p,
                     const Eigen::Matrix2cd& g, bool rows) {
  const Complex detg = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
  const std::uint64_t bp = std::uint64_t{1} << p;
  const std::uint64_t bq = std::uint64_t{1} << (p + 1);
  for (std::uint32_t is = 0; is < sector.strings.size(); ++is) {
    const std::uint64_t bits = sector.strings[is].bits;
    const bool occ_p = bits & bp, occ_q = bits & bq;
    if (occ_p && occ_q) {
      if (rows)
        amps.row(is) *= detg;
      else
        amps.col(is) *= detg;
    } else if (occ_p && !occ_q) {
      const std::uint32_t partner = sector.index.at(bits ^ (bp | bq));
      if (rows) {
        const Eigen::RowVectorXcd x = amps.row(is), y = amps.row(partner);
        amps.row(is) = g(0, 0) * x + g(0, 1) * y;
        amps.row(partner) = g(1, 0) * x + g(1, 1) * y;
      } else {
        const Eigen::VectorXcd x = amps.col(is), y = amps.col(partner);
        amps.col(is) = g(0, 0) * x + g(0, 1) * y;
        amps.col(partner) = g(1, 0) * x + g(1, 1) * y;
      }
    }
  }
}

struct GivensStep {
  int p;  // orbital pair (p, p+1)
  Eigen::Matrix2cd g;
};

struct UnitaryDecomposition {
  std::vector<GivensStep> steps;  // G_T ... G_1 U = diag(phases)
  Eigen::VectorXcd phases;
};

UnitaryDecomposition decompose_unitary(Eigen::MatrixXcd u) {
  const int n = int(u.rows());
  UnitaryDecomposition out;
  for (int col = 0; col < n - 1; ++col) {
    for (int row = n - 1; row > col; --row) {
      // Zero u(row, col) against the row above.
      const Complex a = u(row - 1, col), b = u(row, col);
      const double r = std::sqrt(std::norm(a) + std::norm(b));
      if (std::abs(b) < 1e-15) continue;
      Eigen::Matrix2cd g;
      g << std::conj(a) / r, std::conj(b) / r, -b / r, a / r;
      u.middleRows(row - 1, 2) = (g * u.middleRows(row - 1, 2)).eval();
      out.steps.push_back(GivensStep{row - 1, g});
    }
  }
  out.phases = u.diagonal();
  // A unitary reduced to upper triangular form must already be diagonal.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(u(i, j)) > 1e-9)
        throw std::runtime_error("Givens reduction left a non-diagonal tail");
  return out;
}

// U = G_1^dag ... G_T^dag D: apply the phases first, then the adjoint steps
// in reverse order, to rows (alpha) and columns (beta).
void apply_unitary(StateMatrix& state, const Eigen::MatrixXcd& u) {
  const auto dec = decompose_unitary(u);
  for (int sector = 0; sector < 2; ++sector) {
    const bool rows = sector == 0;
    const SectorBasis& basis = rows ? state.alpha : state.beta;
    Eigen::VectorXcd string_phase(basis.strings.size());
    for (std::uint32_t is = 0; is < basis.strings.size(); ++is) {
      Complex ph = 1.0;
      for (int p : occupied_orbitals(basis.strings[is], state.n_orbitals))
        ph *= dec.phases[p];
      string_phase[is] = ph;
    }
    if (rows)
      state.amps = string_phase.asDiagonal() * state.amps;
    else
      state.amps = state.amps * string_phase.asDiagonal();
    for (auto it = dec.steps.rbegin(); it != dec.steps.rend(); ++it)
      apply_two_level(state.amps, basis, it->p, it->g.adjoint(), rows);
  }
}

// theta_I = x J_ss x + y J_ss y + 2 x J_os y over occupation vectors x
// (alpha) and y (beta); the ordered Eq.-style double sum, diagonal included.
void apply_jastrow_matrix(StateMatrix& state, const Eigen::MatrixXd& j_ss,
                          const Eigen::MatrixXd& j_os) {
  const int n = state.n_orbitals;
  auto occupancy = [&](const std::vector<SpinString>& strings) {
    Eigen::MatrixXd x(strings.size(), n);
    x.setZero();
    for (std::size_t i = 0; i < strings.size(); ++i)
      for (int p : occupied_orbitals(strings[i], n)) x(Eigen::Index(i), p) = 1.0;
    return x;
  };
  const Eigen::MatrixXd xa = occupancy(state.alpha.strings);
  const Eigen::MatrixXd xb = occupancy(state.beta.strings);
  const Eigen::VectorXd same_a = ((xa * j_ss).array() * xa.array()).rowwise().sum();
  const Eigen::VectorXd same_b = ((xb * j_ss).array() * xb.array()).rowwise().sum();
  const Eigen::MatrixXd cross = 2.0 * xa * j_os * xb.transpose();
  for (Eigen::Index ia = 0; ia < state.amps.rows(); ++ia)
    for (Eigen::Index ib = 0; ib < state.amps.cols(); ++ib)
      state.amps(ia, ib) *=
          std::exp(Complex(0, same_a[ia] + same_b[ib] + cross(ia, ib)));
}

}  // namespace

// ---------------------------------------------------------------------------

AnsatzMode parse_ansatz_mode(const std::string& text) {
  if (text == "1L" || text == "1l") return AnsatzMode::k1L;
  if (text == "2L" || text == "2l") return AnsatzMode::k2L;
  if (text == "2Lp" || text == "2lp" || text == "2L'") return AnsatzMode::k2Lp;
  throw std::invalid_argument("unknown ansatz mode: " + text);
}

std::string to_string(AnsatzMode mode) {
  switch (mode) {
    case AnsatzMode::k1L: return "1L";
    case AnsatzMode::k2L: return "2L";
    case AnsatzMode::k2Lp: return "2Lp";
  }
  return "?";
}

void project_local(LucjLayer& layer) {
  const int n = int(layer.j_ss.rows());
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      if (std::abs(p - q) != 1) layer.j_ss(p, q) = 0.0;
      if (p != q) layer.j_os(p, q) = 0.0;
    }
}

LucjParams params_from_t2(const T2Tensor& t2, int n_layers, bool local) {
  if (n_layers < 1) throw std::invalid_argument("layer count must be >= 1");
  const int no = t2.n_occ(), nv = t2.n_virt();
  const int n = no + nv;
  const int m = no * nv;

  LucjParams params;
  auto zero_layer = [n]() {
    LucjLayer layer;
    layer.k = Eigen::MatrixXcd::Zero(n, n);
    layer.j_ss = Eigen::MatrixXd::Zero(n, n);
    layer.j_os = Eigen::MatrixXd::Zero(n, n);
    return layer;
  };

  if (t2.max_abs() == 0.0) {
    // Identity circuit.
    for (int mu = 0; mu < n_layers; ++mu) params.layers.push_back(zero_layer());
    return params;
  }

  Eigen::MatrixXd doubles(m, m);
  for (int i = 0; i < no; ++i)
    for (int j = 0; j < no; ++j)
      for (int a = 0; a < nv; ++a)
        for (int b = 0; b < nv; ++b)
          doubles(i * nv + a, j * nv + b) = t2(i, j, a, b);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(doubles);
  std::vector<int> order(m);
  for (int k = 0; k < m; ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(es.eigenvalues()[a]) > std::abs(es.eigenvalues()[b]);
  });
  const double scale = std::abs(es.eigenvalues()[order[0]]);
  int rank = 0;
  while (rank < m && std::abs(es.eigenvalues()[order[rank]]) > 1e-12 * scale)
    ++rank;
  if (n_layers > rank)
    throw std::runtime_error("requested " + std::to_string(n_layers) +
                             " layers but the doubles matrix has rank " +
                             std::to_string(rank));

  const Complex phase = std::exp(Complex(0, -M_PI / 4));
  for (int mu = 0; mu < n_layers; ++mu) {
    const double eta = es.eigenvalues()[order[mu]];
    const Eigen::VectorXd g = es.eigenvectors().col(order[mu]);

    // Occupied-virtual block embedding with the e^{-i pi/4} phase; Hermitian
    // by construction.
    Eigen::MatrixXcd one_body = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < no; ++i)
      for (int a = 0; a < nv; ++a) {
        one_body(i, no + a) = phase * g[i * nv + a];
        one_body(no + a, i) = std::conj(phase) * g[i * nv + a];
      }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ges(one_body);

    LucjLayer layer = zero_layer();
    Eigen::MatrixXcd k = ges.eigenvectors().log();
    layer.k = 0.5 * (k - k.adjoint());  // principal log, cleaned
    const Eigen::VectorXd d = ges.eigenvalues();
    const Eigen::MatrixXd j_full = eta * d * d.transpose();
    layer.j_ss = 0.5 * j_full;
    layer.j_os = 0.5 * j_full;
    if (local) project_local(layer);
    params.layers.push_back(std::move(layer));
  }
  return params;
}

CIVector apply_orbital_rotation(const CIVector& state, const Eigen::MatrixXcd& k,
                                int direction, int n_orbitals, int n_alpha,
                                int n_beta) {
  require_anti_hermitian(k);
  if (direction != 1 && direction != -1)
    throw std::invalid_argument("direction must be +1 or -1");
  StateMatrix sm =
      StateMatrix::from_civector(state, n_orbitals, n_alpha, n_beta);
  apply_unitary(sm, exp_generator(k, direction));
  return sm.to_civector();
}

CIVector apply_jastrow(const CIVector& state, const Eigen::MatrixXd& j_ss,
                       const Eigen::MatrixXd& j_os, int n_orbitals) {
  require_symmetric(j_ss, "J_ss");
  require_symmetric(j_os, "J_os");
  CIVector out = state;
  for (std::size_t i = 0; i < out.space.size(); ++i) {
    const auto& d = out.space[i];
    double theta = 0.0;
    const auto occ_a = occupied_orbitals(d.alpha, n_orbitals);
    const auto occ_b = occupied_orbitals(d.beta, n_orbitals);
    for (int p : occ_a)
      for (int q : occ_a) theta += j_ss(p, q);
    for (int p : occ_b)
      for (int q : occ_b) theta += j_ss(p, q);
    for (int p : occ_a)
      for (int q : occ_b) theta += 2.0 * j_os(p, q);
    out.amplitudes[i] *= std::exp(Complex(0, theta));
  }
  return out;
}

CIVector build_state(const MolecularHamiltonian& h, const LucjParams& params,
                     AnsatzMode mode) {
  const int n = h.n_orbitals();
  const int full_layers = mode == AnsatzMode::k2L ? 2 : 1;
  if (int(params.layers.size()) < full_layers)
    throw std::invalid_argument(to_string(mode) + " needs at least " +
                                std::to_string(full_layers) + " layer(s)");
  for (const auto& layer : params.layers) {
    if (layer.k.rows() != n)
      throw std::invalid_argument("layer size does not match orbital count");
    require_anti_hermitian(layer.k);
    require_symmetric(layer.j_ss, "J_ss");
    require_symmetric(layer.j_os, "J_os");
  }

  StateMatrix psi = StateMatrix::hf(n, h.n_alpha(), h.n_beta());
  for (int mu = 0; mu < full_layers; ++mu) {
    const auto& layer = params.layers[mu];
    apply_unitary(psi, exp_generator(layer.k, -1));
    apply_jastrow_matrix(psi, layer.j_ss, layer.j_os);
    apply_unitary(psi, exp_generator(layer.k, +1));
  }
  if (mode == AnsatzMode::k2Lp) {
    Eigen::MatrixXcd k2;
    if (params.final_rotation)
      k2 = *params.final_rotation;
    else if (params.layers.size() >= 2)
      k2 = params.layers[1].k;
    else
      throw std::invalid_argument(
          "2Lp needs a final rotation or a second layer");
    require_anti_hermitian(k2);
    apply_unitary(psi, exp_generator(k2, +1));
  }

  CIVector out = psi.to_civector();
  out.normalize();  // unitary chain; rescales only roundoff
  return out;
}

LucjParams truncate_to_2lp(const LucjParams& params) {
  if (params.layers.size() < 2)
    throw std::invalid_argument("truncation needs at least two layers");
  LucjParams out;
  out.layers.push_back(params.layers[0]);
  out.final_rotation = params.layers[1].k;
  return out;
}

// ---------------------------------------------------------------------------
// Parameter file I/O

namespace {

enum class Section { kNone, kK, kJss, kJos };

struct MatrixAccumulator {
  Eigen::MatrixXcd values;
  Eigen::Matrix<char, Eigen::Dynamic, Eigen::Dynamic> seen;

  explicit MatrixAccumulator(int n)
      : values(Eigen::MatrixXcd::Zero(n, n)),
        seen(Eigen::Matrix<char, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n)) {}

  void set(int p, int q, Complex v, long line) {
    if (p < 0 || q < 0 || p >= values.rows() || q >= values.rows())
      throw ParseError("matrix index out of range", line);
    if (seen(p, q) && std::abs(values(p, q) - v) > kMatrixTol)
      throw ParseError("conflicting duplicate matrix entry", line);
    values(p, q) = v;
    seen(p, q) = 1;
  }

  // Mirror unset partners: anti-Hermitian for K, symmetric for J.
  Eigen::MatrixXcd finish(bool anti_hermitian, long line) {
    const int n = int(values.rows());
    for (int p = 0; p < n; ++p)
      for (int q = p; q < n; ++q) {
        const Complex mirror =
            anti_hermitian ? -std::conj(values(p, q)) : values(p, q);
        if (seen(p, q) && !seen(q, p)) {
          values(q, p) = mirror;
        } else if (seen(q, p) && !seen(p, q)) {
          values(p, q) =
              anti_hermitian ? -std::conj(values(q, p)) : values(q, p);
        } else if (seen(p, q) && seen(q, p) &&
                   std::abs(values(q, p) - mirror) > 1e-9) {
          throw ParseError("matrix entries violate the required symmetry",
                           line);
        }
      }
    return values;
  }
};

}  // namespace

LucjParams parse_lucj_params(std::istream& in) {
  std::string line;
  long line_no = 0;
  int n = -1, n_layers = -1, has_final = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (std::sscanf(line.c_str(),
                    "lucj n_orbitals=%d n_layers=%d final_rotation=%d", &n,
                    &n_layers, &has_final) != 3)
      throw ParseError(
          "expected `lucj n_orbitals=<n> n_layers=<l> final_rotation=<0|1>`",
          line_no);
    break;
  }
  if (n < 1 || n > kMaxOrbitals || n_layers < 1)
    throw ParseError("invalid parameter file header", line_no);

  struct RawLayer {
    MatrixAccumulator k, j_ss, j_os;
    explicit RawLayer(int n) : k(n), j_ss(n), j_os(n) {}
  };
  std::vector<RawLayer> raw;
  std::optional<MatrixAccumulator> final_rot;
  RawLayer* current = nullptr;
  MatrixAccumulator* final_current = nullptr;
  Section section = Section::kNone;
  bool in_final = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word == "layer") {
      int idx;
      if (!(ls >> idx) || idx != int(raw.size()) + 1)
        throw ParseError("layer sections must be consecutive from 1", line_no);
      raw.emplace_back(n);
      current = &raw.back();
      in_final = false;
      section = Section::kNone;
    } else if (word == "final_rotation") {
      final_rot.emplace(n);
      final_current = &*final_rot;
      in_final = true;
      section = Section::kNone;
    } else if (word == "K") {
      section = Section::kK;
    } else if (word == "J_SS") {
      section = Section::kJss;
    } else if (word == "J_OS") {
      section = Section::kJos;
    } else {
      // Entry line within the current section.
      int p = -1, q = -1;
      try {
        p = std::stoi(word);
      } catch (...) {
        throw ParseError("unexpected token `" + word + "`", line_no);
      }
      if (!(ls >> q)) throw ParseError("expected `p q ...` entry", line_no);
      if (section == Section::kK) {
        double re, im;
        if (!(ls >> re >> im))
          throw ParseError("K entries need `p q re im`", line_no);
        MatrixAccumulator* acc =
            in_final ? final_current : (current ? &current->k : nullptr);
        if (!acc) throw ParseError("entry outside any layer section", line_no);
        acc->set(p, q, Complex(re, im), line_no);
      } else if (section == Section::kJss || section == Section::kJos) {
        if (in_final)
          throw ParseError("final_rotation carries only K entries", line_no);
        double v;
        if (!(ls >> v)) throw ParseError("J entries need `p q value`", line_no);
        if (!current)
          throw ParseError("entry outside any layer section", line_no);
        (section == Section::kJss ? current->j_ss : current->j_os)
            .set(p, q, v, line_no);
      } else {
        throw ParseError("entry before any K/J_SS/J_OS marker", line_no);
      }
    }
  }
  if (int(raw.size()) != n_layers)
    throw ParseError("layer count does not match the header", line_no);
  if (bool(final_rot) != bool(has_final))
    throw ParseError("final_rotation presence does not match the header",
                     line_no);

  LucjParams params;
  for (auto& r : raw) {
    LucjLayer layer;
    layer.k = r.k.finish(true, line_no);
    layer.j_ss = r.j_ss.finish(false, line_no).real();
    layer.j_os = r.j_os.finish(false, line_no).real();
    require_anti_hermitian(layer.k);
    params.layers.push_back(std::move(layer));
  }
  if (final_rot) {
    Eigen::MatrixXcd k = final_rot->finish(true, line_no);
    require_anti_hermitian(k);
    params.final_rotation = std::move(k);
  }
  return params;
}

LucjParams parse_lucj_params_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open parameter file: " + path);
  return parse_lucj_params(in);
}

void write_lucj_params(const LucjParams& params, std::ostream& out) {
  const int n = params.n_orbitals();
  out << "lucj n_orbitals=" << n << " n_layers=" << params.layers.size()
      << " final_rotation=" << (params.final_rotation ? 1 : 0) << "\n";
  char buf[128];
  auto emit_complex = [&](const Eigen::MatrixXcd& k) {
    out << "K\n";
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        if (k(p, q) == Complex(0, 0)) continue;
        std::snprintf(buf, sizeof buf, "%d %d %.17g %.17g\n", p, q,
                      k(p, q).real(), k(p, q).imag());
        out << buf;
      }
  };
  auto emit_real = [&](const Eigen::MatrixXd& j, const char* name) {
    out << name << "\n";
    for (int p = 0; p < n; ++p)
      for (int q = p; q < n; ++q) {
        if (j(p, q) == 0.0) continue;
        std::snprintf(buf, sizeof buf, "%d %d %.17g\n", p, q, j(p, q));
        out << buf;
      }
  };
  for (std::size_t mu = 0; mu < params.layers.size(); ++mu) {
    out << "layer " << mu + 1 << "\n";
    emit_complex(params.layers[mu].k);
    emit_real(params.layers[mu].j_ss, "J_SS");
    emit_real(params.layers[mu].j_os, "J_OS");
  }
  if (params.final_rotation) {
    out << "final_rotation\n";
    emit_complex(*params.final_rotation);
  }
}

}  // namespace qsci
