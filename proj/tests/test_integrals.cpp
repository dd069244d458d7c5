// Copyright 2026 The qsci-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "qsci/integrals.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "qsci/eig.hpp"

using namespace qsci;

namespace {

const std::string kH2Path = std::string(QSCI_TEST_DATA_DIR) + "/h2_sto6g_0.735.fcidump";

MolecularHamiltonian h2() { return parse_fcidump_file(kH2Path); }

}  // namespace

TEST_CASE("parse_fcidump: core-energy-only file") {
  std::istringstream in(
      "&FCI NORB=1,NELEC=2,MS2=0,\n&END\n"
      "0.5 0 0 0 0\n");
  const auto h = parse_fcidump(in);
  CHECK(h.n_orbitals() == 1);
  CHECK(h.n_alpha() == 1);
  CHECK(h.n_beta() == 1);
  CHECK(h.core_energy() == doctest::Approx(0.5));
  CHECK(h.one_body(0, 0) == 0.0);
  CHECK(h.two_body(0, 0, 0, 0) == 0.0);
}

TEST_CASE("parse_fcidump: symmetry expansion of a single entry") {
  std::istringstream in(
      "&FCI NORB=2,NELEC=2,MS2=0,\n&END\n"
      "0.25 1 2 1 2\n");
  const auto h = parse_fcidump(in);
  const int idx[8][4] = {{0, 1, 0, 1}, {1, 0, 0, 1}, {0, 1, 1, 0}, {1, 0, 1, 0},
                         {0, 1, 0, 1}, {1, 0, 1, 0}, {0, 1, 1, 0}, {1, 0, 0, 1}};
  for (const auto& q : idx)
    CHECK(h.two_body(q[0], q[1], q[2], q[3]) == doctest::Approx(0.25));
}

TEST_CASE("parse_fcidump: error paths name the line") {
  SUBCASE("malformed header") {
    std::istringstream in("NORB=2\n");
    CHECK_THROWS_AS(parse_fcidump(in), ParseError);
  }
  SUBCASE("index out of range") {
    std::istringstream in("&FCI NORB=2,NELEC=2,MS2=0,\n&END\n0.1 3 1 1 1\n");
    try {
      parse_fcidump(in);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("conflicting duplicates beyond 1e-12") {
    std::istringstream in(
        "&FCI NORB=2,NELEC=2,MS2=0,\n&END\n"
        "0.25 1 2 1 2\n0.30 2 1 2 1\n");
    CHECK_THROWS_AS(parse_fcidump(in), ParseError);
  }
  SUBCASE("agreeing duplicates pass") {
    std::istringstream in(
        "&FCI NORB=2,NELEC=2,MS2=0,\n&END\n"
        "0.25 1 2 1 2\n0.25 2 1 2 1\n");
    CHECK_NOTHROW(parse_fcidump(in));
  }
}

TEST_CASE("parse_fcidump: H2/STO-6G ground energy sits in the expected region") {
  // The exact value comes from the operator oracle on the same parsed
  // integrals; the absolute window guards the data file itself.
  const auto h = h2();
  std::vector<Determinant> space;
  for (const auto& a : enumerate_strings(2, 1))
    for (const auto& b : enumerate_strings(2, 1))
      space.push_back(Determinant{a, b});
  const Eigen::MatrixXd matrix = oracle::operator_matrix(h, space);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(matrix);
  const double oracle_energy = es.eigenvalues()[0];
  CHECK(oracle_energy == doctest::Approx(-1.145).epsilon(0.02));

  const auto fci = full_ci(h);
  CHECK(fci.energy == doctest::Approx(oracle_energy).epsilon(1e-11));
}

TEST_CASE("round-trip: serialize and re-parse an FCIDUMP") {
  const auto h = h2();
  std::stringstream buffer;
  write_fcidump(h, buffer);
  const auto reparsed = parse_fcidump(buffer);
  CHECK(h == reparsed);
}

TEST_CASE("two_body returns the same value for all 8 permutations") {
  const auto h = oracle::random_hamiltonian(4, 2, 2, 99);
  for (const auto& [p, q, r, s, v] : h.two_body_entries()) {
    CHECK(h.two_body(q, p, r, s) == v);
    CHECK(h.two_body(p, q, s, r) == v);
    CHECK(h.two_body(q, p, s, r) == v);
    CHECK(h.two_body(r, s, p, q) == v);
    CHECK(h.two_body(s, r, p, q) == v);
    CHECK(h.two_body(r, s, q, p) == v);
    CHECK(h.two_body(s, r, q, p) == v);
  }
}

TEST_CASE("fock_diagonal: zero two-electron part reduces to h_pp") {
  MolecularHamiltonian h(2, 1, 1);
  h.set_one_body(0, 0, -1.25);
  h.set_one_body(1, 1, -0.47);
  const auto eps = fock_diagonal(h);
  CHECK(eps[0] == doctest::Approx(-1.25));
  CHECK(eps[1] == doctest::Approx(-0.47));
}

TEST_CASE("fock_diagonal: all-zero integrals give a zero vector") {
  MolecularHamiltonian h(3, 2, 2);
  const auto eps = fock_diagonal(h);
  CHECK(eps.norm() == 0.0);
}

TEST_CASE("fock_diagonal: H2 matches an independent closed-form evaluation") {
  const auto h = h2();
  const auto eps = fock_diagonal(h);
  // Second path: explicit sum written out without the library loop.
  for (int p = 0; p < 2; ++p) {
    const double expected = h.one_body(p, p) + 2.0 * h.two_body(p, p, 0, 0) -
                            h.two_body(p, 0, 0, p);
    CHECK(eps[p] == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("mp2_t2: zero numerator gives a zero tensor") {
  MolecularHamiltonian h(2, 1, 1);
  h.set_one_body(0, 0, -1.0);
  h.set_one_body(1, 1, 1.0);
  const auto t2 = mp2_t2(h, fock_diagonal(h));
  CHECK(t2.max_abs() == 0.0);
}

TEST_CASE("mp2_t2: single-entry arithmetic") {
  MolecularHamiltonian h(2, 1, 1);
  h.set_two_body(0, 1, 0, 1, 0.1);  // (ia|jb) with i=j=0, a=b=1
  Eigen::VectorXd eps(2);
  eps << 0.0, 0.5;  // denominator 0+0-0.5-0.5 = -1
  const auto t2 = mp2_t2(h, eps);
  CHECK(t2(0, 0, 0, 0) == doctest::Approx(-0.1));
}

TEST_CASE("mp2_t2: degenerate denominator raises and names the indices") {
  MolecularHamiltonian h(2, 1, 1);
  h.set_two_body(0, 1, 0, 1, 0.1);
  Eigen::VectorXd eps = Eigen::VectorXd::Zero(2);
  try {
    mp2_t2(h, eps);
    FAIL("expected a degenerate-orbital error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("(0,0,0,0)") != std::string::npos);
  }
}

TEST_CASE("mp2_t2: H2 matches the 2x2 perturbation oracle") {
  const auto h = h2();
  const auto t2 = mp2_t2(h, fock_diagonal(h));

  // Numerator through the operator oracle: the {HF, doubly-excited} block's
  // off-diagonal element. Denominator from zeroth-order orbital energies
  // evaluated directly.
  const Determinant hf{SpinString{0b01}, SpinString{0b01}};
  const Determinant doubly{SpinString{0b10}, SpinString{0b10}};
  const Eigen::MatrixXd block = oracle::operator_matrix(h, {hf, doubly});
  double eps0 = h.one_body(0, 0) + 2 * h.two_body(0, 0, 0, 0) - h.two_body(0, 0, 0, 0);
  double eps1 = h.one_body(1, 1) + 2 * h.two_body(1, 1, 0, 0) - h.two_body(1, 0, 0, 1);
  const double expected = block(0, 1) / (2 * eps0 - 2 * eps1);
  CHECK(t2(0, 0, 0, 0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("mp2_t2: exchange symmetry holds exhaustively at N = 8") {
  const auto h = oracle::random_hamiltonian(8, 3, 3, 1234);
  Eigen::VectorXd eps(8);
  for (int p = 0; p < 8; ++p) eps[p] = p < 3 ? -2.0 + 0.3 * p : 0.5 + 0.4 * p;
  const auto t2 = mp2_t2(h, eps);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b)
          CHECK(t2(i, j, a, b) == t2(j, i, b, a));
}

TEST_CASE("parse_t2: empty body gives a zero tensor") {
  std::istringstream in("n_occ=2 n_virt=3\n");
  const auto t2 = parse_t2(in);
  CHECK(t2.n_occ() == 2);
  CHECK(t2.n_virt() == 3);
  CHECK(t2.max_abs() == 0.0);
}

TEST_CASE("parse_t2: symmetry fill from a single line") {
  std::istringstream in("n_occ=2 n_virt=3\n0 1 2 0 0.05\n");
  const auto t2 = parse_t2(in);
  CHECK(t2(0, 1, 2, 0) == doctest::Approx(0.05));
  CHECK(t2(1, 0, 0, 2) == doctest::Approx(0.05));
}

TEST_CASE("parse_t2: error paths") {
  SUBCASE("index out of range") {
    std::istringstream in("n_occ=1 n_virt=1\n0 0 1 0 0.05\n");
    CHECK_THROWS_AS(parse_t2(in), ParseError);
  }
  SUBCASE("symmetry conflict") {
    std::istringstream in("n_occ=2 n_virt=2\n0 1 0 1 0.05\n1 0 1 0 0.06\n");
    CHECK_THROWS_AS(parse_t2(in), ParseError);
  }
}

TEST_CASE("round-trip: any MP2 tensor survives write_t2/parse_t2") {
  const auto h = h2();
  const auto t2 = mp2_t2(h, fock_diagonal(h));
  std::stringstream buffer;
  write_t2(t2, buffer);
  CHECK(parse_t2(buffer) == t2);

  const auto h4 = oracle::random_hamiltonian(4, 2, 2, 7);
  Eigen::VectorXd eps(4);
  eps << -1.1, -0.6, 0.4, 0.9;
  const auto t2b = mp2_t2(h4, eps);
  std::stringstream buffer2;
  write_t2(t2b, buffer2);
  CHECK(parse_t2(buffer2) == t2b);
}
