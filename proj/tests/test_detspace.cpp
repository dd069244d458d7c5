// Copyright 2026 The qsci-lab Authors
// SPDX-License-Identifier: Apache-2.0

#include "qsci/detspace.hpp"

#include <doctest.h>

#include "oracles.hpp"
#include "qsci/rng.hpp"

using namespace qsci;

TEST_CASE("enumerate_strings: small cases") {
  const auto two_one = enumerate_strings(2, 1);
  REQUIRE(two_one.size() == 2);
  CHECK(two_one[0].bits == 0b01);
  CHECK(two_one[1].bits == 0b10);

  const auto four_two = enumerate_strings(4, 2);
  REQUIRE(four_two.size() == 6);
  CHECK(four_two.front().bits == 0b0011);
  CHECK(four_two.back().bits == 0b1100);
  for (std::size_t i = 1; i < four_two.size(); ++i)
    CHECK(four_two[i - 1].bits < four_two[i].bits);
}

TEST_CASE("enumerate_strings: C(26,5) matches the independent binomial") {
  // Binomial computed by the multiplicative recurrence, not by enumeration.
  auto choose = [](int n, int k) {
    std::uint64_t c = 1;
    for (int i = 1; i <= k; ++i) c = c * std::uint64_t(n - k + i) / i;
    return c;
  };
  CHECK(enumerate_strings(26, 5).size() == choose(26, 5));
  CHECK(choose(26, 5) == 65780);
}

TEST_CASE("enumerate_strings: rejects k > N") {
  CHECK_THROWS_AS(enumerate_strings(3, 4), std::invalid_argument);
}

TEST_CASE("split/join round-trip") {
  CHECK(split_raw(RawBitstring{0}, 3).first.bits == 0);
  CHECK(split_raw(RawBitstring{0}, 3).second.bits == 0);

  // N=3, x = 0b101_011: alpha = 011, beta = 101.
  const RawBitstring x{0b101011};
  const auto [a, b] = split_raw(x, 3);
  CHECK(a.bits == 0b011);
  CHECK(b.bits == 0b101);
  CHECK(join_strings(a, b, 3).bits == x.bits);

  Rng rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + int(rng.below(32));
    const std::uint64_t bits = rng.next() & ((n == 32) ? ~std::uint64_t{0}
                                                        : ((std::uint64_t{1} << (2 * n)) - 1));
    const RawBitstring raw{bits};
    const auto [alpha, beta] = split_raw(raw, n);
    CHECK(join_strings(alpha, beta, n).bits == raw.bits);
  }
}

TEST_CASE("render_bits: leftmost character is the highest beta bit") {
  // N=2: alpha = 01 (orbital 0), beta = 10 (orbital 1) -> "1001".
  const auto raw = join_strings(SpinString{0b01}, SpinString{0b10}, 2);
  CHECK(render_bits(raw, 2) == "1001");
  CHECK(parse_bits("1001", 2).bits == raw.bits);
  // alpha-high order swaps the halves on disk.
  CHECK(render_bits(raw, 2, BitOrder::kAlphaHigh) == "0110");
  CHECK(parse_bits("0110", 2, BitOrder::kAlphaHigh).bits == raw.bits);
}

TEST_CASE("excitation: identity, single, and brute-force sign checks") {
  SUBCASE("identity") {
    const Determinant d{SpinString{0b0011}, SpinString{0b0101}};
    const auto ex = excitation(d, d);
    CHECK(ex.degree == 0);
    CHECK(ex.sign == 1);
  }
  SUBCASE("adjacent single excitation: 0011 -> 0101") {
    const Determinant from{SpinString{0b0011}, SpinString{0b0011}};
    const Determinant to{SpinString{0b0101}, SpinString{0b0011}};
    const auto ex = excitation(from, to);
    CHECK(ex.degree == 1);
    REQUIRE(ex.holes_alpha.size() == 1);
    CHECK(ex.holes_alpha[0] == 1);
    CHECK(ex.particles_alpha[0] == 2);
    CHECK(ex.sign == 1);
  }
  SUBCASE("unequal electron counts rejected") {
    const Determinant a{SpinString{0b0011}, SpinString{0b0011}};
    const Determinant b{SpinString{0b0111}, SpinString{0b0011}};
    CHECK_THROWS_AS(excitation(a, b), std::invalid_argument);
  }
}

TEST_CASE("excitation: 0011 -> 1001 sign against operator algebra") {
  // Hole 1 -> particle 3 with orbital 0 occupied throughout. The oracle
  // applies a+_3 a_1 explicitly.
  const std::uint64_t ket = 0b0011;
  const auto k1 = oracle::annihilate(ket, 1);
  REQUIRE(k1);
  const auto k2 = oracle::create(k1->bits, 3);
  REQUIRE(k2);
  const int oracle_sign = k1->sign * k2->sign;

  const Determinant from{SpinString{0b0011}, SpinString{0b0011}};
  const Determinant to{SpinString{0b1001}, SpinString{0b0011}};
  const auto ex = excitation(from, to);
  CHECK(ex.degree == 1);
  CHECK(ex.sign == oracle_sign);
}

TEST_CASE("slater_condon: triple excitation vanishes") {
  const Determinant from{SpinString{0b000111}, SpinString{0b000111}};
  const Determinant to{SpinString{0b111000}, SpinString{0b000111}};
  const auto h = oracle::random_hamiltonian(6, 3, 3, 5);
  CHECK(slater_condon(h, from, to) == 0.0);
}

TEST_CASE("slater_condon: H2 HF diagonal equals the closed form") {
  const auto path = std::string(QSCI_TEST_DATA_DIR) + "/h2_sto6g_0.735.fcidump";
  const auto h = parse_fcidump_file(path);
  const Determinant hf{SpinString{0b01}, SpinString{0b01}};
  const double expected =
      2.0 * h.one_body(0, 0) + h.two_body(0, 0, 0, 0) + h.core_energy();
  CHECK(slater_condon(h, hf, hf) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("slater_condon: full operator-matrix equivalence at N = 4") {
  // Every pair in the (2,2) space of a random symmetric integral set.
  const auto h = oracle::random_hamiltonian(4, 2, 2, 42);
  std::vector<Determinant> space;
  for (const auto& a : enumerate_strings(4, 2))
    for (const auto& b : enumerate_strings(4, 2))
      space.push_back(Determinant{a, b});
  REQUIRE(space.size() == 36);

  const Eigen::MatrixXd reference = oracle::operator_matrix(h, space);
  double worst = 0.0;
  for (std::size_t i = 0; i < space.size(); ++i)
    for (std::size_t j = 0; j < space.size(); ++j)
      worst = std::max(worst, std::abs(slater_condon(h, space[j], space[i]) -
                                       reference(i, j)));
  CHECK(worst <= 1e-12);
}

TEST_CASE("slater_condon: symmetric in its determinant arguments") {
  const auto h = oracle::random_hamiltonian(5, 2, 3, 77);
  const auto alphas = enumerate_strings(5, 2);
  const auto betas = enumerate_strings(5, 3);
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const Determinant a{alphas[rng.below(alphas.size())],
                        betas[rng.below(betas.size())]};
    const Determinant b{alphas[rng.below(alphas.size())],
                        betas[rng.below(betas.size())]};
    CHECK(slater_condon(h, a, b) ==
          doctest::Approx(slater_condon(h, b, a)).epsilon(1e-14));
  }
}

TEST_CASE("excitation sign flips consistently under hole/particle swap") {
  // Reversing a single excitation keeps the sign (the operator algebra is
  // Hermitian); verified against the oracle on the full (2,2) space of 4
  // orbitals.
  const auto alphas = enumerate_strings(4, 2);
  for (const auto& a1 : alphas)
    for (const auto& a2 : alphas) {
      const Determinant d1{a1, alphas[0]};
      const Determinant d2{a2, alphas[0]};
      const auto fwd = excitation(d1, d2);
      const auto rev = excitation(d2, d1);
      if (fwd.degree > 2 || fwd.degree == 0) continue;
      CHECK(fwd.sign * rev.sign == 1);
      CHECK((fwd.sign == 1 || fwd.sign == -1));
    }
}
