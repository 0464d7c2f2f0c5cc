// Copyright 2026 The puretomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "puretomo/pauli.hpp"

#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"

using namespace puretomo;
using puretomo::oracle::kron_oracle;

TEST(pauli_string, parse_and_render) {
  auto xy = PauliString::parse("XY");
  ASSERT_EQ(xy.num_qubits(), 2);
  ASSERT_EQ(xy.letter(0), 'X');
  ASSERT_EQ(xy.letter(1), 'Y');
  ASSERT_EQ(xy.str(), "XY");

  auto id = PauliString::parse("III");
  ASSERT_TRUE(id.is_identity());
  ASSERT_EQ(id.x_bits(), 0u);
  ASSERT_EQ(id.z_bits(), 0u);

  ASSERT_THROW(PauliString::parse("AB"), std::invalid_argument);
  ASSERT_THROW(PauliString::parse(""), std::invalid_argument);
  ASSERT_THROW(PauliString::parse("XXXXXXXXX"), std::invalid_argument);
  ASSERT_NO_THROW(PauliString::parse("XXXXXXXX"));
}

TEST(pauli_string, round_trip_and_order) {
  for (int n = 1; n <= 3; ++n) {
    auto all = all_paulis(n);
    ASSERT_EQ(all.size(), std::size_t{1} << (2 * n));
    for (std::size_t k = 0; k < all.size(); ++k) {
      ASSERT_EQ(PauliString::parse(all[k].str()), all[k]);
      ASSERT_EQ(all[k].index(), k);
      ASSERT_EQ(PauliString::from_index(n, static_cast<std::uint32_t>(k)), all[k]);
      if (k) ASSERT_LT(all[k - 1], all[k]);
    }
  }
  ASSERT_EQ(all_paulis(2)[1].str(), "IX");
  ASSERT_EQ(all_paulis(2)[4].str(), "XI");
}

TEST(pauli_matrix, examples) {
  Matrix z = pauli_matrix(PauliString::parse("Z"));
  Matrix expect_z(2, 2);
  expect_z << 1, 0, 0, -1;
  ASSERT_LT(max_abs(z - expect_z), 1e-15);
  ASSERT_LT(max_abs(pauli_matrix(PauliString::parse("II")) - Matrix::Identity(4, 4)), 1e-15);

  Matrix zz = pauli_matrix(PauliString::parse("ZZ"));
  Matrix diag = Matrix::Zero(4, 4);
  diag.diagonal() << 1, -1, -1, 1;
  ASSERT_LT(max_abs(zz - diag), 1e-15);
}

TEST(pauli_matrix, matches_kronecker_oracle) {
  for (int n = 1; n <= 3; ++n) {
    for (const auto& p : all_paulis(n)) {
      Matrix m = pauli_matrix(p);
      ASSERT_LT(max_abs(m - kron_oracle(p.str())), 1e-15) << p.str();
      ASSERT_TRUE(is_hermitian(m));
      ASSERT_LT(max_abs(m * m - Matrix::Identity(m.rows(), m.rows())), 1e-15);
      double expected_trace = p.is_identity() ? static_cast<double>(m.rows()) : 0.0;
      ASSERT_NEAR(m.trace().real(), expected_trace, 1e-15);
    }
  }
}

TEST(pauli_matrix, add_pauli_matches_dense) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (const auto& p : all_paulis(3)) {
    Complex c(g(rng), g(rng));
    Matrix m = Matrix::Zero(8, 8);
    add_pauli(m, p, c);
    ASSERT_LT(max_abs(m - c * kron_oracle(p.str())), 1e-14);
  }
}

TEST(commutes, examples) {
  auto P = [](const char* s) { return PauliString::parse(s); };
  ASSERT_FALSE(commutes(P("X"), P("Y")));
  ASSERT_TRUE(commutes(P("XI"), P("IX")));
  ASSERT_TRUE(commutes(P("XX"), P("YY")));
  ASSERT_THROW(commutes(P("X"), P("XX")), std::invalid_argument);
}

TEST(commutes, agrees_with_matrix_commutator_exhaustive) {
  auto all = all_paulis(2);
  for (const auto& p : all) {
    for (const auto& q : all) {
      Matrix a = kron_oracle(p.str()), b = kron_oracle(q.str());
      bool matrix_commute = max_abs(a * b - b * a) < 1e-12;
      ASSERT_EQ(commutes(p, q), matrix_commute) << p.str() << " " << q.str();
    }
  }
}

TEST(pauli_product, examples) {
  auto P = [](const char* s) { return PauliString::parse(s); };
  auto xy = pauli_product(P("X"), P("Y"));
  ASSERT_EQ(xy.result, P("Z"));
  ASSERT_EQ(xy.phase.value(), Complex(0, 1));

  auto xx = pauli_product(P("X"), P("X"));
  ASSERT_EQ(xx.result, P("I"));
  ASSERT_EQ(xx.phase.value(), Complex(1, 0));

  auto ab = pauli_product(P("IIZ"), P("IZI"));
  auto abc = pauli_product(ab.result, P("ZII"));
  ASSERT_EQ(abc.result, P("ZZZ"));
  ASSERT_EQ(ab.phase.value() * abc.phase.value(), Complex(1, 0));
  ASSERT_LT(max_abs(kron_oracle("IIZ") * kron_oracle("IZI") * kron_oracle("ZII") - kron_oracle("ZZZ")), 1e-15);
}

TEST(pauli_product, phase_exhaustive) {
  for (int n : {1, 2}) {
    auto all = all_paulis(n);
    for (const auto& p : all) {
      for (const auto& q : all) {
        auto r = pauli_product(p, q);
        ASSERT_EQ(r.result.x_bits(), p.x_bits() ^ q.x_bits());
        ASSERT_EQ(r.result.z_bits(), p.z_bits() ^ q.z_bits());
        Matrix lhs = kron_oracle(p.str()) * kron_oracle(q.str());
        ASSERT_LT(max_abs(lhs - r.phase.value() * kron_oracle(r.result.str())), 1e-12) << p.str() << q.str();
      }
    }
  }
}

TEST(pauli_matrix, orthogonality) {
  auto all = all_paulis(2);
  for (const auto& p : all) {
    for (const auto& q : all) {
      Complex tr = (kron_oracle(p.str()) * pauli_matrix(q)).trace();
      ASSERT_NEAR(std::abs(tr), p == q ? 4.0 : 0.0, 1e-14);
    }
  }
}

TEST(expectation, examples) {
  Matrix zero = Matrix::Zero(4, 4);
  zero(0, 0) = 1;
  ASSERT_NEAR(expectation(zero, PauliString::parse("ZZ")), 1.0, 1e-15);
  ASSERT_NEAR(expectation(Matrix::Identity(4, 4) / 4.0, PauliString::parse("XX")), 0.0, 1e-15);

  StateVector ghz = StateVector::Zero(8);
  ghz[0] = ghz[7] = 1 / std::sqrt(2.0);
  Matrix rho = ghz * ghz.adjoint();
  ASSERT_NEAR(expectation(rho, PauliString::parse("XXX")), (rho * kron_oracle("XXX")).trace().real(), 1e-15);
  ASSERT_NEAR(expectation(rho, PauliString::parse("XXX")), 1.0, 1e-14);

  ASSERT_THROW(expectation(zero, PauliString::parse("Z")), std::invalid_argument);
  Matrix bad = zero;
  bad(0, 1) = 1;
  ASSERT_THROW(expectation(bad, PauliString::parse("ZZ")), std::invalid_argument);
}

TEST(decompose, examples) {
  auto c = decompose(Matrix::Identity(2, 2));
  ASSERT_EQ(c.basis.size(), 4u);
  ASSERT_NEAR(c.alphas[0], 1, 1e-15);
  for (int k = 1; k < 4; ++k) ASSERT_NEAR(c.alphas[k], 0, 1e-15);

  Matrix z(2, 2);
  z << 1, 0, 0, -1;
  c = decompose(z);
  ASSERT_EQ(c.basis[3].str(), "Z");
  ASSERT_NEAR(c.alphas[3], 1, 1e-15);

  Matrix v = Matrix::Zero(8, 8);
  v(0, 0) = 4;
  v(7, 7) = -4;
  c = decompose(v);
  for (std::size_t k = 0; k < c.basis.size(); ++k) {
    std::string s = c.basis[k].str();
    bool in_f1 = s == "IIZ" || s == "IZI" || s == "ZII" || s == "ZZZ";
    ASSERT_NEAR(c.alphas[k], in_f1 ? 1.0 : 0.0, 1e-14) << s;
  }

  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = 1;
  ASSERT_THROW(decompose(bad), std::invalid_argument);
}

TEST(decompose, compose_round_trip) {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 3; ++n) {
    for (int t = 0; t < 5; ++t) {
      Matrix h = oracle::random_hermitian(Eigen::Index{1} << n, rng);
      ASSERT_LT(max_abs(compose(decompose(h)) - h), 1e-10);
    }
  }
}

TEST(pauli_coefficients, validate) {
  PauliCoefficients dup{1, parse_paulis({"X", "X"}), {1, 2}};
  ASSERT_THROW(dup.validate(), std::invalid_argument);
  PauliCoefficients len{1, parse_paulis({"X", "Y"}), {1}};
  ASSERT_THROW(len.validate(), std::invalid_argument);
  PauliCoefficients ok{1, parse_paulis({"X", "Y"}), {1, 2}};
  ASSERT_NO_THROW(ok.validate());
}
