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

#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace puretomo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

inline constexpr int kMaxQubits = 8;

/// An n-qubit tensor product of {I, X, Y, Z}, stored as a pair of bit masks.
///
/// Qubit i (the i-th letter of the text form, left to right) lives in bit
/// n-1-i of both masks, so the masks line up with computational-basis
/// indices where qubit 0 is the most significant bit. Letter encoding per
/// qubit is (x, z): I=(0,0), X=(1,0), Y=(1,1), Z=(0,1).
class PauliString {
 public:
  PauliString() = default;
  PauliString(int n, std::uint32_t x_bits, std::uint32_t z_bits);

  static PauliString identity(int n);
  /// Parses an uppercase letter string such as "IXZ".
  static PauliString parse(std::string_view text);
  /// The string with index `index` in canonical order (base-4 digits
  /// I=0, X=1, Y=2, Z=3, first letter most significant).
  static PauliString from_index(int n, std::uint32_t index);

  int num_qubits() const { return n_; }
  std::uint32_t x_bits() const { return x_; }
  std::uint32_t z_bits() const { return z_; }
  std::size_t dim() const { return std::size_t{1} << n_; }

  char letter(int qubit) const;
  std::string str() const;
  std::uint32_t index() const;
  bool is_identity() const { return x_ == 0 && z_ == 0; }
  int weight() const;

  /// Signless product: the string whose masks are the XOR of both.
  PauliString operator*(const PauliString& other) const;

  /// Canonical order: lexicographic in letters with I < X < Y < Z.
  friend bool operator<(const PauliString& a, const PauliString& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.index() < b.index();
  }
  friend bool operator==(const PauliString& a, const PauliString& b) = default;

 private:
  int n_ = 0;
  std::uint32_t x_ = 0;
  std::uint32_t z_ = 0;
};

/// Phase i^exponent, exponent taken mod 4.
struct Phase {
  int exponent = 0;
  Complex value() const;
  friend bool operator==(const Phase&, const Phase&) = default;
};

struct PauliProduct {
  PauliString result;
  Phase phase;
};

/// Real coefficients over an ordered basis of distinct Pauli strings.
struct PauliCoefficients {
  int n = 0;
  std::vector<PauliString> basis;
  std::vector<double> alphas;

  /// Throws if the basis has duplicates, mixed qubit counts, or the
  /// lengths of `basis` and `alphas` disagree.
  void validate() const;
};

/// All 4^n strings in canonical order.
std::vector<PauliString> all_paulis(int n);
std::vector<PauliString> parse_paulis(const std::vector<std::string>& texts);

Matrix pauli_matrix(const PauliString& p);

/// True iff the symplectic inner product vanishes.
bool commutes(const PauliString& p, const PauliString& q);

/// matrix(p) * matrix(q) == phase * matrix(result), with the phase exact.
PauliProduct pauli_product(const PauliString& p, const PauliString& q);

/// Accumulates coeff * matrix(p) into `m` without materializing matrix(p).
void add_pauli(Matrix& m, const PauliString& p, Complex coeff);

/// Re tr(rho * matrix(p)). `rho` must be Hermitian.
double expectation(const Matrix& rho, const PauliString& p);

/// Re tr(m * matrix(p)) without validation; hot-path helper.
Complex trace_with_pauli(const Matrix& m, const PauliString& p);

/// Pauli-basis coefficients tr(H sigma_k) / d over all 4^n strings.
PauliCoefficients decompose(const Matrix& h);
Matrix compose(const PauliCoefficients& c);

double max_abs(const Matrix& m);
bool is_hermitian(const Matrix& m, double rel_tol = 1e-12);
void require_hermitian(const Matrix& m, const char* what);
/// log2 of a power-of-two dimension; throws otherwise.
int qubits_for_dim(std::size_t d);

}  // namespace puretomo
