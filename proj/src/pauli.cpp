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

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

namespace puretomo {

namespace {

void require_qubits(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument("qubit count " + std::to_string(n) + " outside [1, " +
                                std::to_string(kMaxQubits) + "]");
  }
}

void require_same_n(const PauliString& p, const PauliString& q) {
  if (p.num_qubits() != q.num_qubits()) {
    throw std::invalid_argument("qubit count mismatch: " + p.str() + " vs " + q.str());
  }
}

// Sign and phase of matrix(p) acting on basis state |col>:
// p|col> = i^{|x&z|} (-1)^{|col&z|} |col ^ x>.
inline Complex column_factor(const PauliString& p, std::uint32_t col) {
  static const Complex kI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  int e = std::popcount(p.x_bits() & p.z_bits()) + 2 * std::popcount(col & p.z_bits());
  return kI[e & 3];
}

}  // namespace

PauliString::PauliString(int n, std::uint32_t x_bits, std::uint32_t z_bits)
    : n_(n), x_(x_bits), z_(z_bits) {
  require_qubits(n);
  std::uint32_t mask = (std::uint32_t{1} << n) - 1;
  if ((x_bits | z_bits) & ~mask) {
    throw std::invalid_argument("pauli masks exceed qubit count");
  }
}

PauliString PauliString::identity(int n) { return PauliString(n, 0, 0); }

PauliString PauliString::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty pauli string");
  if (text.size() > static_cast<std::size_t>(kMaxQubits)) {
    throw std::invalid_argument("pauli string '" + std::string(text) + "' longer than " +
                                std::to_string(kMaxQubits) + " qubits");
  }
  int n = static_cast<int>(text.size());
  std::uint32_t x = 0, z = 0;
  for (int i = 0; i < n; ++i) {
    std::uint32_t bit = std::uint32_t{1} << (n - 1 - i);
    switch (text[i]) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      case 'Z': z |= bit; break;
      default:
        throw std::invalid_argument("invalid character '" + std::string(1, text[i]) +
                                    "' in pauli string '" + std::string(text) + "'");
    }
  }
  return PauliString(n, x, z);
}

PauliString PauliString::from_index(int n, std::uint32_t index) {
  require_qubits(n);
  std::uint32_t x = 0, z = 0;
  for (int q = n - 1; q >= 0; --q) {
    std::uint32_t bit = std::uint32_t{1} << (n - 1 - q);
    switch (index & 3) {
      case 1: x |= bit; break;
      case 2: x |= bit; z |= bit; break;
      case 3: z |= bit; break;
      default: break;
    }
    index >>= 2;
  }
  return PauliString(n, x, z);
}

char PauliString::letter(int qubit) const {
  std::uint32_t bit = std::uint32_t{1} << (n_ - 1 - qubit);
  bool xb = x_ & bit, zb = z_ & bit;
  if (xb) return zb ? 'Y' : 'X';
  return zb ? 'Z' : 'I';
}

std::string PauliString::str() const {
  std::string s(static_cast<std::size_t>(n_), 'I');
  for (int i = 0; i < n_; ++i) s[i] = letter(i);
  return s;
}

std::uint32_t PauliString::index() const {
  std::uint32_t idx = 0;
  for (int i = 0; i < n_; ++i) {
    std::uint32_t bit = std::uint32_t{1} << (n_ - 1 - i);
    bool xb = x_ & bit, zb = z_ & bit;
    std::uint32_t code = xb ? (zb ? 2u : 1u) : (zb ? 3u : 0u);
    idx = idx * 4 + code;
  }
  return idx;
}

int PauliString::weight() const { return std::popcount(x_ | z_); }

PauliString PauliString::operator*(const PauliString& other) const {
  require_same_n(*this, other);
  return PauliString(n_, x_ ^ other.x_, z_ ^ other.z_);
}

Complex Phase::value() const {
  static const Complex kI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kI[((exponent % 4) + 4) % 4];
}

void PauliCoefficients::validate() const {
  if (basis.size() != alphas.size()) {
    throw std::invalid_argument("coefficient count " + std::to_string(alphas.size()) +
                                " does not match basis size " + std::to_string(basis.size()));
  }
  std::set<std::uint32_t> seen;
  for (const auto& p : basis) {
    if (p.num_qubits() != n) throw std::invalid_argument("basis element " + p.str() + " has wrong qubit count");
    if (!seen.insert(p.index()).second) throw std::invalid_argument("duplicate basis element " + p.str());
  }
}

std::vector<PauliString> all_paulis(int n) {
  require_qubits(n);
  std::uint32_t count = std::uint32_t{1} << (2 * n);
  std::vector<PauliString> out;
  out.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) out.push_back(PauliString::from_index(n, i));
  return out;
}

std::vector<PauliString> parse_paulis(const std::vector<std::string>& texts) {
  std::vector<PauliString> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(PauliString::parse(t));
  return out;
}

Matrix pauli_matrix(const PauliString& p) {
  auto d = static_cast<Eigen::Index>(p.dim());
  Matrix m = Matrix::Zero(d, d);
  add_pauli(m, p, 1.0);
  return m;
}

bool commutes(const PauliString& p, const PauliString& q) {
  require_same_n(p, q);
  int s = std::popcount(p.x_bits() & q.z_bits()) + std::popcount(p.z_bits() & q.x_bits());
  return (s & 1) == 0;
}

PauliProduct pauli_product(const PauliString& p, const PauliString& q) {
  require_same_n(p, q);
  // P = i^{|x z|} X^x Z^z; moving Z^{z1} past X^{x2} costs (-1)^{|z1 & x2|}.
  PauliString r = p * q;
  int e = std::popcount(p.x_bits() & p.z_bits()) + std::popcount(q.x_bits() & q.z_bits()) -
          std::popcount(r.x_bits() & r.z_bits()) + 2 * std::popcount(p.z_bits() & q.x_bits());
  return {r, Phase{((e % 4) + 4) % 4}};
}

void add_pauli(Matrix& m, const PauliString& p, Complex coeff) {
  auto d = static_cast<std::uint32_t>(p.dim());
  for (std::uint32_t col = 0; col < d; ++col) {
    m(col ^ p.x_bits(), col) += coeff * column_factor(p, col);
  }
}

Complex trace_with_pauli(const Matrix& m, const PauliString& p) {
  // tr(M P) = sum_c M[c][c^x] * P[c^x][c].
  auto d = static_cast<std::uint32_t>(p.dim());
  Complex acc = 0;
  for (std::uint32_t col = 0; col < d; ++col) {
    acc += m(col, col ^ p.x_bits()) * column_factor(p, col);
  }
  return acc;
}

double expectation(const Matrix& rho, const PauliString& p) {
  if (static_cast<std::size_t>(rho.rows()) != p.dim() || rho.cols() != rho.rows()) {
    throw std::invalid_argument("density matrix dimension " + std::to_string(rho.rows()) +
                                " does not match pauli " + p.str());
  }
  require_hermitian(rho, "rho");
  Complex t = trace_with_pauli(rho, p);
  if (std::abs(t.imag()) > 1e-10 * std::max(1.0, max_abs(rho))) {
    throw std::runtime_error("expectation of " + p.str() + " has imaginary part " +
                             std::to_string(t.imag()));
  }
  return t.real();
}

PauliCoefficients decompose(const Matrix& h) {
  require_hermitian(h, "operator");
  int n = qubits_for_dim(static_cast<std::size_t>(h.rows()));
  PauliCoefficients c;
  c.n = n;
  c.basis = all_paulis(n);
  c.alphas.reserve(c.basis.size());
  double d = static_cast<double>(h.rows());
  for (const auto& p : c.basis) c.alphas.push_back(trace_with_pauli(h, p).real() / d);
  return c;
}

Matrix compose(const PauliCoefficients& c) {
  c.validate();
  auto d = static_cast<Eigen::Index>(std::size_t{1} << c.n);
  Matrix m = Matrix::Zero(d, d);
  for (std::size_t k = 0; k < c.basis.size(); ++k) {
    if (c.alphas[k] != 0.0) add_pauli(m, c.basis[k], c.alphas[k]);
  }
  return m;
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool is_hermitian(const Matrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  double scale = max_abs(m);
  double dev = max_abs(m - m.adjoint());
  return dev <= rel_tol * scale;
}

void require_hermitian(const Matrix& m, const char* what) {
  if (!is_hermitian(m)) throw std::invalid_argument(std::string(what) + " is not Hermitian");
}

int qubits_for_dim(std::size_t d) {
  if (d < 2 || !std::has_single_bit(d)) {
    throw std::invalid_argument("dimension " + std::to_string(d) + " is not a power of two >= 2");
  }
  int n = std::countr_zero(d);
  require_qubits(n);
  return n;
}

}  // namespace puretomo
