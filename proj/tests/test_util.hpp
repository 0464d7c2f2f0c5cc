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

#include <random>
#include <string>

#include "puretomo/pauli.hpp"

namespace puretomo::oracle {

// Kronecker product of explicit single-qubit matrices, first letter leftmost.
inline Matrix kron_oracle(const std::string& letters) {
  const Complex i(0, 1);
  Matrix out = Matrix::Identity(1, 1);
  for (char c : letters) {
    Matrix s(2, 2);
    switch (c) {
      case 'I': s << 1, 0, 0, 1; break;
      case 'X': s << 0, 1, 1, 0; break;
      case 'Y': s << 0, -i, i, 0; break;
      case 'Z': s << 1, 0, 0, -1; break;
      default: throw std::invalid_argument("bad letter");
    }
    Matrix next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
      for (Eigen::Index k = 0; k < out.cols(); ++k) next.block(2 * r, 2 * k, 2, 2) = out(r, k) * s;
    }
    out = next;
  }
  return out;
}

inline Matrix random_hermitian(Eigen::Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) m(r, c) = Complex(g(rng), g(rng));
  }
  return 0.5 * (m + m.adjoint());
}

inline Matrix random_unitary(Eigen::Index d, std::mt19937_64& rng) {
  Matrix m = random_hermitian(d, rng) + Complex(0, 1) * random_hermitian(d, rng);
  Eigen::HouseholderQR<Matrix> qr(m);
  return qr.householderQ() * Matrix::Identity(d, d);
}

inline Matrix random_density(Eigen::Index d, std::mt19937_64& rng) {
  Matrix g = random_hermitian(d, rng) + Complex(0, 1) * random_hermitian(d, rng);
  Matrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

}  // namespace puretomo::oracle
