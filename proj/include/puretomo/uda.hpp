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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "puretomo/hypergraph.hpp"
#include "puretomo/pauli.hpp"

namespace puretomo {

/// An ordered set of distinct Pauli strings on n qubits that always
/// contains the identity.
class MeasurementSet {
 public:
  MeasurementSet(int n, std::vector<PauliString> paulis);
  static MeasurementSet parse(const std::vector<std::string>& texts);

  int num_qubits() const { return n_; }
  const std::vector<PauliString>& paulis() const { return paulis_; }
  std::size_t size() const { return paulis_.size(); }
  bool contains(const PauliString& p) const;

 private:
  int n_;
  std::vector<PauliString> paulis_;
  std::vector<bool> member_;  // indexed by canonical index
};

struct EigenSignature {
  int n_pos = 0;
  int n_neg = 0;
  int n_zero = 0;
  double tol = 0.0;

  bool operator==(const EigenSignature& o) const {
    return n_pos == o.n_pos && n_neg == o.n_neg && n_zero == o.n_zero;
  }
};

/// 1e-9 scaled by the largest entry magnitude, floored at 1.
double default_zero_tol(const Matrix& h);

/// Counts eigenvalues above tol, below -tol and in between. Throws
/// std::runtime_error if the eigensolver does not converge.
EigenSignature eigen_signature(const Matrix& h, double tol);

/// Ascending eigenvalues of a Hermitian matrix; throws on non-convergence.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& h);

/// Every Pauli string not in `a`, in canonical order.
std::vector<PauliString> complement(const MeasurementSet& a);

Matrix build_operator(const PauliCoefficients& c);

// --- failing sets --------------------------------------------------------

/// If `f` is {a, b, c, abc} with a, b, c independent and mutually commuting,
/// returns the sign-corrected coefficients (+1, +1, +1, omega) in the order
/// of `f`, where a*b*c == omega * (abc) as matrices.
std::optional<PauliCoefficients> quadruple_witness(std::span<const PauliString> f);

/// True iff a, b, c are independent as symplectic vectors.
bool independent(std::span<const PauliString> ps);

struct FailingVerdict {
  bool failing = false;
  /// False when the verdict comes from the randomized spectral search.
  bool exact = true;
  std::optional<PauliCoefficients> witness;
  std::optional<EigenSignature> witness_signature;
};

/// Decides whether some nonzero real combination of `f` has at most one
/// positive or at most one negative eigenvalue. Single strings and the
/// commuting quadruple family are decided exactly; anything else falls back
/// to the randomized search with `restarts` starts.
FailingVerdict is_failing_set(std::span<const PauliString> f, int restarts = 1000,
                              std::uint64_t seed = 0);

// --- necessity -----------------------------------------------------------

struct NecessityReport {
  bool pass = true;
  std::size_t edges_checked = 0;
  std::vector<std::vector<PauliString>> violated;
  /// Only set for two-qubit sets.
  std::optional<bool> complement_mutually_anticommuting;
};

NecessityReport verify_necessary(const MeasurementSet& a, const FailingSetHypergraph& h);

bool mutually_anticommuting(std::span<const PauliString> ps);

// --- two-qubit closed form -----------------------------------------------

/// {XX, XY, XZ, YI, ZI}: the complement of the standard 11-element set.
std::vector<PauliString> two_qubit_complement_basis();

/// All n-qubit strings except `excluded`.
MeasurementSet set_from_complement(int n, std::span<const PauliString> excluded);

/// The standard 11-element two-qubit set.
MeasurementSet two_qubit_reference_set();

struct TwoQubitCheck {
  double norm_sq = 0;            // sum of alpha^2
  double square_error = 0;       // max |H^2 - norm_sq I|
  double determinant = 0;
  double determinant_rel_error = 0;
  EigenSignature signature;
  bool pass = false;
};

TwoQubitCheck two_qubit_closed_form_check(const std::array<double, 5>& alpha);

// --- numerical sufficiency ----------------------------------------------

struct SufficiencyOptions {
  int restarts = 1000;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  int threads = 1;
  int max_iters = 80;
  /// Also evaluate sign-corrected sums of commuting pairs and quadruples
  /// found inside the complement before the random restarts.
  bool structured_starts = true;
};

struct SufficiencyReport {
  /// Minimum over unit coefficient vectors of the second-largest eigenvalue.
  double min_second_largest = 0;
  /// Maximum of the second-smallest eigenvalue.
  double max_second_smallest = 0;
  int restarts = 0;
  int structured_candidates = 0;
  std::optional<PauliCoefficients> witness;

  double margin() const;
  bool violated(double tol) const;
};

/// Multi-start projected-gradient search for the extremes of the
/// second-largest and second-smallest eigenvalues of H(alpha) over unit
/// alpha in the span of `basis`. Deterministic for a fixed seed regardless
/// of the thread count.
SufficiencyReport spectral_search(int n, std::span<const PauliString> basis,
                                  const SufficiencyOptions& opts);

SufficiencyReport verify_sufficient_numeric(const MeasurementSet& a,
                                            const SufficiencyOptions& opts);

// --- 8x8 structure of the three-qubit complement ----------------------------

/// The 33 strings missing from the standard 31-element three-qubit set, in
/// canonical order (IXZ, IYZ, IZX, ..., ZZI).
std::vector<PauliString> three_qubit_complement_basis();

/// The standard 31-element three-qubit set.
MeasurementSet three_qubit_reference_set();

struct StructureCheck {
  double anti_diagonal = 0;     // max |c_{k,9-k}|
  double diagonal_pairs = 0;    // c55=c44, c66=c33, c77=c22, c88=c11
  double negated_pairs = 0;     // c78=-c12, c56=-c34, ...
  double linear_relations = 0;  // c48, c47, c46 relations
  Matrix h;

  double max_deviation() const;
};

StructureCheck appendix_structure_check(std::span<const double> x);

}  // namespace puretomo
