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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "puretomo/pauli.hpp"
#include "puretomo/uda.hpp"

namespace puretomo {

// States -----------------------------------------------------------------------

/// Normalized vector of independent standard complex Gaussians.
StateVector haar_random_pure(int n, std::uint64_t seed);
/// (|0...0> + |1...1>) / sqrt(2).
StateVector ghz_state(int n);
Matrix projector(const StateVector& phi);

/// eta * I/d + (1 - eta) |phi><phi|.
Matrix depolarize(const StateVector& phi, double eta);

/// Throws unless rho is Hermitian, unit trace and positive semidefinite
/// within `tol`.
void validate_density_matrix(const Matrix& rho, double tol = 1e-9);

double fidelity(const Matrix& rho, const Matrix& sigma);
double purity(const Matrix& rho);

// Measurement records ----------------------------------------------------------

struct RecordEntry {
  PauliString pauli;
  double value = 0;
  std::optional<std::uint64_t> shots;
};

/// Expectation values keyed by Pauli string, kept in canonical order.
class MeasurementRecord {
 public:
  explicit MeasurementRecord(int n) : n_(n) {}

  int num_qubits() const { return n_; }
  const std::vector<RecordEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  /// Inserts or replaces the entry for e.pauli. Validates range and n.
  void set(RecordEntry e);
  const RecordEntry* find(const PauliString& p) const;

 private:
  int n_;
  std::vector<RecordEntry> entries_;
};

/// Exact expectations when `shots` is empty, otherwise the empirical mean of
/// `shots` +-1 outcomes per string.
MeasurementRecord simulate_measurements(const Matrix& rho, const MeasurementSet& a,
                                        std::optional<std::uint64_t> shots, std::uint64_t seed);

// Reconstruction ----------------------------------------------------------------

struct MleOptions {
  int restarts = 5;
  int max_iters = 5000;
  /// Applied to the gradient divided by max(1, total weight).
  double grad_tol = 1e-9;
  std::uint64_t seed = 0;
};

struct MleResult {
  Matrix rho;
  double loss = 0;
  double grad_norm = 0;
  int iterations = 0;
  /// True when the scaled gradient norm reached grad_tol.
  bool converged = false;
  /// True when no damped step lowered the loss first (rounding floor).
  bool stalled = false;
  int start = 0;
};

/// Weighted least-squares fit sum_k w_k (tr(rho sigma_k) - M_k)^2 over
/// density matrices rho = T^dagger T / tr(T^dagger T), T lower triangular.
/// Start 0 is always the maximally mixed state.
MleResult mle_reconstruct(const MeasurementRecord& record, std::size_t d, const MleOptions& opts = {});

/// One result per start, in start order.
std::vector<MleResult> mle_reconstruct_all(const MeasurementRecord& record, std::size_t d,
                                           const MleOptions& opts);

double record_loss(const MeasurementRecord& record, const Matrix& rho);

// Experiments ---------------------------------------------------------------------

struct SweepRow {
  double eta = 0;
  double mean_fidelity = 0;
  double std_fidelity = 0;
  int trials = 0;
};
using SweepTable = std::vector<SweepRow>;

struct SweepOptions {
  int trials = 100;
  std::optional<std::uint64_t> shots;
  std::uint64_t seed = 0;
  int threads = 1;
  MleOptions mle;
};

/// Trial t draws the same Haar state at every eta, so rows are directly
/// comparable.
SweepTable noise_sweep(int n, const MeasurementSet& a, std::span<const double> etas, const SweepOptions& opts);

struct BaselineOptions {
  int trials = 100;
  std::uint64_t seed = 0;
  int threads = 1;
  /// Fidelity is averaged over this many optimizer starts per subset.
  int starts = 10;
  MleOptions mle;
};

/// Uniformly random k-element Pauli set containing the identity.
MeasurementSet random_pauli_subset(int n, int k, std::uint64_t seed);

/// Fidelity of the start-averaged reconstruction pipeline for a fixed set.
double averaged_fidelity(const MeasurementSet& a, const StateVector& target, const BaselineOptions& opts,
                         std::uint64_t trial_seed);

std::vector<double> random_subset_baseline(int n, int k, const StateVector& target, const BaselineOptions& opts);

}  // namespace puretomo
