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
#include <span>
#include <vector>

#include "puretomo/hypergraph.hpp"
#include "puretomo/pauli.hpp"
#include "puretomo/uda.hpp"

namespace puretomo {

/// n = 2: all commuting pairs of distinct non-identity strings.
/// n = 3: all {a, b, c, abc} with a, b, c independent and mutually commuting,
/// each validated by its exact (1, 1, 6) signature.
FailingSetHypergraph enumerate_failing_sets(int n);

struct SearchResult {
  std::vector<PauliString> best_subset;
  std::uint64_t nodes_explored = 0;
  bool optimal = false;
};

struct SearchOptions {
  /// Stop after this many nodes (0 = unlimited); `optimal` is then false.
  std::uint64_t node_limit = 0;
};

/// Maximum vertex subset of `h` containing no edge, by branch and bound.
SearchResult max_failing_free_subset(const FailingSetHypergraph& h, const SearchOptions& opts = {});

struct CandidateResult {
  MeasurementSet set;
  SearchResult search;
  std::size_t edges = 0;
};

/// Identity plus every non-identity string outside the maximum
/// failing-free subset. Only necessity is guaranteed; sufficiency must be
/// certified separately.
CandidateResult min_uda_candidate(int n);

struct OrbitResult {
  /// Each member sorted by (x_bits, z_bits); members in discovery order.
  std::vector<std::vector<PauliString>> sets;
  /// False when the search stopped at max_size before closure.
  bool closed = false;
};

/// Orbit of a set of signless strings under Hadamard, Phase and CNOT.
OrbitResult clifford_orbit(std::span<const PauliString> s, std::size_t max_size);

/// Sort key used by clifford_orbit.
void sort_by_masks(std::vector<PauliString>& s);

}  // namespace puretomo
