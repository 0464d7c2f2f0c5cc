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

#include <vector>

#include "puretomo/pauli.hpp"

namespace puretomo {

/// Failing sets over the non-identity Pauli strings: 2-uniform (commuting
/// pairs) for two qubits, 4-uniform (commuting quadruples closing to the
/// identity) for three.
struct FailingSetHypergraph {
  int n = 0;
  std::vector<PauliString> vertices;
  /// Each edge sorted canonically; edges sorted lexicographically.
  std::vector<std::vector<PauliString>> edges;
};

}  // namespace puretomo
