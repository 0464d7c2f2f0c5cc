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
#include <string>
#include <string_view>
#include <vector>

#include "puretomo/pauli.hpp"
#include "puretomo/tomography.hpp"
#include "puretomo/uda.hpp"

namespace puretomo {

/// A product measurement fixing one of X, Y, Z on every qubit.
class Setting {
 public:
  /// Throws if any letter of `bases` is I.
  explicit Setting(PauliString bases);
  static Setting parse(std::string_view text);

  const PauliString& bases() const { return bases_; }
  int num_qubits() const { return bases_.num_qubits(); }
  std::string str() const { return bases_.str(); }

  bool operator==(const Setting&) const = default;
  bool operator<(const Setting& o) const { return bases_ < o.bases_; }

 private:
  PauliString bases_;
};

/// All 3^n settings in canonical order.
std::vector<Setting> all_settings(int n);

/// True when every non-I letter of p matches the setting.
bool setting_covers(const Setting& s, const PauliString& p);

/// The 2^n strings obtained by replacing subsets of letters with I, in
/// canonical order.
std::vector<PauliString> covered_paulis(const Setting& s);

/// Outcome index bit for qubit q is 1 when that photon was reflected; qubit 0
/// is the most significant bit.
struct CoincidenceCounts {
  Setting setting;
  std::vector<std::uint64_t> counts;
};

MeasurementRecord counts_to_expectations(const CoincidenceCounts& c);

/// Expectation of every covered string from outcome weights (counts or
/// probabilities), normalized by their sum. Same order as covered_paulis.
std::vector<double> outcome_expectations(const Setting& s, std::span<const double> weights);

/// Born-rule outcome probabilities of a setting, in outcome-index order.
std::vector<double> outcome_probabilities(const Matrix& rho, const Setting& s);

struct SettingsCover {
  std::vector<Setting> settings;  // canonical order
  /// For each setting, the members of A that no other chosen setting covers.
  std::vector<std::vector<PauliString>> private_paulis;
  bool complete = false;
  bool irredundant = false;
  std::uint64_t nodes_explored = 0;
};

/// Exact minimum-cardinality cover of A by settings.
SettingsCover min_settings_cover(const MeasurementSet& a);

/// Merges per-setting records. Repeated strings are combined by a
/// shots-weighted average.
MeasurementRecord settings_pipeline(std::span<const CoincidenceCounts> files);

}  // namespace puretomo
