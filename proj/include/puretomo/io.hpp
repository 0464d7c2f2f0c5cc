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

#include <string>

#include "json.hpp"
#include "puretomo/hypergraph.hpp"
#include "puretomo/optics.hpp"
#include "puretomo/pauli.hpp"
#include "puretomo/tomography.hpp"
#include "puretomo/uda.hpp"

namespace puretomo {

/// Documents keep their keys in insertion order so output is stable.
using Json = nlohmann::ordered_json;

/// Errors name the file and, where possible, the offending field.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& doc);
void write_text_file(const std::string& path, const std::string& text);

/// {"n": 2, "paulis": ["II", ...]}
MeasurementSet set_from_json(const Json& doc);
Json set_to_json(const MeasurementSet& a);

/// {"n": 2, "entries": [{"pauli": "ZZ", "value": 1.0, "shots": 100}, ...]}
MeasurementRecord record_from_json(const Json& doc);
Json record_to_json(const MeasurementRecord& rec);

/// {"dim": d, "entries": [[re, im], ...]} in row-major order.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& doc);

/// A pure state {"amplitudes": [[re, im], ...]} or a density matrix
/// {"dim": d, "entries": ...}. Pure states are returned as projectors.
Matrix target_from_json(const Json& doc);

/// {"setting": "XY", "counts": [N_tt, N_tr, N_rt, N_rr]}
CoincidenceCounts counts_from_json(const Json& doc);

Json hypergraph_to_json(const FailingSetHypergraph& h);

Json paulis_to_json(const std::vector<PauliString>& ps);

}  // namespace puretomo
