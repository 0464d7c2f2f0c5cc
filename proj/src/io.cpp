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

#include "puretomo/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace puretomo {

namespace {

const Json& field(const Json& doc, const char* key) {
  if (!doc.is_object()) throw std::invalid_argument("expected a JSON object holding field '" + std::string(key) + "'");
  auto it = doc.find(key);
  if (it == doc.end()) throw std::invalid_argument("missing field '" + std::string(key) + "'");
  return *it;
}

int qubit_field(const Json& doc) {
  const Json& n = field(doc, "n");
  if (!n.is_number_integer()) throw std::invalid_argument("field 'n' must be an integer");
  int v = n.get<int>();
  if (v < 1 || v > kMaxQubits) {
    throw std::invalid_argument("field 'n' = " + std::to_string(v) + " outside [1, " + std::to_string(kMaxQubits) +
                                "]");
  }
  return v;
}

PauliString pauli_field(const Json& j, int n, const std::string& where) {
  if (!j.is_string()) throw std::invalid_argument(where + " must be a Pauli string");
  PauliString p;
  try {
    p = PauliString::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(where + ": " + e.what());
  }
  if (p.num_qubits() != n) {
    throw std::invalid_argument(where + " = " + p.str() + " does not have n = " + std::to_string(n) + " letters");
  }
  return p;
}

Complex complex_field(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw std::invalid_argument(where + " must be a [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write file '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

void write_json_file(const std::string& path, const Json& doc) { write_text_file(path, doc.dump(2) + "\n"); }

Json paulis_to_json(const std::vector<PauliString>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(p.str());
  return out;
}

MeasurementSet set_from_json(const Json& doc) {
  int n = qubit_field(doc);
  const Json& list = field(doc, "paulis");
  if (!list.is_array()) throw std::invalid_argument("field 'paulis' must be a list");
  std::vector<PauliString> ps;
  for (std::size_t i = 0; i < list.size(); ++i) {
    ps.push_back(pauli_field(list[i], n, "paulis[" + std::to_string(i) + "]"));
  }
  return MeasurementSet(n, std::move(ps));
}

Json set_to_json(const MeasurementSet& a) {
  Json doc;
  doc["n"] = a.num_qubits();
  doc["size"] = a.size();
  doc["paulis"] = paulis_to_json(a.paulis());
  return doc;
}

MeasurementRecord record_from_json(const Json& doc) {
  int n = qubit_field(doc);
  const Json& list = field(doc, "entries");
  if (!list.is_array()) throw std::invalid_argument("field 'entries' must be a list");
  MeasurementRecord rec(n);
  for (std::size_t i = 0; i < list.size(); ++i) {
    std::string where = "entries[" + std::to_string(i) + "]";
    const Json& e = list[i];
    RecordEntry entry{pauli_field(field(e, "pauli"), n, where + ".pauli"), 0.0, std::nullopt};
    const Json& v = field(e, "value");
    if (!v.is_number()) throw std::invalid_argument(where + ".value must be a number");
    entry.value = v.get<double>();
    if (auto s = e.find("shots"); s != e.end() && !s->is_null()) {
      if (!s->is_number_unsigned()) throw std::invalid_argument(where + ".shots must be a non-negative integer");
      entry.shots = s->get<std::uint64_t>();
    }
    if (rec.find(entry.pauli)) throw std::invalid_argument(where + ".pauli = " + entry.pauli.str() + " is repeated");
    try {
      rec.set(entry);
    } catch (const std::invalid_argument& ex) {
      throw std::invalid_argument(where + ": " + ex.what());
    }
  }
  return rec;
}

Json record_to_json(const MeasurementRecord& rec) {
  Json doc;
  doc["n"] = rec.num_qubits();
  Json list = Json::array();
  for (const auto& e : rec.entries()) {
    Json j;
    j["pauli"] = e.pauli.str();
    j["value"] = e.value;
    if (e.shots) j["shots"] = *e.shots;
    list.push_back(std::move(j));
  }
  doc["entries"] = std::move(list);
  return doc;
}

Json matrix_to_json(const Matrix& m) {
  Json doc;
  doc["dim"] = m.rows();
  Json list = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) list.push_back({m(i, j).real(), m(i, j).imag()});
  }
  doc["entries"] = std::move(list);
  return doc;
}

Matrix matrix_from_json(const Json& doc) {
  const Json& dim = field(doc, "dim");
  if (!dim.is_number_unsigned() || dim.get<std::size_t>() == 0) {
    throw std::invalid_argument("field 'dim' must be a positive integer");
  }
  auto d = dim.get<Eigen::Index>();
  const Json& list = field(doc, "entries");
  if (!list.is_array() || static_cast<Eigen::Index>(list.size()) != d * d) {
    throw std::invalid_argument("field 'entries' must hold dim*dim = " + std::to_string(d * d) + " pairs");
  }
  Matrix m(d, d);
  for (Eigen::Index k = 0; k < d * d; ++k) {
    m(k / d, k % d) = complex_field(list[static_cast<std::size_t>(k)], "entries[" + std::to_string(k) + "]");
  }
  return m;
}

Matrix target_from_json(const Json& doc) {
  if (doc.is_object() && doc.contains("amplitudes")) {
    const Json& list = doc["amplitudes"];
    if (!list.is_array()) throw std::invalid_argument("field 'amplitudes' must be a list");
    StateVector phi(static_cast<Eigen::Index>(list.size()));
    for (std::size_t k = 0; k < list.size(); ++k) {
      phi[static_cast<Eigen::Index>(k)] = complex_field(list[k], "amplitudes[" + std::to_string(k) + "]");
    }
    qubits_for_dim(list.size());
    if (std::abs(phi.norm() - 1.0) > 1e-8) throw std::invalid_argument("field 'amplitudes' is not normalized");
    return projector(phi);
  }
  Matrix rho = matrix_from_json(doc);
  validate_density_matrix(rho, 1e-8);
  return rho;
}

CoincidenceCounts counts_from_json(const Json& doc) {
  const Json& s = field(doc, "setting");
  if (!s.is_string()) throw std::invalid_argument("field 'setting' must be a letter string");
  Setting setting = Setting::parse(s.get<std::string>());
  const Json& list = field(doc, "counts");
  if (!list.is_array()) throw std::invalid_argument("field 'counts' must be a list");
  CoincidenceCounts c{setting, {}};
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (!list[i].is_number_unsigned()) {
      throw std::invalid_argument("counts[" + std::to_string(i) + "] must be a non-negative integer");
    }
    c.counts.push_back(list[i].get<std::uint64_t>());
  }
  std::size_t expected = std::size_t{1} << setting.num_qubits();
  if (c.counts.size() != expected) {
    throw std::invalid_argument("field 'counts' has " + std::to_string(c.counts.size()) + " entries, setting " +
                                setting.str() + " needs " + std::to_string(expected));
  }
  return c;
}

Json hypergraph_to_json(const FailingSetHypergraph& h) {
  Json doc;
  doc["n"] = h.n;
  doc["vertex_count"] = h.vertices.size();
  doc["edge_count"] = h.edges.size();
  doc["vertices"] = paulis_to_json(h.vertices);
  Json edges = Json::array();
  for (const auto& e : h.edges) edges.push_back(paulis_to_json(e));
  doc["edges"] = std::move(edges);
  return doc;
}

}  // namespace puretomo
