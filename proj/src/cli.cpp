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

#include "puretomo/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "CLI11.hpp"
#include "puretomo/io.hpp"
#include "puretomo/minset.hpp"
#include "puretomo/optics.hpp"
#include "puretomo/tomography.hpp"
#include "puretomo/uda.hpp"

namespace puretomo::cli {

namespace {

// Shortest text that reads back to the same double.
std::string num(double v) {
  char buf[32];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string mean_std(const std::vector<double>& v) {
  double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  double var = 0;
  for (double x : v) var += (x - mean) * (x - mean);
  var = v.size() > 1 ? var / static_cast<double>(v.size() - 1) : 0.0;
  return "mean " + num(mean) + ", std " + num(std::sqrt(var));
}

// Everything a run depends on. The worker count is left out because
// outputs do not depend on it.
struct RunConfig {
  std::string command;
  int n = 0;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  int restarts = 0;
  int threads = 1;
  int trials = 0;
  int k = 0;
  std::optional<std::uint64_t> shots;
  std::string etas;
  std::string set_path, record_path, target, out_path;
  std::vector<std::string> count_paths;

  Json to_json() const {
    Json j;
    j["command"] = command;
    if (n) j["n"] = n;
    j["seed"] = seed;
    j["tol"] = tol;
    if (restarts) j["restarts"] = restarts;
    if (trials) j["trials"] = trials;
    if (k) j["k"] = k;
    if (shots) j["shots"] = *shots;
    if (!etas.empty()) j["etas"] = etas;
    Json paths = Json::object();
    if (!set_path.empty()) paths["set"] = set_path;
    if (!record_path.empty()) paths["record"] = record_path;
    if (!target.empty()) paths["target"] = target;
    if (!count_paths.empty()) paths["counts"] = count_paths;
    if (!out_path.empty()) paths["out"] = out_path;
    j["paths"] = std::move(paths);
    return j;
  }
};

Json document(const RunConfig& cfg, const char* kind) {
  Json doc;
  doc["kind"] = kind;
  doc["config"] = cfg.to_json();
  return doc;
}

void merge_into(Json& doc, const Json& extra) {
  for (const auto& [key, value] : extra.items()) doc[key] = value;
}

// CSV tables carry their provenance in a sidecar document.
void write_csv(const RunConfig& cfg, const char* kind, const std::string& text) {
  write_text_file(cfg.out_path, text);
  write_json_file(cfg.out_path + ".run.json", document(cfg, kind));
}

std::vector<double> parse_etas(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw std::invalid_argument("--etas: '" + item + "' is not a number");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("--etas: empty list");
  return out;
}

// Parses a document, prefixing any error with the file name.
template <typename Fn>
auto load(const std::string& path, Fn&& parse) {
  Json doc = read_json_file(path);
  try {
    return parse(doc);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

// --- commands ------------------------------------------------------------------

int cmd_failing_sets(const RunConfig& cfg, std::ostream& out) {
  auto h = enumerate_failing_sets(cfg.n);
  out << "vertices: " << h.vertices.size() << "\n";
  out << "edges: " << h.edges.size() << "\n";
  if (!cfg.out_path.empty()) {
    Json doc = document(cfg, "failing-sets");
    merge_into(doc, hypergraph_to_json(h));
    write_json_file(cfg.out_path, doc);
  }
  return kExitOk;
}

int cmd_search(const RunConfig& cfg, std::ostream& out) {
  auto r = min_uda_candidate(cfg.n);
  out << "failing sets: " << r.edges << "\n";
  out << "max failing-free subset: " << r.search.best_subset.size() << (r.search.optimal ? " (optimal)" : "")
      << "\n";
  out << "nodes explored: " << r.search.nodes_explored << "\n";
  out << "minimal UDA candidate size: " << r.set.size() << "\n";
  auto comp = complement(r.set);
  if (cfg.n == 2) {
    out << "complement mutually anticommuting: " << (mutually_anticommuting(comp) ? "yes" : "no") << "\n";
  }
  if (!cfg.out_path.empty()) {
    Json doc = document(cfg, "uda-candidate");
    merge_into(doc, set_to_json(r.set));
    doc["complement"] = paulis_to_json(comp);
    doc["search"] = {{"edges", r.edges},
                     {"failing_free_size", r.search.best_subset.size()},
                     {"nodes_explored", r.search.nodes_explored},
                     {"optimal", r.search.optimal}};
    write_json_file(cfg.out_path, doc);
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  auto a = load(cfg.set_path, set_from_json);
  Json doc = document(cfg, "verification");
  doc["n"] = a.num_qubits();
  doc["size"] = a.size();
  bool necessary = true;
  if (a.num_qubits() == 2 || a.num_qubits() == 3) {
    auto h = enumerate_failing_sets(a.num_qubits());
    auto nec = verify_necessary(a, h);
    necessary = nec.pass;
    out << "necessity: " << (nec.pass ? "pass" : "FAIL") << " (" << nec.edges_checked << " failing sets, "
        << nec.violated.size() << " fully unmeasured)\n";
    Json v = Json::array();
    for (const auto& e : nec.violated) v.push_back(paulis_to_json(e));
    doc["necessity"] = {{"pass", nec.pass}, {"edges_checked", nec.edges_checked}, {"violated", v}};
    if (nec.complement_mutually_anticommuting) {
      doc["necessity"]["complement_mutually_anticommuting"] = *nec.complement_mutually_anticommuting;
    }
  } else {
    out << "necessity: not available for n = " << a.num_qubits() << "\n";
    doc["necessity"] = nullptr;
  }

  bool sufficient = true;
  auto comp = complement(a);
  if (comp.empty()) {
    out << "sufficiency: every string is measured\n";
    doc["sufficiency"] = {{"trivial", true}};
  } else {
    SufficiencyOptions opts;
    opts.restarts = cfg.restarts;
    opts.tol = cfg.tol;
    opts.seed = cfg.seed;
    opts.threads = cfg.threads;
    auto rep = verify_sufficient_numeric(a, opts);
    sufficient = !rep.violated(cfg.tol);
    out << "sufficiency: min second-largest eigenvalue " << num(rep.min_second_largest)
        << ", max second-smallest eigenvalue " << num(rep.max_second_smallest) << "\n";
    out << "margin: " << num(rep.margin()) << " over " << rep.restarts << " restarts and "
        << rep.structured_candidates << " structured candidates\n";
    Json s = {{"min_second_largest", rep.min_second_largest},
              {"max_second_smallest", rep.max_second_smallest},
              {"margin", rep.margin()},
              {"restarts", rep.restarts},
              {"structured_candidates", rep.structured_candidates}};
    if (rep.witness) {
      Json w = Json::array();
      for (std::size_t i = 0; i < rep.witness->basis.size(); ++i) {
        w.push_back({{"pauli", rep.witness->basis[i].str()}, {"alpha", rep.witness->alphas[i]}});
      }
      s["witness"] = std::move(w);
    }
    doc["sufficiency"] = std::move(s);
  }
  const char* verdict = !necessary ? "not UDA (a failing set is entirely unmeasured)"
                        : sufficient ? "UDA (numerically certified)"
                                     : "inconclusive (margin below tolerance)";
  out << "verdict: " << verdict << "\n";
  doc["verdict"] = verdict;
  if (!cfg.out_path.empty()) write_json_file(cfg.out_path, doc);
  return necessary && sufficient ? kExitOk : kExitInconclusive;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  auto a = load(cfg.set_path, set_from_json);
  if (a.num_qubits() != cfg.n) {
    throw std::invalid_argument("--n " + std::to_string(cfg.n) + " does not match the set's n = " +
                                std::to_string(a.num_qubits()));
  }
  auto etas = parse_etas(cfg.etas);
  SweepOptions opts;
  opts.trials = cfg.trials;
  opts.shots = cfg.shots;
  opts.seed = cfg.seed;
  opts.threads = cfg.threads;
  opts.mle.restarts = cfg.restarts;
  auto table = noise_sweep(cfg.n, a, etas, opts);
  std::string csv = "eta,mean_fidelity,std_fidelity,trials\n";
  for (const auto& r : table) {
    csv += num(r.eta) + "," + num(r.mean_fidelity) + "," + num(r.std_fidelity) + "," + std::to_string(r.trials) + "\n";
    out << "eta " << num(r.eta) << ": mean fidelity " << num(r.mean_fidelity) << " (std " << num(r.std_fidelity)
        << ")\n";
  }
  write_csv(cfg, "noise-sweep", csv);
  return kExitOk;
}

int cmd_reconstruct(const RunConfig& cfg, std::ostream& out) {
  auto rec = load(cfg.record_path, record_from_json);
  std::size_t d = std::size_t{1} << rec.num_qubits();
  MleOptions opts;
  opts.restarts = cfg.restarts;
  opts.seed = cfg.seed;
  auto fit = mle_reconstruct(rec, d, opts);
  Json doc = document(cfg, "density-matrix");
  doc["n"] = rec.num_qubits();
  merge_into(doc, matrix_to_json(fit.rho));
  doc["fit"] = {{"loss", fit.loss},
                {"grad_norm", fit.grad_norm},
                {"iterations", fit.iterations},
                {"converged", fit.converged},
                {"stalled", fit.stalled},
                {"start", fit.start}};
  doc["purity"] = purity(fit.rho);
  const char* status = fit.converged ? " (converged)" : fit.stalled ? " (stalled)" : " (iteration limit reached)";
  out << "loss: " << num(fit.loss) << status << "\n";
  out << "purity: " << num(purity(fit.rho)) << "\n";
  if (!cfg.target.empty()) {
    Matrix target = load(cfg.target, target_from_json);
    if (static_cast<std::size_t>(target.rows()) != d) {
      throw std::invalid_argument("--target has dimension " + std::to_string(target.rows()) + ", record needs " +
                                  std::to_string(d));
    }
    double f = fidelity(fit.rho, target);
    doc["fidelity"] = f;
    out << "fidelity: " << num(f) << "\n";
  }
  write_json_file(cfg.out_path, doc);
  return kExitOk;
}

int cmd_baseline(const RunConfig& cfg, std::ostream& out) {
  StateVector target;
  if (cfg.target == "ghz") {
    target = ghz_state(cfg.n);
  } else {
    const Json doc = read_json_file(cfg.target);
    if (!doc.is_object() || !doc.contains("amplitudes")) {
      throw std::invalid_argument("--target file must hold a pure state in field 'amplitudes'");
    }
    Matrix rho = target_from_json(doc);
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    target = es.eigenvectors().col(rho.rows() - 1);
  }
  if (target.size() != (Eigen::Index{1} << cfg.n)) {
    throw std::invalid_argument("--target dimension " + std::to_string(target.size()) + " does not match --n " +
                                std::to_string(cfg.n));
  }
  BaselineOptions opts;
  opts.trials = cfg.trials;
  opts.seed = cfg.seed;
  opts.threads = cfg.threads;
  auto fids = random_subset_baseline(cfg.n, cfg.k, target, opts);
  std::string csv = "trial,fidelity\n";
  for (std::size_t t = 0; t < fids.size(); ++t) csv += std::to_string(t) + "," + num(fids[t]) + "\n";
  out << "random " << cfg.k << "-subsets: fidelity " << mean_std(fids) << " over " << fids.size() << " trials\n";
  write_csv(cfg, "random-subset-baseline", csv);
  return kExitOk;
}

int cmd_cover(const RunConfig& cfg, std::ostream& out) {
  auto a = load(cfg.set_path, set_from_json);
  auto cover = min_settings_cover(a);
  out << "cover size: " << cover.settings.size() << "\n";
  out << "settings:";
  for (const auto& s : cover.settings) out << " " << s.str();
  out << "\n";
  out << "irredundant: " << (cover.irredundant ? "yes" : "no") << "\n";
  if (!cfg.out_path.empty()) {
    Json doc = document(cfg, "settings-cover");
    doc["n"] = a.num_qubits();
    doc["size"] = cover.settings.size();
    Json list = Json::array();
    for (std::size_t i = 0; i < cover.settings.size(); ++i) {
      list.push_back({{"setting", cover.settings[i].str()}, {"only_covers", paulis_to_json(cover.private_paulis[i])}});
    }
    doc["settings"] = std::move(list);
    doc["complete"] = cover.complete;
    doc["irredundant"] = cover.irredundant;
    doc["nodes_explored"] = cover.nodes_explored;
    write_json_file(cfg.out_path, doc);
  }
  return kExitOk;
}

int cmd_merge(const RunConfig& cfg, std::ostream& out) {
  std::vector<CoincidenceCounts> files;
  for (const auto& path : cfg.count_paths) {
    files.push_back(load(path, counts_from_json));
  }
  auto rec = settings_pipeline(files);
  out << "merged " << files.size() << " settings into " << rec.size() << " entries\n";
  Json doc = document(cfg, "measurement-record");
  merge_into(doc, record_to_json(rec));
  write_json_file(cfg.out_path, doc);
  return kExitOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pure-state tomography from minimal Pauli measurement sets", "puretomo"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto positive = CLI::PositiveNumber;

  auto threads_opt = [&](CLI::App* sub) {
    sub->add_option("--threads", cfg.threads, "Worker threads (outputs do not depend on this)")
        ->check(CLI::Range(1, 256));
  };
  auto seed_opt = [&](CLI::App* sub) { sub->add_option("--seed", cfg.seed, "Random seed")->capture_default_str(); };

  auto* fs = app.add_subcommand("failing-sets", "Enumerate the failing-set hypergraph");
  fs->add_option("--n", cfg.n, "Qubit count (2 or 3)")->required()->check(CLI::Range(2, 3));
  fs->add_option("--out", cfg.out_path, "Hypergraph document");

  auto* search = app.add_subcommand("search", "Find a minimal UDA candidate set");
  search->add_option("--n", cfg.n, "Qubit count (2 or 3)")->required()->check(CLI::Range(2, 3));
  search->add_option("--out", cfg.out_path, "Candidate set document");

  auto* verify = app.add_subcommand("verify", "Check necessity and numerical sufficiency of a set");
  verify->add_option("--set", cfg.set_path, "Measurement set document")->required();
  cfg.restarts = 1000;
  verify->add_option("--restarts", cfg.restarts, "Random restarts")->check(positive)->capture_default_str();
  verify->add_option("--tol", cfg.tol, "Eigenvalue tolerance")->check(positive)->capture_default_str();
  verify->add_option("--out", cfg.out_path, "Report document");
  seed_opt(verify);
  threads_opt(verify);

  auto* sweep = app.add_subcommand("simulate-sweep", "Depolarizing-noise fidelity sweep");
  sweep->add_option("--n", cfg.n, "Qubit count")->required()->check(CLI::Range(1, kMaxQubits));
  sweep->add_option("--set", cfg.set_path, "Measurement set document")->required();
  sweep->add_option("--etas", cfg.etas, "Comma-separated noise levels")->required();
  sweep->add_option("--trials", cfg.trials, "Haar states per noise level")->required()->check(CLI::Range(2, 1 << 20));
  sweep->add_option("--shots", cfg.shots, "Shots per string (exact expectations if absent)")->check(positive);
  sweep->add_option("--out", cfg.out_path, "CSV table")->required();
  seed_opt(sweep);
  threads_opt(sweep);

  auto* rec = app.add_subcommand("reconstruct", "Fit a density matrix to a measurement record");
  rec->add_option("--record", cfg.record_path, "Measurement record document")->required();
  rec->add_option("--out", cfg.out_path, "Density matrix document")->required();
  rec->add_option("--target", cfg.target, "State document to compare against");
  seed_opt(rec);

  auto* base = app.add_subcommand("baseline-random", "Fidelity of random Pauli subsets");
  base->add_option("--n", cfg.n, "Qubit count")->required()->check(CLI::Range(1, kMaxQubits));
  base->add_option("--k", cfg.k, "Subset size including the identity")->required()->check(positive);
  base->add_option("--target", cfg.target, "'ghz' or a state document")->required();
  base->add_option("--trials", cfg.trials, "Random subsets")->required()->check(CLI::Range(1, 1 << 20));
  base->add_option("--out", cfg.out_path, "CSV table")->required();
  seed_opt(base);
  threads_opt(base);

  auto* cover = app.add_subcommand("settings-cover", "Minimum product-setting cover of a set");
  cover->add_option("--set", cfg.set_path, "Measurement set document")->required();
  cover->add_option("--out", cfg.out_path, "Cover document");

  auto* merge = app.add_subcommand("settings-merge", "Merge coincidence counts into one record");
  merge->add_option("--counts", cfg.count_paths, "Count documents")->required()->expected(1, -1);
  merge->add_option("--out", cfg.out_path, "Measurement record document")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  try {
    auto* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    if (sub != verify) cfg.restarts = 0;
    if (sub == fs) return cmd_failing_sets(cfg, out);
    if (sub == search) return cmd_search(cfg, out);
    if (sub == verify) return cmd_verify(cfg, out);
    if (sub == sweep) {
      cfg.restarts = MleOptions{}.restarts;
      return cmd_sweep(cfg, out);
    }
    if (sub == rec) {
      cfg.restarts = MleOptions{}.restarts;
      return cmd_reconstruct(cfg, out);
    }
    if (sub == base) return cmd_baseline(cfg, out);
    if (sub == cover) return cmd_cover(cfg, out);
    if (sub == merge) return cmd_merge(cfg, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace puretomo::cli
