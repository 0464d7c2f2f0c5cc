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

#include "puretomo/uda.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "puretomo/parallel.hpp"
#include "puretomo/random.hpp"

namespace puretomo {

MeasurementSet::MeasurementSet(int n, std::vector<PauliString> paulis)
    : n_(n), paulis_(std::move(paulis)) {
  if (n < 1 || n > kMaxQubits) throw std::invalid_argument("measurement set: qubit count out of range");
  member_.assign(std::size_t{1} << (2 * n), false);
  for (const auto& p : paulis_) {
    if (p.num_qubits() != n) {
      throw std::invalid_argument("measurement set: '" + p.str() + "' is not a " + std::to_string(n) +
                                  "-qubit string");
    }
    if (member_[p.index()]) throw std::invalid_argument("measurement set: duplicate '" + p.str() + "'");
    member_[p.index()] = true;
  }
  if (!member_[0]) throw std::invalid_argument("measurement set: identity is missing");
}

MeasurementSet MeasurementSet::parse(const std::vector<std::string>& texts) {
  if (texts.empty()) throw std::invalid_argument("measurement set: no paulis");
  auto ps = parse_paulis(texts);
  int n = ps.front().num_qubits();
  return MeasurementSet(n, std::move(ps));
}

bool MeasurementSet::contains(const PauliString& p) const {
  return p.num_qubits() == n_ && member_[p.index()];
}

double default_zero_tol(const Matrix& h) { return 1e-9 * std::max(1.0, max_abs(h)); }

Eigen::VectorXd hermitian_eigenvalues(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw std::runtime_error("hermitian eigensolver did not converge");
  return es.eigenvalues();
}

EigenSignature eigen_signature(const Matrix& h, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("eigen_signature: tol must be positive");
  require_hermitian(h, "eigen_signature input");
  EigenSignature sig;
  sig.tol = tol;
  if (h.rows() == 0) return sig;
  for (double ev : hermitian_eigenvalues(h)) {
    if (ev > tol) {
      ++sig.n_pos;
    } else if (ev < -tol) {
      ++sig.n_neg;
    } else {
      ++sig.n_zero;
    }
  }
  return sig;
}

std::vector<PauliString> complement(const MeasurementSet& a) {
  std::vector<PauliString> out;
  for (const auto& p : all_paulis(a.num_qubits())) {
    if (!a.contains(p)) out.push_back(p);
  }
  return out;
}

Matrix build_operator(const PauliCoefficients& c) { return compose(c); }

// --- failing sets ----------------------------------------------------------

bool independent(std::span<const PauliString> ps) {
  // XOR-basis elimination over the 2n-bit symplectic vectors.
  std::vector<std::uint64_t> basis;
  for (const auto& p : ps) {
    std::uint64_t v = (std::uint64_t{p.x_bits()} << 32) | p.z_bits();
    for (std::uint64_t b : basis) v = std::min(v, v ^ b);
    if (v == 0) return false;
    basis.push_back(v);
    std::sort(basis.rbegin(), basis.rend());
  }
  return true;
}

bool mutually_anticommuting(std::span<const PauliString> ps) {
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      if (commutes(ps[i], ps[j])) return false;
    }
  }
  return true;
}

namespace {

bool mutually_commuting(std::span<const PauliString> ps) {
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      if (!commutes(ps[i], ps[j])) return false;
    }
  }
  return true;
}

// Exponent of omega in a*b*c == i^omega * (a*b*c signless).
int triple_phase(const PauliString& a, const PauliString& b, const PauliString& c) {
  auto ab = pauli_product(a, b);
  auto abc = pauli_product(ab.result, c);
  return (ab.phase.exponent + abc.phase.exponent) & 3;
}

PauliCoefficients unit_coefficients(int n, std::vector<PauliString> basis, std::vector<double> alphas) {
  double norm = 0;
  for (double a : alphas) norm += a * a;
  norm = std::sqrt(norm);
  if (norm > 0) {
    for (double& a : alphas) a /= norm;
  }
  return PauliCoefficients{n, std::move(basis), std::move(alphas)};
}

bool is_failing_signature(const EigenSignature& s) {
  return (s.n_pos + s.n_neg > 0) && (s.n_pos <= 1 || s.n_neg <= 1);
}

}  // namespace

std::optional<PauliCoefficients> quadruple_witness(std::span<const PauliString> f) {
  if (f.size() != 4 || !mutually_commuting(f)) return std::nullopt;
  for (std::size_t r = 0; r < 4; ++r) {
    std::vector<PauliString> rest;
    for (std::size_t i = 0; i < 4; ++i) {
      if (i != r) rest.push_back(f[i]);
    }
    if (rest[0] * rest[1] * rest[2] != f[r] || !independent(rest)) continue;
    int omega = triple_phase(rest[0], rest[1], rest[2]);
    std::vector<double> alphas(4, 1.0);
    alphas[r] = omega == 2 ? -1.0 : 1.0;
    return PauliCoefficients{f[0].num_qubits(), {f.begin(), f.end()}, alphas};
  }
  return std::nullopt;
}

FailingVerdict is_failing_set(std::span<const PauliString> f, int restarts, std::uint64_t seed) {
  if (f.empty()) throw std::invalid_argument("is_failing_set: empty set");
  int n = f.front().num_qubits();
  std::set<std::uint32_t> seen;
  for (const auto& p : f) {
    if (p.num_qubits() != n) throw std::invalid_argument("is_failing_set: mixed qubit counts");
    if (p.is_identity()) throw std::invalid_argument("is_failing_set: identity is not allowed");
    if (!seen.insert(p.index()).second) throw std::invalid_argument("is_failing_set: duplicate " + p.str());
  }
  std::vector<PauliString> basis(f.begin(), f.end());

  auto exact_verdict = [&](PauliCoefficients c) {
    Matrix h = build_operator(c);
    FailingVerdict v;
    v.exact = true;
    v.witness_signature = eigen_signature(h, default_zero_tol(h));
    v.failing = is_failing_signature(*v.witness_signature);
    v.witness = std::move(c);
    return v;
  };

  // Mutually anticommuting: H^2 = |alpha|^2 I, so every nonzero combination
  // has signature (d/2, d/2, 0).
  if (mutually_anticommuting(basis)) {
    std::vector<double> alphas(basis.size(), 0.0);
    alphas[0] = 1.0;
    return exact_verdict(PauliCoefficients{n, basis, alphas});
  }
  // Commuting pair: eigenvalues +-a +-b, fewest positives at a == b.
  if (basis.size() == 2) {
    return exact_verdict(unit_coefficients(n, basis, {1.0, 1.0}));
  }
  if (auto q = quadruple_witness(basis)) {
    auto v = exact_verdict(unit_coefficients(n, q->basis, q->alphas));
    if (v.failing) return v;
  }

  SufficiencyOptions opts;
  opts.restarts = restarts;
  opts.seed = seed;
  auto report = spectral_search(n, basis, opts);
  FailingVerdict v;
  v.exact = false;
  v.failing = report.violated(opts.tol);
  if (report.witness) {
    Matrix h = build_operator(*report.witness);
    v.witness_signature = eigen_signature(h, default_zero_tol(h));
    v.witness = std::move(report.witness);
  }
  return v;
}

// --- necessity ---------------------------------------------------------------

NecessityReport verify_necessary(const MeasurementSet& a, const FailingSetHypergraph& h) {
  if (h.n != a.num_qubits()) {
    throw std::invalid_argument("verify_necessary: hypergraph is for " + std::to_string(h.n) +
                                " qubits, set has " + std::to_string(a.num_qubits()));
  }
  NecessityReport r;
  for (const auto& edge : h.edges) {
    ++r.edges_checked;
    bool hit = std::any_of(edge.begin(), edge.end(), [&](const PauliString& p) { return a.contains(p); });
    if (!hit) r.violated.push_back(edge);
  }
  r.pass = r.violated.empty();
  if (a.num_qubits() == 2) r.complement_mutually_anticommuting = mutually_anticommuting(complement(a));
  return r;
}

// --- two-qubit closed form ---------------------------------------------------

std::vector<PauliString> two_qubit_complement_basis() {
  return parse_paulis({"XX", "XY", "XZ", "YI", "ZI"});
}

MeasurementSet set_from_complement(int n, std::span<const PauliString> excluded) {
  std::vector<PauliString> keep;
  for (const auto& p : all_paulis(n)) {
    if (std::find(excluded.begin(), excluded.end(), p) == excluded.end()) keep.push_back(p);
  }
  return MeasurementSet(n, std::move(keep));
}

MeasurementSet two_qubit_reference_set() { return set_from_complement(2, two_qubit_complement_basis()); }

TwoQubitCheck two_qubit_closed_form_check(const std::array<double, 5>& alpha) {
  PauliCoefficients c{2, two_qubit_complement_basis(), {alpha.begin(), alpha.end()}};
  Matrix h = build_operator(c);
  TwoQubitCheck out;
  for (double a : alpha) out.norm_sq += a * a;
  out.square_error = max_abs(h * h - out.norm_sq * Matrix::Identity(4, 4));
  out.determinant = h.determinant().real();
  double expected = out.norm_sq * out.norm_sq;
  out.determinant_rel_error =
      expected > 0 ? std::abs(out.determinant - expected) / expected : std::abs(out.determinant);
  out.signature = eigen_signature(h, default_zero_tol(h));
  bool sig_ok = out.norm_sq > 0 ? out.signature == EigenSignature{2, 2, 0, 0}
                                : out.signature == EigenSignature{0, 0, 4, 0};
  out.pass = out.square_error <= 1e-10 && out.determinant_rel_error <= 1e-8 && sig_ok;
  return out;
}

// --- numerical sufficiency ---------------------------------------------------

double SufficiencyReport::margin() const { return std::min(min_second_largest, -max_second_smallest); }

bool SufficiencyReport::violated(double tol) const {
  return min_second_largest <= tol || max_second_smallest >= -tol;
}

namespace {

constexpr double kDegeneracyGap = 1e-8;
constexpr double kFiniteDiffStep = 1e-6;
constexpr double kConvergence = 1e-10;

// Minimizes sign * lambda_index(H(alpha)) over the unit sphere, eigenvalues
// in ascending order.
class SpectralObjective {
 public:
  SpectralObjective(int n, std::span<const PauliString> basis, int index, double sign)
      : basis_(basis.begin(), basis.end()),
        d_(static_cast<Eigen::Index>(std::size_t{1} << n)),
        index_(index),
        sign_(sign) {}

  Matrix build(const Eigen::VectorXd& alpha) const {
    Matrix h = Matrix::Zero(d_, d_);
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      if (alpha[k] != 0.0) add_pauli(h, basis_[k], alpha[k]);
    }
    return h;
  }

  double value(const Eigen::VectorXd& alpha) const {
    return sign_ * hermitian_eigenvalues(build(alpha))[index_];
  }

  struct Eval {
    double f;
    Eigen::VectorXd grad;
  };

  Eval evaluate(const Eigen::VectorXd& alpha) const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(build(alpha));
    if (es.info() != Eigen::Success) throw std::runtime_error("hermitian eigensolver did not converge");
    const auto& ev = es.eigenvalues();
    Eval e{sign_ * ev[index_], Eigen::VectorXd(alpha.size())};
    bool degenerate = (index_ > 0 && ev[index_] - ev[index_ - 1] < kDegeneracyGap) ||
                      (index_ + 1 < d_ && ev[index_ + 1] - ev[index_] < kDegeneracyGap);
    if (degenerate) {
      Eigen::VectorXd probe = alpha;
      for (Eigen::Index k = 0; k < alpha.size(); ++k) {
        probe[k] = alpha[k] + kFiniteDiffStep;
        double up = value(probe);
        probe[k] = alpha[k] - kFiniteDiffStep;
        double down = value(probe);
        probe[k] = alpha[k];
        e.grad[k] = (up - down) / (2 * kFiniteDiffStep);
      }
    } else {
      // d lambda / d alpha_k = v^dagger sigma_k v at a simple eigenvalue.
      StateVector v = es.eigenvectors().col(index_);
      Matrix outer = v * v.adjoint();
      for (std::size_t k = 0; k < basis_.size(); ++k) {
        e.grad[static_cast<Eigen::Index>(k)] = sign_ * trace_with_pauli(outer, basis_[k]).real();
      }
    }
    return e;
  }

  struct Result {
    double f;
    Eigen::VectorXd alpha;
  };

  Result minimize(Eigen::VectorXd alpha, int max_iters) const {
    alpha.normalize();
    Eval cur = evaluate(alpha);
    double step = 0.5;
    for (int it = 0; it < max_iters; ++it) {
      Eigen::VectorXd g = cur.grad - cur.grad.dot(alpha) * alpha;
      if (g.norm() < 1e-14) break;
      bool accepted = false;
      Eigen::VectorXd cand;
      double fc = 0;
      while (step > 1e-15) {
        cand = (alpha - step * g).normalized();
        fc = value(cand);
        if (fc < cur.f) {
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;
      double change = cur.f - fc;
      alpha = cand;
      cur = evaluate(alpha);
      if (change < kConvergence) break;
      step = std::min(2 * step, 1.0);
    }
    return {cur.f, alpha};
  }

 private:
  std::vector<PauliString> basis_;
  Eigen::Index d_;
  int index_;
  double sign_;
};

std::vector<Eigen::VectorXd> structured_candidates(std::span<const PauliString> basis) {
  std::vector<Eigen::VectorXd> out;
  auto m = static_cast<Eigen::Index>(basis.size());
  if (m > 64) return out;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i + 1; j < m; ++j) {
      if (!commutes(basis[i], basis[j])) continue;
      Eigen::VectorXd a = Eigen::VectorXd::Zero(m);
      a[i] = a[j] = 1.0;
      out.push_back(a.normalized());
      for (Eigen::Index k = j + 1; k < m; ++k) {
        if (!commutes(basis[i], basis[k]) || !commutes(basis[j], basis[k])) continue;
        PauliString r = basis[i] * basis[j] * basis[k];
        auto it = std::find(basis.begin(), basis.end(), r);
        if (it == basis.end()) continue;
        auto l = static_cast<Eigen::Index>(it - basis.begin());
        if (l <= k) continue;
        std::array<PauliString, 3> triple{basis[i], basis[j], basis[k]};
        if (!independent(triple)) continue;
        Eigen::VectorXd q = Eigen::VectorXd::Zero(m);
        q[i] = q[j] = q[k] = 1.0;
        q[l] = triple_phase(basis[i], basis[j], basis[k]) == 2 ? -1.0 : 1.0;
        out.push_back(q.normalized());
      }
    }
  }
  return out;
}

}  // namespace

SufficiencyReport spectral_search(int n, std::span<const PauliString> basis, const SufficiencyOptions& opts) {
  if (basis.empty()) throw std::invalid_argument("spectral_search: empty coefficient basis");
  auto m = static_cast<Eigen::Index>(basis.size());
  int d = 1 << n;
  SpectralObjective second_largest(n, basis, d - 2, +1.0);
  SpectralObjective second_smallest(n, basis, 1, -1.0);

  std::vector<Eigen::VectorXd> starts;
  SufficiencyReport report;
  if (opts.structured_starts) {
    starts = structured_candidates(basis);
    report.structured_candidates = static_cast<int>(starts.size());
  }
  std::size_t structured = starts.size();
  for (int k = 0; k < opts.restarts; ++k) {
    Rng rng = make_rng(opts.seed, "restart-direction", static_cast<std::uint64_t>(k));
    std::normal_distribution<double> normal;
    Eigen::VectorXd a(m);
    for (Eigen::Index i = 0; i < m; ++i) a[i] = normal(rng);
    starts.push_back(a.normalized());
  }

  struct Local {
    SpectralObjective::Result low, high;
  };
  std::vector<Local> results(starts.size());
  parallel_for(starts.size(), opts.threads, [&](std::size_t i) {
    if (i < structured) {
      // Evaluated as-is: these are exact witnesses when they violate.
      results[i].low = {second_largest.value(starts[i]), starts[i]};
      results[i].high = {second_smallest.value(starts[i]), starts[i]};
    } else {
      results[i].low = second_largest.minimize(starts[i], opts.max_iters);
      results[i].high = second_smallest.minimize(starts[i], opts.max_iters);
    }
  });

  // Ordered reduction, ties keep the earliest start.
  std::size_t best_low = 0, best_high = 0;
  for (std::size_t i = 1; i < results.size(); ++i) {
    if (results[i].low.f < results[best_low].low.f) best_low = i;
    if (results[i].high.f < results[best_high].high.f) best_high = i;
  }
  report.restarts = opts.restarts;
  report.min_second_largest = results[best_low].low.f;
  report.max_second_smallest = -results[best_high].high.f;
  std::vector<PauliString> basis_vec(basis.begin(), basis.end());
  if (report.min_second_largest <= opts.tol) {
    const auto& a = results[best_low].low.alpha;
    report.witness = PauliCoefficients{n, basis_vec, {a.data(), a.data() + a.size()}};
  } else if (report.max_second_smallest >= -opts.tol) {
    const auto& a = results[best_high].high.alpha;
    report.witness = PauliCoefficients{n, basis_vec, {a.data(), a.data() + a.size()}};
  }
  return report;
}

SufficiencyReport verify_sufficient_numeric(const MeasurementSet& a, const SufficiencyOptions& opts) {
  auto comp = complement(a);
  if (comp.empty()) throw std::invalid_argument("verify_sufficient_numeric: complement is empty");
  return spectral_search(a.num_qubits(), comp, opts);
}

// --- 8x8 structure -----------------------------------------------------------

std::vector<PauliString> three_qubit_complement_basis() {
  return parse_paulis({"IXZ", "IYZ", "IZX", "IZY", "IZZ", "XII", "XIX", "XIY", "XXI", "XXZ", "XYI",
                       "XYZ", "XZI", "XZZ", "YII", "YIX", "YIY", "YIZ", "YXI", "YYI", "YZX", "YZY",
                       "YZZ", "ZIX", "ZIY", "ZIZ", "ZXI", "ZXX", "ZXY", "ZYI", "ZYX", "ZYY", "ZZI"});
}

MeasurementSet three_qubit_reference_set() { return set_from_complement(3, three_qubit_complement_basis()); }

double StructureCheck::max_deviation() const {
  return std::max({anti_diagonal, diagonal_pairs, negated_pairs, linear_relations});
}

StructureCheck appendix_structure_check(std::span<const double> x) {
  if (x.size() != 33) {
    throw std::invalid_argument("appendix_structure_check: expected 33 coefficients, got " +
                                std::to_string(x.size()));
  }
  StructureCheck out;
  out.h = build_operator(PauliCoefficients{3, three_qubit_complement_basis(), {x.begin(), x.end()}});
  auto c = [&](int i, int j) { return out.h(i - 1, j - 1); };
  auto upd = [](double& slot, Complex dev) { slot = std::max(slot, std::abs(dev)); };
  for (int k = 1; k <= 8; ++k) upd(out.anti_diagonal, c(k, 9 - k));
  upd(out.diagonal_pairs, c(5, 5) - c(4, 4));
  upd(out.diagonal_pairs, c(6, 6) - c(3, 3));
  upd(out.diagonal_pairs, c(7, 7) - c(2, 2));
  upd(out.diagonal_pairs, c(8, 8) - c(1, 1));
  upd(out.negated_pairs, c(7, 8) + c(1, 2));
  upd(out.negated_pairs, c(5, 6) + c(3, 4));
  upd(out.negated_pairs, c(6, 8) + c(1, 3));
  upd(out.negated_pairs, c(5, 7) + c(2, 4));
  upd(out.negated_pairs, c(5, 8) + c(1, 4));
  upd(out.negated_pairs, c(6, 7) + c(2, 3));
  upd(out.linear_relations, c(4, 8) - (c(1, 5) - std::conj(c(2, 6)) + std::conj(c(3, 7))));
  upd(out.linear_relations, c(4, 7) - (std::conj(c(1, 6)) + c(2, 5) - std::conj(c(3, 8))));
  upd(out.linear_relations, c(4, 6) - (std::conj(c(2, 8)) + c(3, 5) - std::conj(c(1, 7))));
  return out;
}

}  // namespace puretomo
