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

#include "puretomo/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "puretomo/parallel.hpp"
#include "puretomo/random.hpp"

namespace puretomo {

namespace {

void require_state(const StateVector& phi) {
  qubits_for_dim(static_cast<std::size_t>(phi.size()));
  if (std::abs(phi.norm() - 1.0) > 1e-10) throw std::invalid_argument("state vector is not normalized");
}

// Principal square root of a positive semidefinite matrix.
Matrix psd_sqrt(const Matrix& m, const char* what) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success) throw std::runtime_error("hermitian eigensolver did not converge");
  Eigen::VectorXd ev = es.eigenvalues();
  if (ev.minCoeff() < -1e-8) {
    throw std::invalid_argument(std::string(what) + " is not positive semidefinite (eigenvalue " +
                                std::to_string(ev.minCoeff()) + ")");
  }
  // Eigenvalues at rounding level are zeroed; their square roots would not be.
  double floor = 1e-13 * std::max(1.0, ev.cwiseAbs().maxCoeff());
  Eigen::VectorXd root = ev.unaryExpr([floor](double v) { return v > floor ? std::sqrt(v) : 0.0; });
  return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

// --- states --------------------------------------------------------------------

StateVector haar_random_pure(int n, std::uint64_t seed) {
  if (n < 1 || n > kMaxQubits) throw std::invalid_argument("haar_random_pure: qubit count out of range");
  Rng rng = make_rng(seed, "state-draw");
  std::normal_distribution<double> normal;
  StateVector v(Eigen::Index{1} << n);
  for (auto& a : v) {
    double re = normal(rng);
    double im = normal(rng);
    a = Complex(re, im);
  }
  return v / v.norm();
}

StateVector ghz_state(int n) {
  if (n < 2 || n > kMaxQubits) throw std::invalid_argument("ghz_state: qubit count out of range");
  StateVector v = StateVector::Zero(Eigen::Index{1} << n);
  v[0] = v[v.size() - 1] = 1.0 / std::sqrt(2.0);
  return v;
}

Matrix projector(const StateVector& phi) { return phi * phi.adjoint(); }

Matrix depolarize(const StateVector& phi, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("depolarize: eta must lie in [0, 1]");
  require_state(phi);
  auto d = phi.size();
  return eta * Matrix::Identity(d, d) / static_cast<double>(d) + (1.0 - eta) * projector(phi);
}

void validate_density_matrix(const Matrix& rho, double tol) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("density matrix is not square");
  qubits_for_dim(static_cast<std::size_t>(rho.rows()));
  if (max_abs(rho - rho.adjoint()) > tol) throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(rho.trace() - Complex(1.0)) > tol) throw std::invalid_argument("density matrix trace is not 1");
  if (hermitian_eigenvalues(rho).minCoeff() < -tol) {
    throw std::invalid_argument("density matrix has a negative eigenvalue");
  }
}

double fidelity(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  // tr sqrt(sqrt(rho) sigma sqrt(rho)) is the trace norm of sqrt(rho) sqrt(sigma).
  Matrix m = psd_sqrt(rho, "rho") * psd_sqrt(sigma, "sigma");
  Eigen::JacobiSVD<Matrix> svd(m);
  double s = svd.singularValues().sum();
  return std::clamp(s * s, 0.0, 1.0);
}

double purity(const Matrix& rho) { return (rho * rho).trace().real(); }

// --- records -------------------------------------------------------------------

void MeasurementRecord::set(RecordEntry e) {
  if (e.pauli.num_qubits() != n_) {
    throw std::invalid_argument("record entry " + e.pauli.str() + " does not have " + std::to_string(n_) +
                                " qubits");
  }
  if (!std::isfinite(e.value)) throw std::invalid_argument("record entry " + e.pauli.str() + ": non-finite value");
  double limit = 1.0 + 1e-12;
  if (e.shots) {
    if (*e.shots == 0) throw std::invalid_argument("record entry " + e.pauli.str() + ": zero shots");
    limit = 1.0 + 3.0 / std::sqrt(static_cast<double>(*e.shots));
  }
  if (std::abs(e.value) > limit) {
    throw std::invalid_argument("record entry " + e.pauli.str() + ": value " + std::to_string(e.value) +
                                " outside [-1, 1]");
  }
  auto it = std::lower_bound(entries_.begin(), entries_.end(), e.pauli,
                             [](const RecordEntry& a, const PauliString& p) { return a.pauli < p; });
  if (it != entries_.end() && it->pauli == e.pauli) {
    *it = std::move(e);
  } else {
    entries_.insert(it, std::move(e));
  }
}

const RecordEntry* MeasurementRecord::find(const PauliString& p) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                             [](const RecordEntry& a, const PauliString& q) { return a.pauli < q; });
  return it != entries_.end() && it->pauli == p ? &*it : nullptr;
}

MeasurementRecord simulate_measurements(const Matrix& rho, const MeasurementSet& a,
                                        std::optional<std::uint64_t> shots, std::uint64_t seed) {
  if (static_cast<std::size_t>(rho.rows()) != (std::size_t{1} << a.num_qubits())) {
    throw std::invalid_argument("simulate_measurements: state dimension " + std::to_string(rho.rows()) +
                                " does not match " + std::to_string(a.num_qubits()) + "-qubit set");
  }
  MeasurementRecord rec(a.num_qubits());
  Rng rng = make_rng(seed, "shot-noise");
  for (const auto& p : a.paulis()) {
    double exact = expectation(rho, p);
    if (!shots) {
      rec.set({p, exact, std::nullopt});
      continue;
    }
    double prob = std::clamp((1.0 + exact) / 2.0, 0.0, 1.0);
    std::binomial_distribution<std::uint64_t> coin(*shots, prob);
    std::uint64_t plus = coin(rng);
    double mean = (2.0 * static_cast<double>(plus) - static_cast<double>(*shots)) / static_cast<double>(*shots);
    rec.set({p, mean, shots});
  }
  return rec;
}

// --- reconstruction ------------------------------------------------------------

namespace {

class LeastSquaresFit {
 public:
  LeastSquaresFit(const MeasurementRecord& record, std::size_t d) : d_(static_cast<Eigen::Index>(d)) {
    for (const auto& e : record.entries()) {
      paulis_.push_back(pauli_matrix(e.pauli));
      targets_.push_back(e.value);
      weights_.push_back(std::sqrt(e.shots ? static_cast<double>(*e.shots) : 1.0));
      total_weight_ += weights_.back() * weights_.back();
    }
    grad_scale_ = std::max(1.0, total_weight_);
  }

  double loss(const Matrix& rho) const {
    double total = 0;
    for (std::size_t k = 0; k < paulis_.size(); ++k) {
      double r = weights_[k] * ((rho * paulis_[k]).trace().real() - targets_[k]);
      total += r * r;
    }
    return total;
  }

  static Matrix density(const Matrix& t) {
    Matrix a = t.adjoint() * t;
    return a / a.trace().real();
  }

  // Weighted residuals at rho(T) and their Jacobian with respect to the real
  // and imaginary parts of the lower-triangular entries of T.
  void linearize(const Matrix& t, Eigen::VectorXd& r, Eigen::MatrixXd& jac) const {
    Matrix rho = density(t);
    double tr = (t.adjoint() * t).trace().real();
    Eigen::Index params = d_ * (d_ + 1);
    r.resize(static_cast<Eigen::Index>(paulis_.size()));
    jac.resize(r.size(), params);
    for (std::size_t k = 0; k < paulis_.size(); ++k) {
      auto row = static_cast<Eigen::Index>(k);
      double e = (rho * paulis_[k]).trace().real();
      r[row] = weights_[k] * (e - targets_[k]);
      Matrix g = (2.0 * weights_[k] / tr) * (t * paulis_[k] - e * t);
      Eigen::Index c = 0;
      for (Eigen::Index i = 0; i < d_; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
          jac(row, c++) = g(i, j).real();
          jac(row, c++) = g(i, j).imag();
        }
      }
    }
  }

  Matrix unpack(const Eigen::VectorXd& theta) const {
    Matrix t = Matrix::Zero(d_, d_);
    Eigen::Index c = 0;
    for (Eigen::Index i = 0; i < d_; ++i) {
      for (Eigen::Index j = 0; j <= i; ++j, c += 2) t(i, j) = Complex(theta[c], theta[c + 1]);
    }
    return t;
  }

  Eigen::VectorXd pack(const Matrix& t) const {
    Eigen::VectorXd theta(d_ * (d_ + 1));
    Eigen::Index c = 0;
    for (Eigen::Index i = 0; i < d_; ++i) {
      for (Eigen::Index j = 0; j <= i; ++j) {
        theta[c++] = t(i, j).real();
        theta[c++] = t(i, j).imag();
      }
    }
    return theta;
  }

  // Damped Gauss-Newton: the damping grows until the step lowers the loss.
  MleResult minimize(Matrix t, const MleOptions& opts) const {
    t /= t.norm();
    Eigen::VectorXd r, grad;
    Eigen::MatrixXd jac;
    linearize(t, r, jac);
    double f = r.squaredNorm();
    double damping = 1e-3;
    MleResult out;
    int it = 0;
    for (; it < opts.max_iters; ++it) {
      grad = 2.0 * jac.transpose() * r;
      if (grad.norm() <= opts.grad_tol * grad_scale_) break;
      Eigen::MatrixXd normal = jac.transpose() * jac;
      Eigen::VectorXd rhs = -jac.transpose() * r;
      Eigen::VectorXd theta = pack(t);
      bool accepted = false;
      while (damping < 1e12) {
        Eigen::MatrixXd lhs = normal;
        lhs.diagonal().array() += damping;
        Eigen::VectorXd step = lhs.ldlt().solve(rhs);
        Matrix cand = unpack(theta + step);
        double fc = loss(density(cand));
        if (std::isfinite(fc) && fc < f) {
          t = cand / cand.norm();  // the loss is invariant under rescaling T
          f = fc;
          damping = std::max(damping / 3.0, 1e-15);
          accepted = true;
          break;
        }
        damping *= 4.0;
      }
      if (!accepted) {
        out.stalled = true;
        break;
      }
      linearize(t, r, jac);
    }
    grad = 2.0 * jac.transpose() * r;
    out.rho = density(t);
    out.rho = 0.5 * (out.rho + out.rho.adjoint());
    out.loss = f;
    out.grad_norm = grad.norm();
    out.iterations = it;
    out.converged = out.grad_norm <= opts.grad_tol * grad_scale_;
    out.stalled = out.stalled && !out.converged;
    return out;
  }

 private:
  Eigen::Index d_;
  std::vector<Matrix> paulis_;
  std::vector<double> targets_;
  std::vector<double> weights_;
  double total_weight_ = 0;
  double grad_scale_ = 1;
};

void require_record(const MeasurementRecord& record, std::size_t d) {
  if (record.empty()) throw std::invalid_argument("mle_reconstruct: empty record");
  if ((std::size_t{1} << record.num_qubits()) != d) {
    throw std::invalid_argument("mle_reconstruct: record is for " + std::to_string(record.num_qubits()) +
                                " qubits but d = " + std::to_string(d));
  }
}

Matrix start_factor(std::size_t d, const MleOptions& opts, int start) {
  auto dd = static_cast<Eigen::Index>(d);
  if (start == 0) return Matrix::Identity(dd, dd);
  Rng rng = make_rng(opts.seed, "optimizer-start", static_cast<std::uint64_t>(start));
  std::normal_distribution<double> normal;
  Matrix t = Matrix::Zero(dd, dd);
  for (Eigen::Index i = 0; i < dd; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      double re = normal(rng);
      double im = normal(rng);
      t(i, j) = Complex(re, im);
    }
  }
  return t;
}

}  // namespace

double record_loss(const MeasurementRecord& record, const Matrix& rho) {
  return LeastSquaresFit(record, static_cast<std::size_t>(rho.rows())).loss(rho);
}

std::vector<MleResult> mle_reconstruct_all(const MeasurementRecord& record, std::size_t d, const MleOptions& opts) {
  require_record(record, d);
  if (opts.restarts < 1) throw std::invalid_argument("mle_reconstruct: restarts must be >= 1");
  LeastSquaresFit fit(record, d);
  std::vector<MleResult> out;
  out.reserve(static_cast<std::size_t>(opts.restarts));
  for (int s = 0; s < opts.restarts; ++s) {
    auto r = fit.minimize(start_factor(d, opts, s), opts);
    r.start = s;
    out.push_back(std::move(r));
  }
  return out;
}

MleResult mle_reconstruct(const MeasurementRecord& record, std::size_t d, const MleOptions& opts) {
  auto all = mle_reconstruct_all(record, d, opts);
  auto best = std::min_element(all.begin(), all.end(),
                               [](const MleResult& a, const MleResult& b) { return a.loss < b.loss; });
  return std::move(*best);
}

// --- experiments ---------------------------------------------------------------

SweepTable noise_sweep(int n, const MeasurementSet& a, std::span<const double> etas, const SweepOptions& opts) {
  if (opts.trials < 2) throw std::invalid_argument("noise_sweep: trials must be >= 2");
  if (a.num_qubits() != n) throw std::invalid_argument("noise_sweep: set qubit count differs from n");
  for (double eta : etas) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("noise_sweep: eta outside [0, 1]");
  }
  std::size_t trials = static_cast<std::size_t>(opts.trials);
  std::vector<double> fid(etas.size() * trials);
  std::size_t d = std::size_t{1} << n;
  parallel_for(fid.size(), opts.threads, [&](std::size_t job) {
    std::size_t e = job / trials, t = job % trials;
    StateVector phi = haar_random_pure(n, substream_seed(opts.seed, "state-draw", t));
    Matrix rho = depolarize(phi, etas[e]);
    auto rec = simulate_measurements(rho, a, opts.shots, substream_seed(opts.seed, "shot-noise", job));
    MleOptions mle = opts.mle;
    mle.seed = substream_seed(opts.seed, "optimizer-start", job);
    auto fit = mle_reconstruct(rec, d, mle);
    fid[job] = fidelity(fit.rho, projector(phi));
  });
  SweepTable table;
  for (std::size_t e = 0; e < etas.size(); ++e) {
    auto first = fid.begin() + static_cast<std::ptrdiff_t>(e * trials);
    double mean = std::accumulate(first, first + static_cast<std::ptrdiff_t>(trials), 0.0) / trials;
    double var = 0;
    for (auto it = first; it != first + static_cast<std::ptrdiff_t>(trials); ++it) var += (*it - mean) * (*it - mean);
    var /= static_cast<double>(trials - 1);
    table.push_back({etas[e], mean, std::sqrt(var), opts.trials});
  }
  return table;
}

MeasurementSet random_pauli_subset(int n, int k, std::uint64_t seed) {
  auto all = all_paulis(n);
  if (k < 1 || static_cast<std::size_t>(k) > all.size()) {
    throw std::invalid_argument("random subset size " + std::to_string(k) + " outside [1, " +
                                std::to_string(all.size()) + "]");
  }
  std::vector<PauliString> pool(all.begin() + 1, all.end());
  Rng rng = make_rng(seed, "subset-draw");
  // Partial Fisher-Yates with an explicit index draw (portable across
  // standard libraries, unlike std::shuffle).
  for (int i = 0; i < k - 1; ++i) {
    std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(i), pool.size() - 1);
    std::swap(pool[static_cast<std::size_t>(i)], pool[pick(rng)]);
  }
  std::vector<PauliString> chosen{all.front()};
  chosen.insert(chosen.end(), pool.begin(), pool.begin() + (k - 1));
  std::sort(chosen.begin(), chosen.end());
  return MeasurementSet(n, std::move(chosen));
}

double averaged_fidelity(const MeasurementSet& a, const StateVector& target, const BaselineOptions& opts,
                         std::uint64_t trial_seed) {
  Matrix truth = projector(target);
  auto rec = simulate_measurements(truth, a, std::nullopt, trial_seed);
  MleOptions mle = opts.mle;
  mle.restarts = opts.starts;
  mle.seed = substream_seed(trial_seed, "optimizer-start");
  auto fits = mle_reconstruct_all(rec, static_cast<std::size_t>(target.size()), mle);
  double total = 0;
  for (const auto& f : fits) total += fidelity(f.rho, truth);
  return total / static_cast<double>(fits.size());
}

std::vector<double> random_subset_baseline(int n, int k, const StateVector& target, const BaselineOptions& opts) {
  if (static_cast<std::size_t>(target.size()) != (std::size_t{1} << n)) {
    throw std::invalid_argument("random_subset_baseline: target dimension does not match n");
  }
  require_state(target);
  if (k < 1 || k > (1 << (2 * n))) {
    throw std::invalid_argument("random_subset_baseline: k = " + std::to_string(k) + " exceeds the " +
                                std::to_string(1 << (2 * n)) + " Pauli strings");
  }
  std::vector<double> out(static_cast<std::size_t>(opts.trials));
  parallel_for(out.size(), opts.threads, [&](std::size_t t) {
    auto set = random_pauli_subset(n, k, substream_seed(opts.seed, "subset-draw", t));
    out[t] = averaged_fidelity(set, target, opts, substream_seed(opts.seed, "trial", t));
  });
  return out;
}

}  // namespace puretomo
