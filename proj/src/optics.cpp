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

#include "puretomo/optics.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace puretomo {

Setting::Setting(PauliString bases) : bases_(bases) {
  if ((bases.x_bits() | bases.z_bits()) != (std::uint32_t{1} << bases.num_qubits()) - 1) {
    throw std::invalid_argument("setting " + bases.str() + " contains I; every qubit needs a basis");
  }
}

Setting Setting::parse(std::string_view text) { return Setting(PauliString::parse(text)); }

std::vector<Setting> all_settings(int n) {
  std::vector<Setting> out;
  for (const auto& p : all_paulis(n)) {
    if (p.weight() == n) out.emplace_back(p);
  }
  return out;
}

bool setting_covers(const Setting& s, const PauliString& p) {
  if (p.num_qubits() != s.num_qubits()) return false;
  std::uint32_t support = p.x_bits() | p.z_bits();
  return (p.x_bits() == (s.bases().x_bits() & support)) && (p.z_bits() == (s.bases().z_bits() & support));
}

std::vector<PauliString> covered_paulis(const Setting& s) {
  int n = s.num_qubits();
  std::vector<PauliString> out;
  std::uint32_t full = (std::uint32_t{1} << n) - 1;
  for (std::uint32_t keep = 0; keep <= full; ++keep) {
    out.emplace_back(n, s.bases().x_bits() & keep, s.bases().z_bits() & keep);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> outcome_expectations(const Setting& s, std::span<const double> weights) {
  std::size_t outcomes = std::size_t{1} << s.num_qubits();
  if (weights.size() != outcomes) {
    throw std::invalid_argument("expected " + std::to_string(outcomes) + " outcome weights for setting " + s.str() +
                                ", got " + std::to_string(weights.size()));
  }
  double total = 0;
  for (double w : weights) total += w;
  if (!(total > 0)) throw std::invalid_argument("outcome weights for setting " + s.str() + " sum to zero");
  std::vector<double> out;
  for (const auto& p : covered_paulis(s)) {
    std::uint32_t support = p.x_bits() | p.z_bits();
    double sum = 0;
    for (std::size_t o = 0; o < outcomes; ++o) {
      sum += std::popcount(static_cast<std::uint32_t>(o) & support) % 2 ? -weights[o] : weights[o];
    }
    out.push_back(p.is_identity() ? 1.0 : sum / total);
  }
  return out;
}

MeasurementRecord counts_to_expectations(const CoincidenceCounts& c) {
  std::size_t outcomes = std::size_t{1} << c.setting.num_qubits();
  if (c.counts.size() != outcomes) {
    throw std::invalid_argument("counts: expected " + std::to_string(outcomes) + " outcome counts for setting " +
                                c.setting.str() + ", got " + std::to_string(c.counts.size()));
  }
  std::uint64_t total = 0;
  for (auto k : c.counts) total += k;
  if (total == 0) throw std::invalid_argument("counts: total count for setting " + c.setting.str() + " is zero");
  std::vector<double> weights(c.counts.begin(), c.counts.end());
  auto values = outcome_expectations(c.setting, weights);
  auto paulis = covered_paulis(c.setting);
  MeasurementRecord rec(c.setting.num_qubits());
  for (std::size_t i = 0; i < paulis.size(); ++i) rec.set({paulis[i], values[i], total});
  return rec;
}

std::vector<double> outcome_probabilities(const Matrix& rho, const Setting& s) {
  int n = s.num_qubits();
  if (rho.rows() != (Eigen::Index{1} << n)) throw std::invalid_argument("outcome_probabilities: dimension mismatch");
  std::vector<double> out;
  for (std::uint32_t o = 0; o < (std::uint32_t{1} << n); ++o) {
    Matrix proj = Matrix::Identity(1, 1);
    for (int q = 0; q < n; ++q) {
      PauliString single = PauliString::parse(std::string(1, s.bases().letter(q)));
      double sign = (o >> (n - 1 - q)) & 1 ? -1.0 : 1.0;
      Matrix local = 0.5 * (Matrix::Identity(2, 2) + sign * pauli_matrix(single));
      Matrix next(proj.rows() * 2, proj.cols() * 2);
      for (Eigen::Index i = 0; i < proj.rows(); ++i) {
        for (Eigen::Index j = 0; j < proj.cols(); ++j) next.block(2 * i, 2 * j, 2, 2) = proj(i, j) * local;
      }
      proj = std::move(next);
    }
    out.push_back((rho * proj).trace().real());
  }
  return out;
}

namespace {

class CoverSearch {
 public:
  explicit CoverSearch(const MeasurementSet& a) : settings_(all_settings(a.num_qubits())) {
    for (const auto& p : a.paulis()) {
      if (!p.is_identity()) elements_.push_back(p);
    }
    // Heaviest strings first: they have the fewest covering settings.
    std::stable_sort(elements_.begin(), elements_.end(),
                     [](const PauliString& x, const PauliString& y) { return x.weight() > y.weight(); });
    options_.resize(elements_.size());
    for (std::size_t e = 0; e < elements_.size(); ++e) {
      for (std::size_t s = 0; s < settings_.size(); ++s) {
        if (setting_covers(settings_[s], elements_[e])) options_[e].push_back(s);
      }
    }
  }

  std::vector<Setting> solve(std::uint64_t& nodes) {
    best_ = greedy();
    std::vector<std::size_t> chosen;
    std::vector<int> hits(elements_.size(), 0);
    dfs(chosen, hits);
    nodes = nodes_;
    std::vector<Setting> out;
    for (auto s : best_) out.push_back(settings_[s]);
    if (out.empty()) out.push_back(settings_.front());  // identity still needs a setting
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::vector<std::size_t> greedy() const {
    std::vector<bool> done(elements_.size(), false);
    std::vector<std::size_t> out;
    for (;;) {
      std::size_t best = settings_.size(), gain = 0;
      for (std::size_t s = 0; s < settings_.size(); ++s) {
        std::size_t g = 0;
        for (std::size_t e = 0; e < elements_.size(); ++e) g += !done[e] && setting_covers(settings_[s], elements_[e]);
        if (g > gain) gain = g, best = s;
      }
      if (gain == 0) return out;
      out.push_back(best);
      for (std::size_t e = 0; e < elements_.size(); ++e) {
        if (setting_covers(settings_[best], elements_[e])) done[e] = true;
      }
    }
  }

  // Greedy set of uncovered strings no two of which share a setting.
  std::size_t lower_bound(const std::vector<int>& hits) const {
    std::vector<std::size_t> picked;
    for (std::size_t e = 0; e < elements_.size(); ++e) {
      if (hits[e]) continue;
      bool clash = false;
      for (auto f : picked) {
        if (compatible(elements_[e], elements_[f])) {
          clash = true;
          break;
        }
      }
      if (!clash) picked.push_back(e);
    }
    return picked.size();
  }

  static bool compatible(const PauliString& p, const PauliString& q) {
    std::uint32_t both = (p.x_bits() | p.z_bits()) & (q.x_bits() | q.z_bits());
    return (p.x_bits() & both) == (q.x_bits() & both) && (p.z_bits() & both) == (q.z_bits() & both);
  }

  void dfs(std::vector<std::size_t>& chosen, std::vector<int>& hits) {
    ++nodes_;
    std::size_t first = elements_.size();
    for (std::size_t e = 0; e < elements_.size(); ++e) {
      if (!hits[e]) {
        first = e;
        break;
      }
    }
    if (first == elements_.size()) {
      if (chosen.size() < best_.size()) best_ = chosen;
      return;
    }
    if (chosen.size() + lower_bound(hits) >= best_.size()) return;
    for (auto s : options_[first]) {
      chosen.push_back(s);
      for (std::size_t e = 0; e < elements_.size(); ++e) hits[e] += setting_covers(settings_[s], elements_[e]);
      dfs(chosen, hits);
      for (std::size_t e = 0; e < elements_.size(); ++e) hits[e] -= setting_covers(settings_[s], elements_[e]);
      chosen.pop_back();
    }
  }

  std::vector<Setting> settings_;
  std::vector<PauliString> elements_;
  std::vector<std::vector<std::size_t>> options_;
  std::vector<std::size_t> best_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

SettingsCover min_settings_cover(const MeasurementSet& a) {
  SettingsCover out;
  CoverSearch search(a);
  out.settings = search.solve(out.nodes_explored);
  out.complete = true;
  for (const auto& p : a.paulis()) {
    bool hit = std::any_of(out.settings.begin(), out.settings.end(),
                           [&](const Setting& s) { return setting_covers(s, p); });
    out.complete = out.complete && hit;
  }
  out.irredundant = true;
  for (const auto& s : out.settings) {
    std::vector<PauliString> own;
    for (const auto& p : a.paulis()) {
      if (!setting_covers(s, p)) continue;
      bool elsewhere = std::any_of(out.settings.begin(), out.settings.end(),
                                   [&](const Setting& t) { return !(t == s) && setting_covers(t, p); });
      if (!elsewhere) own.push_back(p);
    }
    out.irredundant = out.irredundant && !own.empty();
    out.private_paulis.push_back(std::move(own));
  }
  return out;
}

MeasurementRecord settings_pipeline(std::span<const CoincidenceCounts> files) {
  if (files.empty()) throw std::invalid_argument("settings_pipeline: no count files");
  int n = files.front().setting.num_qubits();
  std::map<PauliString, std::pair<double, std::uint64_t>> acc;
  for (const auto& f : files) {
    if (f.setting.num_qubits() != n) {
      throw std::invalid_argument("settings_pipeline: setting " + f.setting.str() + " has " +
                                  std::to_string(f.setting.num_qubits()) + " qubits, expected " + std::to_string(n));
    }
    auto rec = counts_to_expectations(f);
    for (const auto& e : rec.entries()) {
      auto& slot = acc[e.pauli];
      slot.first += e.value * static_cast<double>(*e.shots);
      slot.second += *e.shots;
    }
  }
  MeasurementRecord rec(n);
  for (const auto& [p, sum] : acc) {
    rec.set({p, p.is_identity() ? 1.0 : sum.first / static_cast<double>(sum.second), sum.second});
  }
  return rec;
}

}  // namespace puretomo
