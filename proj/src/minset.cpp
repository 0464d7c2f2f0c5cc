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

#include "puretomo/minset.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <deque>
#include <numeric>
#include <set>
#include <functional>
#include <stdexcept>
#include <unordered_map>

namespace puretomo {

namespace {

std::vector<PauliString> non_identity(int n) {
  auto all = all_paulis(n);
  all.erase(all.begin());
  return all;
}

}  // namespace

FailingSetHypergraph enumerate_failing_sets(int n) {
  if (n != 2 && n != 3) {
    throw std::invalid_argument("enumerate_failing_sets: unsupported qubit count " + std::to_string(n) +
                                " (2 or 3)");
  }
  FailingSetHypergraph h;
  h.n = n;
  h.vertices = non_identity(n);
  const auto& v = h.vertices;
  std::set<std::vector<PauliString>> edges;

  if (n == 2) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        if (commutes(v[i], v[j])) edges.insert({v[i], v[j]});
      }
    }
  } else {
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        if (!commutes(v[i], v[j])) continue;
        for (std::size_t k = j + 1; k < v.size(); ++k) {
          if (!commutes(v[i], v[k]) || !commutes(v[j], v[k])) continue;
          std::array<PauliString, 3> triple{v[i], v[j], v[k]};
          if (!independent(triple)) continue;
          std::vector<PauliString> e{v[i], v[j], v[k], v[i] * v[j] * v[k]};
          std::sort(e.begin(), e.end());
          edges.insert(std::move(e));
        }
      }
    }
  }

  for (const auto& e : edges) {
    auto verdict = is_failing_set(e);
    if (!verdict.failing || !verdict.exact) {
      throw std::logic_error("enumerate_failing_sets: edge failed exact validation");
    }
  }
  h.edges.assign(edges.begin(), edges.end());
  return h;
}

// --- branch and bound ----------------------------------------------------------

namespace {

class FailingFreeSearch {
 public:
  FailingFreeSearch(const FailingSetHypergraph& h, const SearchOptions& opts) : opts_(opts) {
    std::size_t nv = h.vertices.size();
    for (std::size_t i = 0; i < nv; ++i) index_of_[h.vertices[i].index()] = static_cast<int>(i);
    adj_.resize(nv);
    for (const auto& e : h.edges) {
      std::vector<int> ids;
      for (const auto& p : e) {
        auto it = index_of_.find(p.index());
        if (it == index_of_.end() || p.num_qubits() != h.n) {
          throw std::invalid_argument("hypergraph edge member " + p.str() + " is not a vertex");
        }
        ids.push_back(it->second);
      }
      for (int id : ids) adj_[id].push_back(static_cast<int>(edges_.size()));
      edges_.push_back(std::move(ids));
    }
    // Descending degree, ties broken by canonical vertex order.
    order_.resize(nv);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](int a, int b) { return adj_[a].size() > adj_[b].size(); });
    status_.assign(nv, kUndecided);
    edge_in_.assign(edges_.size(), 0);
    edge_out_.assign(edges_.size(), 0);
    stamp_.assign(nv, 0);
    undecided_ = static_cast<int>(nv);
    build_blocks(h);
  }

  SearchResult run(const FailingSetHypergraph& h) {
    aborted_ = false;
    dfs();
    SearchResult r;
    r.nodes_explored = nodes_;
    r.optimal = !aborted_;
    for (std::size_t i = 0; i < best_.size(); ++i) {
      if (best_[i]) r.best_subset.push_back(h.vertices[i]);
    }
    return r;
  }

 private:
  static constexpr char kUndecided = 0, kIn = 1, kOut = 2;

  void assign(int v, char s) {
    status_[v] = s;
    --undecided_;
    if (s == kIn) ++in_;
    if (block_of_[v].empty()) {
      --uncovered_undecided_;
      if (s == kIn) ++uncovered_in_;
    }
    for (int e : adj_[v]) (s == kIn ? edge_in_[e] : edge_out_[e])++;
    for (auto [b, bit] : block_of_[v]) (s == kIn ? blocks_[b].in : blocks_[b].out) |= bit;
    trail_.push_back(v);
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      int v = trail_.back();
      trail_.pop_back();
      char s = status_[v];
      for (int e : adj_[v]) (s == kIn ? edge_in_[e] : edge_out_[e])--;
      for (auto [b, bit] : block_of_[v]) (s == kIn ? blocks_[b].in : blocks_[b].out) &= ~bit;
      if (s == kIn) --in_;
      ++undecided_;
      if (block_of_[v].empty()) {
        ++uncovered_undecided_;
        if (s == kIn) --uncovered_in_;
      }
      status_[v] = kUndecided;
    }
  }

  // Including v may leave an edge with a single open slot; that vertex is
  // forced out.
  void include(int v) {
    assign(v, kIn);
    for (int e : adj_[v]) {
      const auto& members = edges_[e];
      if (edge_out_[e] != 0 || edge_in_[e] + 1 != static_cast<int>(members.size())) continue;
      for (int u : members) {
        if (status_[u] == kUndecided) {
          assign(u, kOut);
          break;
        }
      }
    }
  }

  // A block is the set of non-identity elements of the group generated by
  // an edge, when that group lies inside the vertex set. Its exact
  // capacity table caps how many undecided members can still be added.
  void build_blocks(const FailingSetHypergraph& h) {
    std::set<std::vector<int>> seen;
    block_of_.resize(status_.size());
    for (const auto& e : h.edges) {
      std::vector<std::uint64_t> span{0};
      for (const auto& p : e) {
        std::uint64_t v = (std::uint64_t{p.x_bits()} << 32) | p.z_bits();
        if (std::find(span.begin(), span.end(), v) != span.end()) continue;
        std::size_t m = span.size();
        for (std::size_t i = 0; i < m; ++i) span.push_back(span[i] ^ v);
      }
      if (span.size() - 1 > kMaxBlock) continue;
      std::vector<int> ids;
      bool inside = true;
      for (std::size_t i = 1; i < span.size(); ++i) {
        PauliString p(h.n, static_cast<std::uint32_t>(span[i] >> 32), static_cast<std::uint32_t>(span[i]));
        auto it = index_of_.find(p.index());
        if (it == index_of_.end()) {
          inside = false;
          break;
        }
        ids.push_back(it->second);
      }
      if (!inside) continue;
      std::sort(ids.begin(), ids.end());
      if (seen.insert(ids).second) add_block(ids);
    }
    min_cover_ = 0;
    uncovered_undecided_ = 0;
    for (const auto& bl : block_of_) {
      if (bl.empty()) {
        ++uncovered_undecided_;
      } else if (min_cover_ == 0 || static_cast<int>(bl.size()) < min_cover_) {
        min_cover_ = static_cast<int>(bl.size());
      }
    }
  }

  void add_block(const std::vector<int>& ids) {
    Block b;
    b.members = ids;
    int m = static_cast<int>(ids.size());
    std::uint32_t full = (1u << m) - 1;
    std::vector<std::uint32_t> local_edges;
    for (const auto& e : edges_) {
      std::uint32_t mask = 0;
      bool inside = true;
      for (int u : e) {
        auto it = std::find(ids.begin(), ids.end(), u);
        if (it == ids.end()) {
          inside = false;
          break;
        }
        mask |= 1u << (it - ids.begin());
      }
      if (inside) local_edges.push_back(mask);
    }
    std::vector<bool> ok(full + 1);
    for (std::uint32_t s = 0; s <= full; ++s) {
      ok[s] = std::none_of(local_edges.begin(), local_edges.end(),
                           [s](std::uint32_t e) { return (s & e) == e; });
    }
    b.capacity.assign(std::size_t{1} << (2 * m), 0);
    for (std::uint32_t in = 0; in <= full; ++in) {
      if (!ok[in]) continue;
      std::uint32_t rest = full & ~in;
      // Enumerate undecided masks within the rest, then their submasks.
      for (std::uint32_t und = rest;; und = (und - 1) & rest) {
        int best = 0;
        for (std::uint32_t sub = und;; sub = (sub - 1) & und) {
          if (ok[in | sub]) best = std::max(best, std::popcount(sub));
          if (sub == 0) break;
        }
        b.capacity[(std::size_t{in} << m) | und] = static_cast<std::uint8_t>(best);
        if (und == 0) break;
      }
    }
    int id = static_cast<int>(blocks_.size());
    for (int i = 0; i < m; ++i) block_of_[ids[i]].push_back({id, 1u << i});
    blocks_.push_back(std::move(b));
  }

  // Upper bound on the final size: a vertex-disjoint selection of blocks
  // (largest forced drop first), then open edges on what is left, each
  // contributes a number of undecided vertices that must be dropped.
  int upper_bound() {
    ++epoch_;
    int dropped = 0;
    auto& by_saving = by_saving_;
    for (auto& bucket : by_saving) bucket.clear();
    int block_total = 0;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      const auto& blk = blocks_[b];
      int m = static_cast<int>(blk.members.size());
      std::uint32_t und = ((1u << m) - 1) & ~(blk.in | blk.out);
      int cap = blk.capacity[(std::size_t{blk.in} << m) | und];
      block_total += std::popcount(blk.in) + cap;
      int saving = std::popcount(und) - cap;
      if (saving > 0) by_saving[saving].push_back(static_cast<int>(b));
    }
    // Every covered vertex sits in at least min_cover_ blocks, so summing
    // block capacities counts each final member at least that often.
    int averaged = in_ + undecided_;
    if (min_cover_ > 0) {
      averaged = uncovered_in_ + uncovered_undecided_ + block_total / min_cover_;
    }
    for (int saving = kMaxBlock; saving >= 1; --saving) {
      for (int b : by_saving[saving]) {
        const auto& blk = blocks_[b];
        bool free = true;
        for (int u : blk.members) {
          if (status_[u] == kUndecided && stamp_[u] == epoch_) {
            free = false;
            break;
          }
        }
        if (!free) continue;
        for (int u : blk.members) {
          if (status_[u] == kUndecided) stamp_[u] = epoch_;
        }
        dropped += saving;
      }
    }
    for (int want = 2; want <= 4; ++want) {
      for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (edge_out_[e] != 0) continue;
        int open = static_cast<int>(edges_[e].size()) - edge_in_[e];
        if (open != want && !(want == 4 && open > 4)) continue;
        bool free = true;
        for (int u : edges_[e]) {
          if (status_[u] == kUndecided && stamp_[u] == epoch_) {
            free = false;
            break;
          }
        }
        if (!free) continue;
        for (int u : edges_[e]) {
          if (status_[u] == kUndecided) stamp_[u] = epoch_;
        }
        ++dropped;
      }
    }
    return std::min(in_ + undecided_ - dropped, averaged);
  }

  // Branch on the undecided vertex with the largest residual edge-degree,
  // edges weighted by how many members are already in (8^in), ties by the
  // static order. Returns -1 when every vertex is decided.
  int pick_vertex() const {
    int v = -1;
    long best = -1;
    for (int u : order_) {
      if (status_[u] != kUndecided) continue;
      long score = 0;
      for (int e : adj_[u]) {
        if (edge_out_[e] == 0) score += 1L << (3 * edge_in_[e]);
      }
      if (score > best) {
        best = score;
        v = u;
      }
    }
    return v;
  }

  void dfs() {
    if (aborted_) return;
    ++nodes_;
    if (opts_.node_limit != 0 && nodes_ > opts_.node_limit) {
      aborted_ = true;
      return;
    }
    if (in_ + undecided_ <= best_size_) return;
    if (undecided_ == 0) {
      best_size_ = in_;
      best_.assign(status_.size(), false);
      for (std::size_t i = 0; i < status_.size(); ++i) best_[i] = status_[i] == kIn;
      return;
    }
    if (upper_bound() <= best_size_) return;
    int v = pick_vertex();
    std::size_t mark = trail_.size();
    include(v);
    dfs();
    undo(mark);
    assign(v, kOut);
    dfs();
    undo(mark);
  }

  static constexpr std::size_t kMaxBlock = 7;

  struct Block {
    std::vector<int> members;
    std::vector<std::uint8_t> capacity;  // indexed by (in_mask << m) | undecided_mask
    std::uint32_t in = 0, out = 0;
  };

  SearchOptions opts_;
  std::vector<Block> blocks_;
  std::array<std::vector<int>, kMaxBlock + 1> by_saving_;
  std::vector<std::vector<std::pair<int, std::uint32_t>>> block_of_;
  int min_cover_ = 0;
  int uncovered_in_ = 0;
  int uncovered_undecided_ = 0;
  std::unordered_map<std::uint32_t, int> index_of_;
  std::vector<std::vector<int>> edges_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> order_;
  std::vector<char> status_;
  std::vector<int> edge_in_, edge_out_;
  std::vector<std::uint64_t> stamp_;
  std::uint64_t epoch_ = 0;
  std::vector<int> trail_;
  int in_ = 0;
  int undecided_ = 0;
  int best_size_ = -1;
  std::vector<bool> best_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace

SearchResult max_failing_free_subset(const FailingSetHypergraph& h, const SearchOptions& opts) {
  FailingFreeSearch search(h, opts);
  return search.run(h);
}

CandidateResult min_uda_candidate(int n) {
  auto h = enumerate_failing_sets(n);
  auto search = max_failing_free_subset(h);
  std::vector<PauliString> measured{PauliString::identity(n)};
  for (const auto& v : h.vertices) {
    if (!std::binary_search(search.best_subset.begin(), search.best_subset.end(), v)) measured.push_back(v);
  }
  return CandidateResult{MeasurementSet(n, std::move(measured)), std::move(search), h.edges.size()};
}

// --- Clifford orbits -----------------------------------------------------------

void sort_by_masks(std::vector<PauliString>& s) {
  std::sort(s.begin(), s.end(), [](const PauliString& a, const PauliString& b) {
    if (a.x_bits() != b.x_bits()) return a.x_bits() < b.x_bits();
    return a.z_bits() < b.z_bits();
  });
}

namespace {

using Generator = std::function<PauliString(const PauliString&)>;

std::vector<Generator> clifford_generators(int n) {
  auto bit = [n](int q) { return std::uint32_t{1} << (n - 1 - q); };
  std::vector<Generator> gens;
  for (int q = 0; q < n; ++q) {
    std::uint32_t b = bit(q);
    gens.emplace_back([n, b](const PauliString& p) {
      std::uint32_t x = p.x_bits(), z = p.z_bits();
      std::uint32_t nx = (x & ~b) | (z & b), nz = (z & ~b) | (x & b);
      return PauliString(n, nx, nz);
    });
    gens.emplace_back([n, b](const PauliString& p) {
      return PauliString(n, p.x_bits(), p.z_bits() ^ (p.x_bits() & b));
    });
  }
  for (int c = 0; c < n; ++c) {
    for (int t = 0; t < n; ++t) {
      if (c == t) continue;
      std::uint32_t bc = bit(c), bt = bit(t);
      gens.emplace_back([n, bc, bt](const PauliString& p) {
        std::uint32_t x = p.x_bits(), z = p.z_bits();
        if (x & bc) x ^= bt;
        if (z & bt) z ^= bc;
        return PauliString(n, x, z);
      });
    }
  }
  return gens;
}

}  // namespace

OrbitResult clifford_orbit(std::span<const PauliString> s, std::size_t max_size) {
  if (s.empty()) throw std::invalid_argument("clifford_orbit: empty set");
  int n = s.front().num_qubits();
  for (const auto& p : s) {
    if (p.num_qubits() != n) throw std::invalid_argument("clifford_orbit: mixed qubit counts");
  }
  auto key = [](const std::vector<PauliString>& v) {
    std::vector<std::uint64_t> k;
    k.reserve(v.size());
    for (const auto& p : v) k.push_back((std::uint64_t{p.x_bits()} << 32) | p.z_bits());
    return k;
  };
  auto gens = clifford_generators(n);
  OrbitResult out;
  std::set<std::vector<std::uint64_t>> seen;
  std::vector<PauliString> start(s.begin(), s.end());
  sort_by_masks(start);
  start.erase(std::unique(start.begin(), start.end()), start.end());
  seen.insert(key(start));
  out.sets.push_back(start);
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t cur = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      std::vector<PauliString> img;
      img.reserve(out.sets[cur].size());
      for (const auto& p : out.sets[cur]) img.push_back(g(p));
      sort_by_masks(img);
      if (!seen.insert(key(img)).second) continue;
      if (out.sets.size() >= max_size) {
        out.closed = false;
        return out;
      }
      out.sets.push_back(std::move(img));
      queue.push_back(out.sets.size() - 1);
    }
  }
  out.closed = true;
  return out;
}

}  // namespace puretomo
