// Copyright 2026 The hcstruct Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Exhaustive search over binary trees by stepwise leaf insertion: leaf k is
// hung above each of the 2k-1 nodes of a tree on leaves 0..k-1, which
// visits every rooted binary topology exactly once.
//
// A tree on a prefix of the leaves already fixes the cost of every triplet
// inside that prefix, and later insertions never change it, so the prefix
// cost is a lower bound for the whole branch.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

#include "hcstruct/cost.hpp"
#include "hcstruct/error.hpp"
#include "hcstruct/graph.hpp"
#include "hcstruct/rational.hpp"
#include "hcstruct/tree.hpp"

namespace hcs {

inline constexpr int kBruteForceCap = 10;

struct Optimum {
  double total = 0;
  double base = 0;
  double rho = 1;
  std::optional<Rational> exact;  // set for integer weights
  HcTree tree;
  std::uint64_t trees_searched = 0;
};

struct BruteOptions {
  int jobs = 1;
  int cap = kBruteForceCap;
};

/// (2n-3)!!, the number of rooted binary trees on n >= 2 labelled leaves.
inline std::uint64_t binary_tree_count(int n) {
  std::uint64_t c = 1;
  for (int k = 3; k <= 2 * n - 3; k += 2) c *= static_cast<std::uint64_t>(k);
  return c;
}

namespace detail {

// Mutable tree under insertion. Leaf v is node v; the internal node created
// when leaf k is inserted has id n + k - 1 (the first cherry is node n).
class InsertionTree {
 public:
  explicit InsertionTree(int n)
      : n_(n),
        left_(2 * n, -1),
        right_(2 * n, -1),
        parent_(2 * n, -1),
        mask_(2 * n, 0) {
    for (int v = 0; v < n; ++v) mask_[v] = std::uint32_t{1} << v;
    left_[n] = 0;
    right_[n] = 1;
    parent_[0] = parent_[1] = n;
    mask_[n] = 3;
    root_ = n;
  }

  int n() const noexcept { return n_; }
  int root() const noexcept { return root_; }

  // Node ids present once leaves 0..k-1 are placed, in insertion order.
  int position(int k, int idx) const noexcept {
    return idx < k ? idx : n_ + (idx - k);
  }

  void insert(int k, int u) {
    const int x = n_ + k - 1;
    const int p = parent_[u];
    left_[x] = u;
    right_[x] = k;
    parent_[u] = x;
    parent_[k] = x;
    parent_[x] = p;
    mask_[x] = mask_[u] | (std::uint32_t{1} << k);
    if (p < 0) {
      root_ = x;
    } else {
      (left_[p] == u ? left_[p] : right_[p]) = x;
      for (int a = p; a >= 0; a = parent_[a]) mask_[a] |= std::uint32_t{1} << k;
    }
  }

  void remove(int k) {
    const int x = n_ + k - 1;
    const int u = left_[x];
    const int p = parent_[x];
    parent_[u] = p;
    parent_[k] = -1;
    if (p < 0) {
      root_ = u;
    } else {
      (left_[p] == x ? left_[p] : right_[p]) = u;
      for (int a = p; a >= 0; a = parent_[a])
        mask_[a] &= ~(std::uint32_t{1} << k);
    }
    left_[x] = right_[x] = parent_[x] = -1;
  }

  // Triplet cost of the tree on leaves 0..k-1.
  double cost(int k, const std::vector<double>& inner) const {
    double sum = 0;
    for (int x = n_; x < n_ + k - 1; ++x) {
      const std::uint32_t m = mask_[x];
      const int size = std::popcount(m);
      if (size <= 2) continue;
      sum += (size - 2) *
             (inner[m] - inner[mask_[left_[x]]] - inner[mask_[right_[x]]]);
    }
    return sum;
  }

  HcTree to_tree() const {
    TreeBuilder b;
    std::function<NodeId(int)> rec = [&](int u) -> NodeId {
      if (u < n_) return b.leaf(u);
      const NodeId l = rec(left_[u]);
      const NodeId r = rec(right_[u]);
      return b.join(l, r);
    };
    return b.build(rec(root_));
  }

 private:
  int n_;
  std::vector<int> left_, right_, parent_;
  std::vector<std::uint32_t> mask_;
  int root_;
};

// inner[M] = total weight of pairs inside vertex set M.
inline std::vector<double> inner_weights(const SimilarityGraph& g) {
  const int n = g.size();
  std::vector<double> inner(std::size_t{1} << n, 0.0);
  for (std::uint32_t m = 1; m < inner.size(); ++m) {
    const int b = std::countr_zero(m);
    const std::uint32_t rest = m & (m - 1);
    double s = inner[rest];
    for (std::uint32_t r = rest; r; r &= r - 1) s += g.weight(b, std::countr_zero(r));
    inner[m] = s;
  }
  return inner;
}

inline void check_size(int n, int cap) {
  if (n < 1) throw Error(Errc::invalid_param, "need at least one vertex");
  if (n > cap)
    throw Error(Errc::too_large,
                "exhaustive search is capped at n = " + std::to_string(cap) +
                    " (got n = " + std::to_string(n) +
                    "); use detect or approx for larger graphs");
}

struct Task {
  std::vector<int> choices;  // insertion positions for leaves 2, 3, ...
};

inline void expand_tasks(int n, int depth, Task& cur, std::vector<Task>& out) {
  const int k = 2 + static_cast<int>(cur.choices.size());
  if (static_cast<int>(cur.choices.size()) == depth || k >= n) {
    out.push_back(cur);
    return;
  }
  for (int idx = 0; idx < 2 * k - 1; ++idx) {
    cur.choices.push_back(idx);
    expand_tasks(n, depth, cur, out);
    cur.choices.pop_back();
  }
}

struct Search {
  const std::vector<double>& inner;
  std::atomic<double>* shared_bound;  // best total seen by any task
  double best = std::numeric_limits<double>::infinity();
  std::optional<HcTree> best_tree;

  bool pruned(double partial) const {
    // Local ties are pruned; cross-task ties must survive so the lowest task
    // index can win regardless of scheduling.
    return partial >= best || partial > shared_bound->load();
  }

  void dfs(InsertionTree& t, int k) {
    const int n = t.n();
    if (k == n) {
      const double c = t.cost(n, inner);
      if (c < best) {
        best = c;
        best_tree = t.to_tree();
        double cur = shared_bound->load();
        while (c < cur && !shared_bound->compare_exchange_weak(cur, c)) {
        }
      }
      return;
    }
    for (int idx = 0; idx < 2 * k - 1; ++idx) {
      t.insert(k, t.position(k, idx));
      if (!pruned(t.cost(k + 1, inner))) dfs(t, k + 1);
      t.remove(k);
    }
  }
};

}  // namespace detail

/// Calls f on each binary tree over leaves 0..n-1 in enumeration order.
inline void for_each_tree(int n, const std::function<void(const HcTree&)>& f,
                          int cap = kBruteForceCap) {
  detail::check_size(n, cap);
  if (n == 1) {
    f(single_leaf(0));
    return;
  }
  detail::InsertionTree t(n);
  std::function<void(int)> rec = [&](int k) {
    if (k == n) {
      f(t.to_tree());
      return;
    }
    for (int idx = 0; idx < 2 * k - 1; ++idx) {
      t.insert(k, t.position(k, idx));
      rec(k + 1);
      t.remove(k);
    }
  };
  rec(2);
}

inline std::vector<HcTree> enumerate_trees(int n, int cap = kBruteForceCap) {
  std::vector<HcTree> out;
  for_each_tree(n, [&](const HcTree& t) { out.push_back(t); }, cap);
  return out;
}

/// Exact minimum ratio cost over all binary trees. The tree returned is the
/// first strict minimum in enumeration order, independent of jobs.
inline Optimum optimal_ratio_bruteforce(const SimilarityGraph& g,
                                        const BruteOptions& opt = {}) {
  const int n = g.size();
  detail::check_size(n, opt.cap);
  Optimum out;
  out.base = base_cost(g);
  out.trees_searched = n == 1 ? 1 : binary_tree_count(n);
  if (n <= 2) {
    out.tree = n == 1 ? single_leaf(0) : caterpillar(2);
    out.total = 0;
  } else {
    const auto inner = detail::inner_weights(g);
    const int jobs = std::max(1, opt.jobs);
    std::vector<detail::Task> tasks;
    detail::Task root;
    // Three levels give 3*5*7 = 105 tasks, enough to balance small pools.
    detail::expand_tasks(n, jobs == 1 ? 0 : 3, root, tasks);
    std::atomic<double> bound{std::numeric_limits<double>::infinity()};
    std::vector<detail::Search> results(
        tasks.size(),
        detail::Search{inner, &bound, std::numeric_limits<double>::infinity(),
                       std::nullopt});
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
        detail::InsertionTree t(n);
        int k = 2;
        bool alive = true;
        for (int idx : tasks[i].choices) {
          t.insert(k, t.position(k, idx));
          ++k;
        }
        if (k < n && results[i].pruned(t.cost(k, inner))) alive = false;
        if (alive) results[i].dfs(t, k);
      }
    };
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      const int used = std::min<int>(jobs, static_cast<int>(tasks.size()));
      for (int w = 0; w < used; ++w) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    std::size_t win = 0;
    for (std::size_t i = 1; i < results.size(); ++i)
      if (results[i].best < results[win].best) win = i;
    out.total = results[win].best;
    out.tree = std::move(*results[win].best_tree);
  }
  out.rho = ratio_value(out.total, out.base);
  out.exact = exact_ratio(out.total, out.base);
  return out;
}

}  // namespace hcs
