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

// Slow, independent reference implementations used only by tests. None of
// these call into the library's cost, detection or search code; they only
// read graph weights and tree structure.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hcstruct/graph.hpp"
#include "hcstruct/tree.hpp"

namespace oracle {

using hcs::HcTree;
using hcs::SimilarityGraph;
using hcs::Vertex;

/// Leaf bitmask for every node (n <= 64).
inline std::vector<std::uint64_t> node_masks(const HcTree& t) {
  std::vector<std::uint64_t> m(static_cast<std::size_t>(t.node_count()), 0);
  for (int u = t.node_count() - 1; u >= 0; --u) {
    const auto& nd = t.node(u);
    if (nd.is_leaf()) m[u] = std::uint64_t{1} << nd.leaf;
    for (int c : nd.children) m[u] |= m[c];
  }
  return m;
}

/// Leaf count of the smallest subtree holding every vertex in `want`.
inline int cluster_size(const std::vector<std::uint64_t>& masks,
                        std::uint64_t want) {
  int best = 1 << 30;
  for (auto m : masks)
    if ((m & want) == want) best = std::min(best, std::popcount(m));
  return best;
}

/// Triplet cost straight from Definition-style case analysis: the pair
/// whose smallest cluster is strictly smaller than the triple's merges first.
inline double triplet_cost(const SimilarityGraph& g,
                           const std::vector<std::uint64_t>& masks, Vertex i,
                           Vertex j, Vertex k) {
  auto bit = [](Vertex v) { return std::uint64_t{1} << v; };
  const int all = cluster_size(masks, bit(i) | bit(j) | bit(k));
  const double wij = g.weight(i, j), wik = g.weight(i, k),
               wjk = g.weight(j, k);
  if (cluster_size(masks, bit(i) | bit(j)) < all) return wik + wjk;
  if (cluster_size(masks, bit(i) | bit(k)) < all) return wij + wjk;
  if (cluster_size(masks, bit(j) | bit(k)) < all) return wij + wik;
  return wij + wik + wjk;
}

inline double total_cost_by_triplets(const SimilarityGraph& g,
                                     const HcTree& t) {
  const auto masks = node_masks(t);
  double s = 0;
  const int n = g.size();
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j)
      for (Vertex k = j + 1; k < n; ++k) s += triplet_cost(g, masks, i, j, k);
  return s;
}

inline double dasgupta_by_pairs(const SimilarityGraph& g, const HcTree& t) {
  const auto masks = node_masks(t);
  double s = 0;
  for (Vertex i = 0; i < g.size(); ++i)
    for (Vertex j = i + 1; j < g.size(); ++j)
      if (g.weight(i, j) > 0)
        s += g.weight(i, j) *
             cluster_size(masks, (std::uint64_t{1} << i) |
                                     (std::uint64_t{1} << j));
  return s;
}

inline double min_triplet(const SimilarityGraph& g, Vertex i, Vertex j,
                          Vertex k) {
  std::array<double, 3> w{g.weight(i, j), g.weight(i, k), g.weight(j, k)};
  std::sort(w.begin(), w.end());
  return w[0] + w[1];
}

inline double base_cost(const SimilarityGraph& g) {
  double s = 0;
  for (Vertex i = 0; i < g.size(); ++i)
    for (Vertex j = i + 1; j < g.size(); ++j)
      for (Vertex k = j + 1; k < g.size(); ++k) s += min_triplet(g, i, j, k);
  return s;
}

/// Wedges (triples with exactly two edges) and triangles.
struct Census {
  long long wedges = 0;
  long long triangles = 0;
};

inline Census census(const SimilarityGraph& g) {
  Census c;
  for (Vertex i = 0; i < g.size(); ++i)
    for (Vertex j = i + 1; j < g.size(); ++j)
      for (Vertex k = j + 1; k < g.size(); ++k) {
        const int e = (g.weight(i, j) > 0) + (g.weight(i, k) > 0) +
                      (g.weight(j, k) > 0);
        if (e == 2) ++c.wedges;
        if (e == 3) ++c.triangles;
      }
  return c;
}

// Exact comparisons only: the oracle is used on integer-weighted inputs.
enum class Kind { type1, type2, type3 };
struct TripletClass {
  Kind kind;
  Vertex a, b;  // type1: heaviest pair; type2: a = apex
};

inline TripletClass classify(const SimilarityGraph& g, Vertex i, Vertex j,
                             Vertex k) {
  const double wij = g.weight(i, j), wik = g.weight(i, k),
               wjk = g.weight(j, k);
  if (wij == wik && wik == wjk) return {Kind::type3, -1, -1};
  if (wij > wik && wij > wjk) return {Kind::type1, i, j};
  if (wik > wij && wik > wjk) return {Kind::type1, i, k};
  if (wjk > wij && wjk > wik) return {Kind::type1, j, k};
  if (wij == wik) return {Kind::type2, i, -1};
  if (wij == wjk) return {Kind::type2, j, -1};
  return {Kind::type2, k, -1};
}

/// Definition check of a labelling (side or block id per vertex).
inline bool respects_triplets(const SimilarityGraph& g,
                              const std::vector<int>& label) {
  const int n = g.size();
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j)
      for (Vertex k = j + 1; k < n; ++k) {
        const auto c = classify(g, i, j, k);
        if (c.kind == Kind::type1 && label[c.a] != label[c.b]) return false;
        if (c.kind == Kind::type2) {
          const Vertex x = c.a == i ? j : i;
          const Vertex y = c.a == k ? j : k;
          if (label[x] == label[y] && label[c.a] != label[x]) return false;
        }
      }
  return true;
}

/// All valid bipartitions, as side vectors with vertex 0 on side 0.
inline std::vector<std::vector<int>> valid_bipartitions(
    const SimilarityGraph& g) {
  const int n = g.size();
  std::vector<std::vector<int>> out;
  for (std::uint32_t m = 1; m < (std::uint32_t{1} << (n - 1)); ++m) {
    std::vector<int> side(static_cast<std::size_t>(n), 0);
    for (int v = 1; v < n; ++v) side[v] = (m >> (v - 1)) & 1;
    if (respects_triplets(g, side)) out.push_back(side);
  }
  return out;
}

/// O(n^4) claw scan w.r.t. a block labelling.
inline bool has_claw(const SimilarityGraph& g, const std::vector<int>& block) {
  const int n = g.size();
  for (Vertex a = 0; a < n; ++a)
    for (Vertex x = 0; x < n; ++x)
      for (Vertex y = x + 1; y < n; ++y)
        for (Vertex z = y + 1; z < n; ++z) {
          if (a == x || a == y || a == z) continue;
          const std::array<Vertex, 4> vs{a, x, y, z};
          bool distinct = true;
          for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q)
              distinct &= block[vs[p]] != block[vs[q]];
          if (!distinct) continue;
          const double w = g.weight(a, x);
          if (g.weight(a, y) != w || g.weight(a, z) != w) continue;
          if (w > g.weight(x, y) && w > g.weight(x, z) && w > g.weight(y, z))
            return true;
        }
  return false;
}

/// Minimum total cost over all binary trees, without pruning. Enumerates
/// by recursive splitting of the leaf set (a different scheme from the
/// library's insertion order).
inline double min_total_cost(const SimilarityGraph& g) {
  const int n = g.size();
  // best[M] = min over binary trees on vertex set M of the triplet cost of
  // triplets inside M; cross(A,B) weighted by |M|-2 at the root.
  std::vector<double> inner(std::size_t{1} << n, 0);
  for (std::uint32_t m = 0; m < inner.size(); ++m)
    for (Vertex i = 0; i < n; ++i)
      for (Vertex j = i + 1; j < n; ++j)
        if ((m >> i & 1) && (m >> j & 1)) inner[m] += g.weight(i, j);
  std::vector<double> best(inner.size(), 0);
  for (std::uint32_t m = 1; m < best.size(); ++m) {
    if (std::popcount(m) <= 2) continue;
    double b = 1e300;
    const std::uint32_t low = m & (~m + 1);
    // Submasks containing the lowest bit, excluding m itself.
    for (std::uint32_t s = (m - 1) & m; s; s = (s - 1) & m) {
      if (!(s & low)) continue;
      const std::uint32_t r = m ^ s;
      const double cross = inner[m] - inner[s] - inner[r];
      b = std::min(b, best[s] + best[r] + (std::popcount(m) - 2) * cross);
    }
    best[m] = b;
  }
  return best.back();
}

}  // namespace oracle
