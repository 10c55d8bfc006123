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

// Exact recognition of graphs whose optimal tree is consistent with every
// triplet. build_bisection() splits the vertex set top-down: each level
// computes the finest partition forced by the triplet types, then either
// finds a claw (Case 1) and tries the few bipartitions it allows, or reduces
// the split to 2-colouring a block constraint graph (Case 2).

#include <algorithm>
#include <array>
#include <deque>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hcstruct/error.hpp"
#include "hcstruct/graph.hpp"
#include "hcstruct/tree.hpp"

namespace hcs {

/// Disjoint blocks covering 0..n-1, numbered by ascending smallest member.
struct Partition {
  std::vector<std::vector<Vertex>> blocks;
  std::vector<int> block_of;

  int size() const noexcept { return static_cast<int>(blocks.size()); }

  /// Normalizes arbitrary per-vertex keys into a Partition.
  static Partition from_keys(const std::vector<int>& key) {
    Partition p;
    p.block_of.assign(key.size(), -1);
    std::vector<int> remap;
    std::vector<std::pair<int, int>> seen;  // key -> block id
    for (std::size_t v = 0; v < key.size(); ++v) {
      int id = -1;
      for (const auto& [k, b] : seen)
        if (k == key[v]) {
          id = b;
          break;
        }
      if (id < 0) {
        id = static_cast<int>(p.blocks.size());
        seen.emplace_back(key[v], id);
        p.blocks.emplace_back();
      }
      p.block_of[v] = id;
      p.blocks[id].push_back(static_cast<Vertex>(v));
    }
    return p;
  }
};

struct Bipartition {
  std::vector<Vertex> a;
  std::vector<Vertex> b;
  friend bool operator==(const Bipartition&, const Bipartition&) = default;
};

/// {apex | leaves}: three equal legs, each heavier than every base edge.
struct Claw {
  Vertex apex = -1;
  std::array<Vertex, 3> leaves{};
  double leg_weight = 0;
  friend bool operator==(const Claw&, const Claw&) = default;
};

/// Labels one block receives while scanning a crossing edge.
struct ClusterLabelSet {
  bool label0 = false;
  bool label1 = false;
  Vertex witness0 = -1;
  Vertex witness1 = -1;
  std::vector<double> weights;   // distinct '(2, w)' weights
  std::vector<Vertex> witness2;  // vertex that produced weights[i]

  bool has2() const noexcept { return !weights.empty(); }
};

struct Failure {
  enum class Kind { single_block, invalid_partition, no_candidate, odd_cycle };
  Kind kind;
  std::vector<Vertex> witness;  // triplet, cycle of blocks, or empty
  std::string message;
};

template <class T>
using Outcome = std::variant<T, Failure>;

struct NotPerfect {
  std::vector<Vertex> vertices;  // working set where bisection failed
  Failure failure;
};

using BisectionResult = std::variant<HcTree, NotPerfect>;

struct DetectOptions {
  /// Re-check every returned bipartition against the full triplet rules.
  bool verify = false;
};

namespace detail {

class Dsu {
 public:
  explicit Dsu(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<int> parent_;
};

// Remaining two vertices of the triplet once the apex is removed.
inline std::pair<Vertex, Vertex> bases(Vertex apex, Vertex i, Vertex j,
                                       Vertex k) {
  if (apex == i) return {j, k};
  if (apex == j) return {i, k};
  return {i, j};
}

template <class F>
void for_each_triplet(int n, F&& f) {
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j)
      for (Vertex k = j + 1; k < n; ++k) f(i, j, k);
}

inline std::string join_vertices(const std::vector<Vertex>& vs) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(vs[i]);
  }
  return s;
}

}  // namespace detail

/// First triplet breaking the partition rules: a Type-1 max pair that is
/// split, or a Type-2 triplet whose two base vertices share a block that
/// the apex is not in.
inline std::optional<std::array<Vertex, 3>> partition_violation(
    const SimilarityGraph& g, const std::vector<int>& block_of) {
  std::optional<std::array<Vertex, 3>> out;
  const int n = g.size();
  for (Vertex i = 0; i < n && !out; ++i)
    for (Vertex j = i + 1; j < n && !out; ++j)
      for (Vertex k = j + 1; k < n && !out; ++k) {
        const auto t = detail::classify(g, i, j, k);
        bool bad = false;
        if (const auto* t1 = std::get_if<Type1>(&t)) {
          bad = block_of[t1->first] != block_of[t1->second];
        } else if (const auto* t2 = std::get_if<Type2>(&t)) {
          const auto [b, c] = detail::bases(t2->apex, i, j, k);
          bad = block_of[b] == block_of[c] &&
                block_of[t2->apex] != block_of[b];
        }
        if (bad) out = std::array<Vertex, 3>{i, j, k};
      }
  return out;
}

inline bool is_valid_partition(const SimilarityGraph& g, const Partition& p) {
  return p.size() > 1 && !partition_violation(g, p.block_of);
}

inline bool is_valid_bipartition(const SimilarityGraph& g,
                                 const Bipartition& bp) {
  if (bp.a.empty() || bp.b.empty()) return false;
  std::vector<int> side(static_cast<std::size_t>(g.size()), -1);
  for (Vertex v : bp.a) side.at(v) = 0;
  for (Vertex v : bp.b) {
    if (side.at(v) != -1) return false;
    side[v] = 1;
  }
  if (std::find(side.begin(), side.end(), -1) != side.end()) return false;
  return !partition_violation(g, side);
}

/// Finest partition every valid partition coarsens.
///
/// Type-1 max pairs are merged first. A Type-2 triplet whose bases already
/// share a block forces the apex into that block too, so those merges are
/// applied to a fixpoint; the result then satisfies both rules by
/// construction and only a collapse to one block is a failure.
inline Outcome<Partition> minimal_valid_partition(const SimilarityGraph& g) {
  const int n = g.size();
  if (n < 2) throw Error(Errc::invalid_param, "partition needs >= 2 vertices");
  detail::Dsu dsu(n);
  detail::for_each_triplet(n, [&](Vertex i, Vertex j, Vertex k) {
    if (const auto t = detail::classify(g, i, j, k); auto* t1 =
            std::get_if<Type1>(&t))
      dsu.unite(t1->first, t1->second);
  });
  for (bool changed = true; changed;) {
    changed = false;
    detail::for_each_triplet(n, [&](Vertex i, Vertex j, Vertex k) {
      const auto t = detail::classify(g, i, j, k);
      const auto* t2 = std::get_if<Type2>(&t);
      if (!t2) return;
      const auto [b, c] = detail::bases(t2->apex, i, j, k);
      if (dsu.find(b) == dsu.find(c)) changed |= dsu.unite(t2->apex, b);
    });
  }
  std::vector<int> key(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) key[v] = dsu.find(v);
  Partition p = Partition::from_keys(key);
  if (p.size() == 1)
    return Failure{Failure::Kind::single_block, {},
                   "triplet constraints merge every vertex into one block"};
  if (auto bad = partition_violation(g, p.block_of))
    return Failure{Failure::Kind::invalid_partition,
                   {(*bad)[0], (*bad)[1], (*bad)[2]},
                   "partition violates triplet " +
                       detail::join_vertices({(*bad)[0], (*bad)[1],
                                              (*bad)[2]})};
  return p;
}

/// Labels of every other block for the crossing edge (j, k).
inline std::vector<ClusterLabelSet> label_blocks(const SimilarityGraph& g,
                                                 const Partition& p, Vertex j,
                                                 Vertex k) {
  std::vector<ClusterLabelSet> labels(static_cast<std::size_t>(p.size()));
  const int bj = p.block_of[j], bk = p.block_of[k];
  for (Vertex r = 0; r < g.size(); ++r) {
    const int br = p.block_of[r];
    if (br == bj || br == bk) continue;
    auto& ls = labels[br];
    const auto t = detail::classify(g, j, k, r);
    if (std::holds_alternative<Type3>(t)) {
      if (!ls.label0) ls.witness0 = r;
      ls.label0 = true;
    } else if (const auto* t2 = std::get_if<Type2>(&t)) {
      if (t2->apex != r) {
        if (!ls.label1) ls.witness1 = r;
        ls.label1 = true;
      } else {
        const double w = g.weight(j, r);
        const bool known = std::any_of(
            ls.weights.begin(), ls.weights.end(),
            [&](double x) { return g.equal(x, w); });
        if (!known) {
          ls.weights.push_back(w);
          ls.witness2.push_back(r);
        }
      }
    }
    // Type-1 cannot occur on a crossing triplet of a valid partition.
  }
  return labels;
}

namespace detail {

inline Claw make_claw(const SimilarityGraph& g, Vertex apex, Vertex a,
                      Vertex b, Vertex c) {
  Claw claw;
  claw.apex = apex;
  claw.leaves = {a, b, c};
  std::sort(claw.leaves.begin(), claw.leaves.end());
  claw.leg_weight = g.weight(apex, a);
  return claw;
}

// Claw with (j, k) as a base edge, from the configurations C-1..C-3.
inline std::optional<Claw> claw_for_edge(const SimilarityGraph& g,
                                         const Partition& p, Vertex j,
                                         Vertex k) {
  const auto labels = label_blocks(g, p, j, k);
  const int m = p.size();
  // C-1 / C-2: one block with '0' (or '1'), a different one with '(2, w)'.
  for (int s = 0; s < m; ++s) {
    if (!labels[s].has2()) continue;
    for (int r = 0; r < m; ++r) {
      if (r == s) continue;
      if (labels[r].label0)
        return make_claw(g, labels[s].witness2[0], j, k, labels[r].witness0);
    }
  }
  for (int s = 0; s < m; ++s) {
    if (!labels[s].has2()) continue;
    for (int r = 0; r < m; ++r) {
      if (r == s) continue;
      if (labels[r].label1)
        return make_claw(g, labels[s].witness2[0], j, k, labels[r].witness1);
    }
  }
  // C-3: two blocks carrying different '(2, .)' weights. Comparing every
  // block against the first one that carries such a label is enough.
  int first = -1;
  for (int b = 0; b < m && first < 0; ++b)
    if (labels[b].has2()) first = b;
  if (first < 0) return std::nullopt;
  const auto& f = labels[first];
  for (int s = first + 1; s < m; ++s) {
    const auto& ls = labels[s];
    for (std::size_t x = 0; x < ls.weights.size(); ++x)
      for (std::size_t y = 0; y < f.weights.size(); ++y) {
        if (g.equal(ls.weights[x], f.weights[y])) continue;
        // The heavier legs belong to the apex.
        const bool mine = ls.weights[x] > f.weights[y];
        const Vertex apex = mine ? ls.witness2[x] : f.witness2[y];
        const Vertex leaf = mine ? f.witness2[y] : ls.witness2[x];
        return make_claw(g, apex, j, k, leaf);
      }
  }
  return std::nullopt;
}

}  // namespace detail

/// First claw found scanning crossing edges in lexicographic order.
inline std::optional<Claw> detect_claw(const SimilarityGraph& g,
                                       const Partition& p) {
  const int n = g.size();
  for (Vertex j = 0; j < n; ++j)
    for (Vertex k = j + 1; k < n; ++k) {
      if (p.block_of[j] == p.block_of[k]) continue;
      if (auto c = detail::claw_for_edge(g, p, j, k)) return c;
    }
  return std::nullopt;
}

/// Direct check of the claw definition against a partition.
inline bool is_claw(const SimilarityGraph& g, const Partition& p,
                    const Claw& c) {
  const std::array<Vertex, 4> vs{c.apex, c.leaves[0], c.leaves[1],
                                 c.leaves[2]};
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      if (vs[a] == vs[b] || p.block_of[vs[a]] == p.block_of[vs[b]])
        return false;
  for (Vertex l : c.leaves)
    if (!g.equal(g.weight(c.apex, l), c.leg_weight)) return false;
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b)
      if (!g.greater(c.leg_weight, g.weight(c.leaves[a], c.leaves[b])))
        return false;
  return true;
}

namespace detail {

inline Bipartition split_blocks(const Partition& p,
                                const std::vector<int>& side) {
  Bipartition bp;
  for (int b = 0; b < p.size(); ++b) {
    auto& dst = side[b] == 0 ? bp.a : bp.b;
    dst.insert(dst.end(), p.blocks[b].begin(), p.blocks[b].end());
  }
  std::sort(bp.a.begin(), bp.a.end());
  std::sort(bp.b.begin(), bp.b.end());
  return bp;
}

// Calls f(apex_block, base_block, base_block) for every crossing Type-2
// triplet.
template <class F>
void for_each_crossing_type2(const SimilarityGraph& g, const Partition& p,
                             F&& f) {
  const auto& bo = p.block_of;
  for_each_triplet(g.size(), [&](Vertex i, Vertex j, Vertex k) {
    if (bo[i] == bo[j] || bo[i] == bo[k] || bo[j] == bo[k]) return;
    const auto t = classify(g, i, j, k);
    if (const auto* t2 = std::get_if<Type2>(&t)) {
      const auto [b, c] = bases(t2->apex, i, j, k);
      f(bo[t2->apex], bo[b], bo[c]);
    }
  });
}

}  // namespace detail

/// Case 1. Only splits that isolate one block from the light clique around
/// the claw leaves can be valid; the first one no crossing Type-2 triplet
/// rules out is returned.
inline Outcome<Bipartition> case1_bipartition(const SimilarityGraph& g,
                                              const Partition& p,
                                              const Claw& claw) {
  const int m = p.size();
  std::vector<Vertex> rep(static_cast<std::size_t>(m));
  for (int b = 0; b < m; ++b) rep[b] = p.blocks[b].front();
  rep[p.block_of[claw.apex]] = claw.apex;
  for (Vertex l : claw.leaves) rep[p.block_of[l]] = l;

  auto light = [&](int a, int b) {
    return g.greater(claw.leg_weight, g.weight(rep[a], rep[b]));
  };
  std::vector<char> in_clique(static_cast<std::size_t>(m), 0);
  std::deque<int> queue;
  for (Vertex l : claw.leaves) {
    in_clique[p.block_of[l]] = 1;
    queue.push_back(p.block_of[l]);
  }
  while (!queue.empty()) {
    const int a = queue.front();
    queue.pop_front();
    for (int b = 0; b < m; ++b)
      if (!in_clique[b] && b != a && light(a, b)) {
        in_clique[b] = 1;
        queue.push_back(b);
      }
  }

  std::vector<char> ruled_out(static_cast<std::size_t>(m), 0);
  detail::for_each_crossing_type2(
      g, p, [&](int apex, int, int) { ruled_out[apex] = 1; });

  for (int b = 0; b < m; ++b) {
    if (!in_clique[b] || ruled_out[b]) continue;
    std::vector<int> side(static_cast<std::size_t>(m), 1);
    side[b] = 0;
    return detail::split_blocks(p, side);
  }
  return Failure{Failure::Kind::no_candidate,
                 {},
                 "every split allowed by the claw breaks a Type-2 triplet"};
}

/// Blocks 2-coloured so that every edge joins different colours. Components
/// are seeded in ascending block order with colour 0. On an odd cycle the
/// cycle's blocks are returned as the failure witness.
inline Outcome<std::vector<int>> two_color_blocks(
    int m, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(m));
  for (const auto& [a, b] : edges) {
    if (a == b) return Failure{Failure::Kind::odd_cycle, {a}, "self-constraint"};
    adj.at(a).push_back(b);
    adj.at(b).push_back(a);
  }
  for (auto& nb : adj) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
  std::vector<int> color(static_cast<std::size_t>(m), -1);
  std::vector<int> parent(static_cast<std::size_t>(m), -1);
  for (int s = 0; s < m; ++s) {
    if (color[s] >= 0) continue;
    color[s] = 0;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v : adj[u]) {
        if (color[v] < 0) {
          color[v] = 1 - color[u];
          parent[v] = u;
          queue.push_back(v);
        } else if (color[v] == color[u]) {
          // Walk both tree paths up to their meeting point.
          std::vector<int> pu{u}, pv{v};
          while (parent[pu.back()] >= 0) pu.push_back(parent[pu.back()]);
          while (parent[pv.back()] >= 0) pv.push_back(parent[pv.back()]);
          while (pu.size() > 1 && pv.size() > 1 &&
                 pu[pu.size() - 2] == pv[pv.size() - 2]) {
            pu.pop_back();
            pv.pop_back();
          }
          std::vector<int> cycle(pu.begin(), pu.end());
          for (auto it = pv.rbegin() + 1; it != pv.rend(); ++it)
            cycle.push_back(*it);
          return Failure{Failure::Kind::odd_cycle, cycle,
                         "odd cycle of block constraints"};
        }
      }
    }
  }
  return color;
}

/// Case 2, no claw: a crossing Type-2 triplet forces its two base blocks
/// onto different sides, and any 2-colouring of those constraints works.
inline Outcome<Bipartition> case2_bipartition(const SimilarityGraph& g,
                                              const Partition& p) {
  const int m = p.size();
  std::vector<std::pair<int, int>> edges;
  detail::for_each_crossing_type2(g, p, [&](int, int b, int c) {
    edges.emplace_back(std::min(b, c), std::max(b, c));
  });
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  auto colored = two_color_blocks(m, edges);
  if (auto* f = std::get_if<Failure>(&colored)) {
    // Report vertices (block minima) rather than block ids.
    for (auto& b : f->witness) b = p.blocks[b].front();
    return *f;
  }
  auto side = std::get<std::vector<int>>(std::move(colored));
  if (std::all_of(side.begin(), side.end(), [](int c) { return c == 0; }))
    side[0] = 1;
  if (side[0] != 0)
    for (int& c : side) c = 1 - c;
  return detail::split_blocks(p, side);
}

/// Valid bipartition of the working graph, or the reason none exists.
inline Outcome<Bipartition> valid_bisect(const SimilarityGraph& g,
                                         const DetectOptions& opt = {}) {
  const int n = g.size();
  if (n < 2) throw Error(Errc::invalid_param, "bisection needs >= 2 vertices");
  if (n == 2) return Bipartition{{0}, {1}};
  auto part = minimal_valid_partition(g);
  if (auto* f = std::get_if<Failure>(&part)) return *f;
  const auto& p = std::get<Partition>(part);
  Outcome<Bipartition> out = [&] {
    if (auto claw = detect_claw(g, p)) return case1_bipartition(g, p, *claw);
    return case2_bipartition(g, p);
  }();
  if (opt.verify)
    if (const auto* bp = std::get_if<Bipartition>(&out);
        bp && !is_valid_bipartition(g, *bp))
      throw std::logic_error("valid_bisect produced an invalid bipartition");
  return out;
}

namespace detail {

// Appends the matching construction over `verts` (global ids) to b.
inline NodeId zero_base_into(const SimilarityGraph& local,
                             const std::vector<Vertex>& verts,
                             TreeBuilder& b) {
  const int n = local.size();
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  std::vector<NodeId> items;
  for (int i = 0; i < n; ++i) {
    if (used[i]) continue;
    for (int j = i + 1; j < n; ++j)
      if (!used[j] && local.weight(i, j) > 0) {
        used[i] = used[j] = 1;
        items.push_back(b.join(b.leaf(verts[i]), b.leaf(verts[j])));
        break;
      }
  }
  for (int i = 0; i < n; ++i)
    if (!used[i]) items.push_back(b.leaf(verts[i]));
  NodeId acc = items.front();
  for (std::size_t x = 1; x < items.size(); ++x) acc = b.join(acc, items[x]);
  return acc;
}

inline void require_zero_base(const SimilarityGraph& g) {
  for (int i = 0; i < g.size(); ++i) {
    int deg = 0;
    for (int j = 0; j < g.size(); ++j) deg += g.weight(i, j) > 0;
    if (deg > 1)
      throw Error(Errc::not_zero_base,
                  "vertex " + std::to_string(i) +
                      " has more than one positive-weight neighbour");
  }
}

struct Bisector {
  const SimilarityGraph& g;
  DetectOptions opt;
  TreeBuilder builder;
  std::optional<NotPerfect> failed;

  // Returns the subtree root, or -1 after recording a failure.
  NodeId run(const std::vector<Vertex>& verts) {
    if (verts.size() == 1) return builder.leaf(verts[0]);
    const SimilarityGraph local = g.induced(verts);
    if (base_cost(local) == 0) return zero_base_into(local, verts, builder);
    auto split = valid_bisect(local, opt);
    if (auto* f = std::get_if<Failure>(&split)) {
      for (auto& v : f->witness) v = verts[v];
      failed = NotPerfect{verts, *f};
      return -1;
    }
    const auto& bp = std::get<Bipartition>(split);
    std::vector<Vertex> a, bside;
    for (Vertex v : bp.a) a.push_back(verts[v]);
    for (Vertex v : bp.b) bside.push_back(verts[v]);
    const NodeId l = run(a);
    if (l < 0) return -1;
    const NodeId r = run(bside);
    if (r < 0) return -1;
    return builder.join(l, r);
  }
};

}  // namespace detail

/// Binary tree with zero total cost for a graph whose edges are a matching:
/// matched pairs become cherries, strung with the isolated vertices along a
/// left-leaning spine.
inline HcTree zero_base_cost_tree(const SimilarityGraph& g) {
  if (g.size() == 0) throw Error(Errc::invalid_param, "empty graph");
  detail::require_zero_base(g);
  std::vector<Vertex> verts(static_cast<std::size_t>(g.size()));
  std::iota(verts.begin(), verts.end(), 0);
  TreeBuilder b;
  return b.build(detail::zero_base_into(g, verts, b));
}

/// Optimal tree when the graph has perfect structure, otherwise the first
/// working vertex set that admits no valid bipartition.
inline BisectionResult build_bisection(const SimilarityGraph& g,
                                       const DetectOptions& opt = {}) {
  if (g.size() == 0) throw Error(Errc::invalid_param, "empty graph");
  detail::Bisector bis{g, opt, {}, std::nullopt};
  std::vector<Vertex> all(static_cast<std::size_t>(g.size()));
  std::iota(all.begin(), all.end(), 0);
  const NodeId root = bis.run(all);
  if (root < 0) return *bis.failed;
  // A failed branch may leave orphan nodes behind; only reached on success.
  return bis.builder.build(root);
}

inline bool is_perfect(const SimilarityGraph& g) {
  return std::holds_alternative<HcTree>(build_bisection(g));
}

}  // namespace hcs
