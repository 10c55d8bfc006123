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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hcstruct/error.hpp"
#include "hcstruct/graph.hpp"
#include "hcstruct/rational.hpp"
#include "hcstruct/tree.hpp"

namespace hcs {

struct CostReport {
  double dasgupta = 0;
  double total = 0;
  double base = 0;
  double ratio = 1;                 // +inf when base == 0 < total
  std::optional<Rational> exact;    // set when total and base are integers
  bool consistent = false;
};

namespace detail {

inline void require_spanning(const SimilarityGraph& g, const HcTree& t) {
  if (t.empty() || !t.spans(g.size()))
    throw Error(Errc::leaf_mismatch,
                "tree leaves do not match the " + std::to_string(g.size()) +
                    " graph vertices");
}

// Weight crossing between distinct children of u, i.e. the pairs whose LCA
// is u. Pairs are visited child-pair by child-pair in stored order.
inline double cross_weight(const SimilarityGraph& g, const HcTree& t,
                           NodeId u) {
  const auto& kids = t.node(u).children;
  double sum = 0;
  for (std::size_t a = 0; a < kids.size(); ++a) {
    const auto la = t.leaves_under(kids[a]);
    for (std::size_t b = a + 1; b < kids.size(); ++b) {
      const auto lb = t.leaves_under(kids[b]);
      for (Vertex x : la) {
        const auto row = g.row(x);
        for (Vertex y : lb) sum += row[y];
      }
    }
  }
  return sum;
}

// Sum over internal nodes of (leaf_count + offset) * cross_weight.
inline double lca_weighted_sum(const SimilarityGraph& g, const HcTree& t,
                               int offset) {
  require_spanning(g, t);
  double total = 0;
  for (NodeId u = 0; u < t.node_count(); ++u) {
    if (t.node(u).is_leaf()) continue;
    const double c = cross_weight(g, t, u);
    if (c != 0) total += static_cast<double>(t.leaf_count(u) + offset) * c;
  }
  return total;
}

// Pairwise LCA table over vertices, row-major n*n.
inline std::vector<NodeId> lca_table(const HcTree& t, int n) {
  std::vector<NodeId> out(static_cast<std::size_t>(n) * n, -1);
  for (NodeId u = 0; u < t.node_count(); ++u) {
    const auto& kids = t.node(u).children;
    for (std::size_t a = 0; a < kids.size(); ++a)
      for (std::size_t b = a + 1; b < kids.size(); ++b)
        for (Vertex x : t.leaves_under(kids[a]))
          for (Vertex y : t.leaves_under(kids[b])) {
            out[static_cast<std::size_t>(x) * n + y] = u;
            out[static_cast<std::size_t>(y) * n + x] = u;
          }
  }
  return out;
}

inline double relation_cost(const SimilarityGraph& g, Vertex i, Vertex j,
                            Vertex k, const TripletRelation& rel) {
  const double wij = g.weight(i, j), wik = g.weight(i, k),
               wjk = g.weight(j, k);
  if (std::holds_alternative<Simultaneous>(rel)) return wij + wik + wjk;
  const auto& m = std::get<MergedFirst>(rel);
  // Cost is the two weights that touch the outsider.
  if (m.outsider == k) return wik + wjk;
  if (m.outsider == j) return wij + wjk;
  return wij + wik;
}

// First triplet (lexicographic) whose induced cost exceeds its minimum.
inline std::optional<std::array<Vertex, 3>> first_violation(
    const SimilarityGraph& g, const HcTree& t) {
  const int n = g.size();
  const auto lca = lca_table(t, n);
  auto at = [&](Vertex a, Vertex b) {
    return lca[static_cast<std::size_t>(a) * n + b];
  };
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j)
      for (Vertex k = j + 1; k < n; ++k) {
        const auto rel =
            relation_from_lcas(i, j, k, at(i, j), at(i, k), at(j, k));
        const double cost = relation_cost(g, i, j, k, rel);
        const double best = min_triplet_cost_unchecked(g, i, j, k);
        if (!g.equal(cost, best)) return std::array<Vertex, 3>{i, j, k};
      }
  return std::nullopt;
}

}  // namespace detail

/// Sum over pairs of w_ij times the leaf count of their LCA.
inline double dasgupta_cost(const SimilarityGraph& g, const HcTree& t) {
  return detail::lca_weighted_sum(g, t, 0);
}

/// Sum over pairs of w_ij * (|leaves(LCA)| - 2); equals the triplet sum.
inline double total_cost(const SimilarityGraph& g, const HcTree& t) {
  return detail::lca_weighted_sum(g, t, -2);
}

inline double triplet_cost(const SimilarityGraph& g, const HcTree& t, Vertex i,
                           Vertex j, Vertex k) {
  detail::check_triplet(g, i, j, k);
  detail::require_spanning(g, t);
  return detail::relation_cost(g, i, j, k, merge_relation(t, i, j, k));
}

inline double ratio_cost(const SimilarityGraph& g, const HcTree& t) {
  return ratio_value(total_cost(g, t), base_cost(g));
}

/// Exact ratio when both costs are integers, nullopt otherwise.
inline std::optional<Rational> exact_ratio_cost(const SimilarityGraph& g,
                                                const HcTree& t) {
  return exact_ratio(total_cost(g, t), base_cost(g));
}

/// First triplet whose induced cost is above its minimum, if any.
/// Requires a binary tree.
inline std::optional<std::array<Vertex, 3>> inconsistent_triplet(
    const SimilarityGraph& g, const HcTree& t) {
  detail::require_spanning(g, t);
  if (!t.is_binary())
    throw Error(Errc::invalid_param, "consistency check needs a binary tree");
  return detail::first_violation(g, t);
}

inline bool is_consistent(const SimilarityGraph& g, const HcTree& t) {
  return !inconsistent_triplet(g, t).has_value();
}

inline CostReport evaluate(const SimilarityGraph& g, const HcTree& t) {
  CostReport r;
  r.dasgupta = dasgupta_cost(g, t);
  r.total = total_cost(g, t);
  r.base = base_cost(g);
  r.ratio = ratio_value(r.total, r.base);
  r.exact = exact_ratio(r.total, r.base);
  r.consistent = !detail::first_violation(g, t).has_value();
  return r;
}

}  // namespace hcs
