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

#include <algorithm>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hcstruct/error.hpp"
#include "hcstruct/graph.hpp"

namespace hcs {

using NodeId = int;

struct TreeNode {
  NodeId parent = -1;
  std::vector<NodeId> children;
  Vertex leaf = -1;  // vertex for leaves, -1 for internal nodes
  int leaf_count = 0;
  int depth = 0;
  Vertex min_leaf = -1;
  // Half-open range into HcTree::leaf_order() covered by this subtree.
  int first = 0;
  int last = 0;

  bool is_leaf() const noexcept { return leaf >= 0; }
};

/// Rooted tree whose leaves carry distinct vertex indices.
///
/// Nodes are stored in preorder, so node 0 is the root and every subtree's
/// leaves form a contiguous run of leaf_order(). Instances are produced by
/// TreeBuilder and are immutable afterwards.
class HcTree {
 public:
  HcTree() = default;

  NodeId root() const noexcept { return nodes_.empty() ? -1 : 0; }
  int node_count() const noexcept { return static_cast<int>(nodes_.size()); }
  const TreeNode& node(NodeId u) const { return nodes_.at(u); }
  int leaf_count(NodeId u) const { return nodes_.at(u).leaf_count; }
  int size() const noexcept { return static_cast<int>(leaf_order_.size()); }
  bool empty() const noexcept { return nodes_.empty(); }

  /// Leaves in preorder; node(u) covers [first, last).
  std::span<const Vertex> leaf_order() const noexcept { return leaf_order_; }
  std::span<const Vertex> leaves_under(NodeId u) const {
    const auto& nd = nodes_.at(u);
    return std::span<const Vertex>(leaf_order_).subspan(
        nd.first, nd.last - nd.first);
  }

  bool has_leaf(Vertex v) const noexcept {
    return v >= 0 && v < static_cast<Vertex>(leaf_of_.size()) &&
           leaf_of_[v] >= 0;
  }

  NodeId leaf_node(Vertex v) const {
    if (!has_leaf(v))
      throw Error(Errc::invalid_vertex,
                  "vertex " + std::to_string(v) + " is not a leaf");
    return leaf_of_[v];
  }

  /// Leaf vertices in ascending order.
  std::vector<Vertex> leaves() const {
    std::vector<Vertex> out(leaf_order_.begin(), leaf_order_.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  /// True when the leaf set is exactly {0, ..., n-1}.
  bool spans(int n) const noexcept {
    if (size() != n) return false;
    for (Vertex v = 0; v < n; ++v)
      if (!has_leaf(v)) return false;
    return true;
  }

  bool is_binary() const noexcept {
    return std::all_of(nodes_.begin(), nodes_.end(), [](const TreeNode& nd) {
      return nd.is_leaf() || nd.children.size() == 2;
    });
  }

  NodeId lca_nodes(NodeId a, NodeId b) const {
    while (nodes_[a].depth > nodes_[b].depth) a = nodes_[a].parent;
    while (nodes_[b].depth > nodes_[a].depth) b = nodes_[b].parent;
    while (a != b) {
      a = nodes_[a].parent;
      b = nodes_[b].parent;
    }
    return a;
  }

  NodeId lca(Vertex i, Vertex j) const {
    return lca_nodes(leaf_node(i), leaf_node(j));
  }

 private:
  friend class TreeBuilder;

  std::vector<TreeNode> nodes_;
  std::vector<Vertex> leaf_order_;
  std::vector<NodeId> leaf_of_;  // vertex -> node, -1 if absent
};

/// Assembles an HcTree bottom-up. Node ids returned by the builder are only
/// meaningful to the same builder; build() renumbers into preorder.
class TreeBuilder {
 public:
  NodeId leaf(Vertex v) {
    if (v < 0) throw Error(Errc::invalid_vertex, "negative leaf vertex");
    nodes_.push_back(Raw{-1, {}, v});
    return static_cast<NodeId>(nodes_.size()) - 1;
  }

  NodeId join(std::vector<NodeId> children) {
    if (children.size() < 2)
      throw Error(Errc::invalid_param, "internal node needs >= 2 children");
    const auto id = static_cast<NodeId>(nodes_.size());
    for (NodeId c : children) {
      if (c < 0 || c >= id)
        throw Error(Errc::invalid_param, "unknown child node");
      if (nodes_[c].parent != -1)
        throw Error(Errc::invalid_param, "child already has a parent");
      nodes_[c].parent = id;
    }
    nodes_.push_back(Raw{-1, std::move(children), -1});
    return id;
  }

  NodeId join(NodeId a, NodeId b) { return join(std::vector<NodeId>{a, b}); }

  /// Copies t into the builder and returns the id of its root.
  NodeId graft(const HcTree& t) {
    if (t.empty()) throw Error(Errc::invalid_param, "cannot graft empty tree");
    std::vector<NodeId> id(t.node_count());
    for (NodeId u = t.node_count() - 1; u >= 0; --u) {
      const auto& nd = t.node(u);
      if (nd.is_leaf()) {
        id[u] = leaf(nd.leaf);
      } else {
        std::vector<NodeId> kids;
        kids.reserve(nd.children.size());
        for (NodeId c : nd.children) kids.push_back(id[c]);
        id[u] = join(std::move(kids));
      }
    }
    return id[0];
  }

  /// Finalizes the subtree under root. Every node created by this builder
  /// must belong to it; leaf vertices must be distinct.
  HcTree build(NodeId root) const {
    if (root < 0 || root >= static_cast<NodeId>(nodes_.size()))
      throw Error(Errc::invalid_param, "unknown root node");
    if (nodes_[root].parent != -1)
      throw Error(Errc::invalid_param, "root has a parent");
    HcTree t;
    t.nodes_.reserve(nodes_.size());
    Vertex max_leaf = -1;
    // Iterative preorder with post-processing for leaf counts.
    struct Frame {
      NodeId raw;
      NodeId parent;
      int depth;
    };
    std::vector<Frame> stack{{root, -1, 0}};
    while (!stack.empty()) {
      const Frame f = stack.back();
      stack.pop_back();
      const auto id = static_cast<NodeId>(t.nodes_.size());
      TreeNode nd;
      nd.parent = f.parent;
      nd.depth = f.depth;
      nd.leaf = nodes_[f.raw].leaf;
      t.nodes_.push_back(nd);
      if (f.parent >= 0) t.nodes_[f.parent].children.push_back(id);
      if (nd.leaf >= 0) {
        max_leaf = std::max(max_leaf, nd.leaf);
        t.leaf_order_.push_back(nd.leaf);
      }
      const auto& kids = nodes_[f.raw].children;
      for (auto it = kids.rbegin(); it != kids.rend(); ++it)
        stack.push_back({*it, id, f.depth + 1});
    }
    if (t.nodes_.size() != nodes_.size())
      throw Error(Errc::invalid_param, "builder holds nodes outside the tree");
    t.leaf_of_.assign(static_cast<std::size_t>(max_leaf + 1), -1);
    // Preorder ids: children have larger ids, so a reverse sweep is postorder.
    for (NodeId u = t.node_count() - 1; u >= 0; --u) {
      auto& nd = t.nodes_[u];
      if (nd.is_leaf()) {
        if (t.leaf_of_[nd.leaf] != -1)
          throw Error(Errc::leaf_mismatch,
                      "vertex " + std::to_string(nd.leaf) + " appears twice");
        t.leaf_of_[nd.leaf] = u;
        nd.leaf_count = 1;
        nd.min_leaf = nd.leaf;
      } else {
        nd.leaf_count = 0;
        nd.min_leaf = -1;
        for (NodeId c : nd.children) {
          const auto& cn = t.nodes_[c];
          nd.leaf_count += cn.leaf_count;
          if (nd.min_leaf < 0 || cn.min_leaf < nd.min_leaf)
            nd.min_leaf = cn.min_leaf;
        }
      }
    }
    // Leaf ranges: preorder visits leaves left to right.
    int cursor = 0;
    for (NodeId u = 0; u < t.node_count(); ++u) {
      auto& nd = t.nodes_[u];
      if (nd.is_leaf()) {
        nd.first = cursor++;
        nd.last = cursor;
      }
    }
    for (NodeId u = t.node_count() - 1; u >= 0; --u) {
      auto& nd = t.nodes_[u];
      if (!nd.is_leaf()) {
        nd.first = t.nodes_[nd.children.front()].first;
        nd.last = t.nodes_[nd.children.back()].last;
      }
    }
    return t;
  }

 private:
  struct Raw {
    NodeId parent;
    std::vector<NodeId> children;
    Vertex leaf;
  };
  std::vector<Raw> nodes_;
};

// ---------------------------------------------------------------------------
// Construction helpers

inline HcTree single_leaf(Vertex v) {
  TreeBuilder b;
  return b.build(b.leaf(v));
}

/// Left-leaning caterpillar (((v0,v1),v2),...).
inline HcTree caterpillar(std::span<const Vertex> order) {
  if (order.empty()) throw Error(Errc::invalid_param, "empty caterpillar");
  TreeBuilder b;
  NodeId acc = b.leaf(order[0]);
  for (std::size_t i = 1; i < order.size(); ++i)
    acc = b.join(acc, b.leaf(order[i]));
  return b.build(acc);
}

inline HcTree caterpillar(int n) {
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[i] = i;
  return caterpillar(order);
}

/// Root whose children are exactly the listed leaves.
inline HcTree star(std::span<const Vertex> leaves) {
  if (leaves.size() == 1) return single_leaf(leaves[0]);
  TreeBuilder b;
  std::vector<NodeId> kids;
  for (Vertex v : leaves) kids.push_back(b.leaf(v));
  return b.build(b.join(std::move(kids)));
}

inline HcTree join_trees(const HcTree& left, const HcTree& right) {
  TreeBuilder b;
  const NodeId l = b.graft(left);
  const NodeId r = b.graft(right);
  return b.build(b.join(l, r));
}

// ---------------------------------------------------------------------------
// Queries

inline NodeId lca(const HcTree& t, Vertex i, Vertex j) { return t.lca(i, j); }

/// {first, second | outsider}: the pair merges strictly below the triplet LCA.
struct MergedFirst {
  Vertex first;
  Vertex second;
  Vertex outsider;
  friend bool operator==(const MergedFirst&, const MergedFirst&) = default;
};
/// {i | j | k}: all three pairs share one LCA.
struct Simultaneous {
  friend bool operator==(const Simultaneous&, const Simultaneous&) = default;
};

using TripletRelation = std::variant<MergedFirst, Simultaneous>;

namespace detail {

inline MergedFirst merged(Vertex a, Vertex b, Vertex out) {
  return a < b ? MergedFirst{a, b, out} : MergedFirst{b, a, out};
}

// Relation from the three pairwise LCA depths (deeper = merged earlier).
inline TripletRelation relation_from_lcas(Vertex i, Vertex j, Vertex k,
                                          NodeId lij, NodeId lik, NodeId ljk) {
  if (lij == lik && lik == ljk) return Simultaneous{};
  if (lik == ljk) return merged(i, j, k);
  if (lij == ljk) return merged(i, k, j);
  return merged(j, k, i);
}

}  // namespace detail

inline TripletRelation merge_relation(const HcTree& t, Vertex i, Vertex j,
                                      Vertex k) {
  if (i == j || i == k || j == k)
    throw Error(Errc::invalid_vertex, "triplet vertices must be distinct");
  return detail::relation_from_lcas(i, j, k, t.lca(i, j), t.lca(i, k),
                                    t.lca(j, k));
}

// ---------------------------------------------------------------------------
// Transformations

namespace detail {

inline std::vector<NodeId> canonical_children(const HcTree& t, NodeId u) {
  std::vector<NodeId> kids = t.node(u).children;
  std::sort(kids.begin(), kids.end(), [&](NodeId a, NodeId b) {
    return t.node(a).min_leaf < t.node(b).min_leaf;
  });
  return kids;
}

inline NodeId copy_into(const HcTree& t, NodeId u, TreeBuilder& b,
                        bool binary) {
  const auto& nd = t.node(u);
  if (nd.is_leaf()) return b.leaf(nd.leaf);
  const auto kids = canonical_children(t, u);
  std::vector<NodeId> ids;
  ids.reserve(kids.size());
  for (NodeId c : kids) ids.push_back(copy_into(t, c, b, binary));
  if (!binary || ids.size() == 2) return b.join(std::move(ids));
  NodeId acc = b.join(ids[0], ids[1]);
  for (std::size_t c = 2; c < ids.size(); ++c) acc = b.join(acc, ids[c]);
  return acc;
}

}  // namespace detail

/// Same tree with children sorted by smallest contained leaf.
inline HcTree canonical(const HcTree& t) {
  if (t.empty()) return t;
  TreeBuilder b;
  return b.build(detail::copy_into(t, t.root(), b, false));
}

/// Resolves every multifurcation left-leaning over the canonical child order:
/// children (c1, ..., ck) become (((c1, c2), c3), ..., ck).
inline HcTree binarize(const HcTree& t) {
  if (t.empty()) return t;
  TreeBuilder b;
  return b.build(detail::copy_into(t, t.root(), b, true));
}

}  // namespace hcs
