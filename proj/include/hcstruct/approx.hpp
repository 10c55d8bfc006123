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

// Trees for graphs within a multiplicative factor delta of a perfect one.
// Only triplets whose heaviest pair is heavier by more than delta^2 are
// trusted; the resulting rooted-triplet constraints are fed to the classic
// BUILD recursion.

#include <algorithm>
#include <cmath>
#include <optional>
#include <variant>
#include <vector>

#include "hcstruct/error.hpp"
#include "hcstruct/graph.hpp"
#include "hcstruct/rational.hpp"
#include "hcstruct/tree.hpp"

namespace hcs {

/// {first, second | outsider}, first < second.
struct RootedTripletConstraint {
  Vertex first;
  Vertex second;
  Vertex outsider;
  friend bool operator==(const RootedTripletConstraint&,
                         const RootedTripletConstraint&) = default;
  friend auto operator<=>(const RootedTripletConstraint&,
                          const RootedTripletConstraint&) = default;
};

/// BUILD found a vertex set that no constraint-respecting split exists for.
struct BuildFailure {
  std::vector<Vertex> vertices;
};

template <class T>
using BuildOutcome = std::variant<T, BuildFailure>;

namespace detail {

// Exact rational for a double with a power-of-two denominator <= 2^20.
inline std::optional<Rational> dyadic(double x) {
  if (!std::isfinite(x) || x < 0 || x > 1e12) return std::nullopt;
  std::int64_t den = 1;
  for (int k = 0; k <= 20; ++k, den *= 2) {
    const double scaled = x * static_cast<double>(den);
    if (scaled == std::floor(scaled))
      return Rational(static_cast<std::int64_t>(scaled), den);
  }
  return std::nullopt;
}

template <class Greater>
std::vector<RootedTripletConstraint> collect_constraints(
    const SimilarityGraph& g, Greater&& exceeds) {
  std::vector<RootedTripletConstraint> out;
  const int n = g.size();
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j)
      for (Vertex k = j + 1; k < n; ++k) {
        const double wij = g.weight(i, j), wik = g.weight(i, k),
                     wjk = g.weight(j, k);
        // Heaviest pair and the runner-up weight.
        RootedTripletConstraint c{i, j, k};
        double w1 = wij, w2 = std::max(wik, wjk);
        if (wik > w1 && wik >= wjk) {
          c = {i, k, j};
          w1 = wik;
          w2 = std::max(wij, wjk);
        } else if (wjk > w1 && wjk > wik) {
          c = {j, k, i};
          w1 = wjk;
          w2 = std::max(wij, wik);
        }
        if (exceeds(w1, w2)) out.push_back(c);
      }
  return out;
}

}  // namespace detail

/// Constraints {i,j|k} for every triplet with w1 > delta^2 * w2, where w1 is
/// the heaviest pair weight and w2 the next. Exact on integer weights.
inline std::vector<RootedTripletConstraint> build_constraints(
    const SimilarityGraph& g, const Rational& delta) {
  if (delta.is_infinite() || delta < Rational(1))
    throw Error(Errc::invalid_delta, "delta must be >= 1, got " + delta.str());
  const Rational d2 = delta * delta;
  if (g.is_integral()) {
    const __int128 num = d2.num(), den = d2.den();
    return detail::collect_constraints(g, [&](double w1, double w2) {
      return static_cast<__int128>(w1) * den > num * static_cast<__int128>(w2);
    });
  }
  const double f = d2.to_double();
  return detail::collect_constraints(
      g, [&](double w1, double w2) { return w1 > f * w2; });
}

inline std::vector<RootedTripletConstraint> build_constraints(
    const SimilarityGraph& g, double delta) {
  if (!(delta >= 1.0) || !std::isfinite(delta))
    throw Error(Errc::invalid_delta,
                "delta must be a finite value >= 1, got " +
                    std::to_string(delta));
  if (auto r = detail::dyadic(delta)) return build_constraints(g, *r);
  const double f = delta * delta;
  return detail::collect_constraints(
      g, [&](double w1, double w2) { return w1 > f * w2; });
}

namespace detail {

struct RtcBuilder {
  TreeBuilder b;
  std::optional<BuildFailure> failed;

  NodeId run(const std::vector<Vertex>& verts,
             const std::vector<RootedTripletConstraint>& cs,
             std::vector<int>& slot) {
    if (verts.size() == 1) return b.leaf(verts[0]);
    const int m = static_cast<int>(verts.size());
    for (int x = 0; x < m; ++x) slot[verts[x]] = x;
    std::vector<int> parent(static_cast<std::size_t>(m));
    for (int x = 0; x < m; ++x) parent[x] = x;
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& c : cs) {
      int a = find(slot[c.first]), d = find(slot[c.second]);
      if (a != d) parent[std::max(a, d)] = std::min(a, d);
    }
    // Components in order of their smallest vertex (verts is sorted).
    std::vector<int> comp(static_cast<std::size_t>(m), -1);
    std::vector<std::vector<Vertex>> parts;
    for (int x = 0; x < m; ++x) {
      const int r = find(x);
      if (comp[r] < 0) {
        comp[r] = static_cast<int>(parts.size());
        parts.emplace_back();
      }
      parts[comp[r]].push_back(verts[x]);
    }
    if (parts.size() == 1) {
      failed = BuildFailure{verts};
      return -1;
    }
    std::vector<std::vector<RootedTripletConstraint>> sub(parts.size());
    for (const auto& c : cs) {
      const int p = comp[find(slot[c.first])];
      if (comp[find(slot[c.outsider])] == p) sub[p].push_back(c);
    }
    std::vector<NodeId> kids;
    for (std::size_t p = 0; p < parts.size(); ++p) {
      const NodeId id = run(parts[p], sub[p], slot);
      if (id < 0) return -1;
      kids.push_back(id);
    }
    return b.join(std::move(kids));
  }
};

}  // namespace detail

/// Tree on 0..n-1 in which every constraint's pair merges below its
/// outsider. Each level puts the components of the pair graph under one
/// node, so the output may be multifurcating.
inline BuildOutcome<HcTree> rtc_build(
    const std::vector<RootedTripletConstraint>& constraints, int n) {
  if (n < 1) throw Error(Errc::invalid_param, "rtc_build needs n >= 1");
  for (const auto& c : constraints) {
    const bool in_range = c.first >= 0 && c.second >= 0 && c.outsider >= 0 &&
                          c.first < n && c.second < n && c.outsider < n;
    if (!in_range || c.first == c.second || c.first == c.outsider ||
        c.second == c.outsider)
      throw Error(Errc::invalid_triplet, "malformed triplet constraint");
  }
  std::vector<Vertex> all(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) all[v] = v;
  std::vector<int> slot(static_cast<std::size_t>(n), -1);
  detail::RtcBuilder rb;
  const NodeId root = rb.run(all, constraints, slot);
  if (root < 0) return *rb.failed;
  return rb.b.build(root);
}

inline bool satisfies(const HcTree& t, const RootedTripletConstraint& c) {
  const auto rel = merge_relation(t, c.first, c.second, c.outsider);
  const auto* m = std::get_if<MergedFirst>(&rel);
  return m && m->first == c.first && m->second == c.second;
}

/// Binary tree satisfying every delta-trusted triplet, or the vertex set
/// where the constraints contradict each other.
template <class Delta>
BuildOutcome<HcTree> approx_tree(const SimilarityGraph& g, const Delta& delta) {
  if (g.size() == 0) throw Error(Errc::invalid_param, "empty graph");
  auto built = rtc_build(build_constraints(g, delta), g.size());
  if (auto* t = std::get_if<HcTree>(&built)) return binarize(*t);
  return built;
}

}  // namespace hcs
