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
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "hcstruct/error.hpp"

namespace hcs {

using Vertex = int;

/// One weighted pair, used to build sparse graphs by hand.
struct WeightedPair {
  Vertex u;
  Vertex v;
  double weight;
};

/// Dense symmetric similarity matrix over vertices 0..n-1.
///
/// The graph is immutable once constructed. Weight comparisons that drive
/// triplet classification go through equal()/greater(), which honour an
/// absolute tolerance (0 by default, i.e. exact comparison).
class SimilarityGraph {
 public:
  SimilarityGraph() = default;

  /// Builds from a row-major n*n matrix. Throws InvalidWeight on negative or
  /// non-finite entries, asymmetry or a nonzero diagonal.
  SimilarityGraph(int n, std::vector<double> weights,
                  std::vector<std::string> labels = {}, double tolerance = 0.0)
      : n_(n), w_(std::move(weights)), labels_(std::move(labels)),
        tolerance_(tolerance) {
    if (n < 0) throw Error(Errc::invalid_param, "negative vertex count");
    if (w_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
      throw Error(Errc::invalid_param, "weight matrix is not n*n");
    if (!(tolerance >= 0.0) || !std::isfinite(tolerance))
      throw Error(Errc::invalid_param, "tolerance must be finite and >= 0");
    for (int i = 0; i < n_; ++i) {
      if (at(i, i) != 0.0)
        throw Error(Errc::invalid_weight,
                    "diagonal entry " + std::to_string(i) + " is nonzero");
      for (int j = i + 1; j < n_; ++j) {
        const double a = at(i, j);
        if (!std::isfinite(a) || a < 0.0)
          throw Error(Errc::invalid_weight, "weight (" + std::to_string(i) +
                                                "," + std::to_string(j) +
                                                ") is negative or not finite");
        if (a != at(j, i))
          throw Error(Errc::invalid_weight, "matrix is not symmetric at (" +
                                                std::to_string(i) + "," +
                                                std::to_string(j) + ")");
      }
    }
    if (labels_.empty()) {
      labels_.reserve(static_cast<std::size_t>(n_));
      for (int i = 0; i < n_; ++i) labels_.push_back(std::to_string(i));
    }
    if (labels_.size() != static_cast<std::size_t>(n_))
      throw Error(Errc::invalid_param, "label count does not match n");
  }

  /// Graph with unlisted pairs at weight 0.
  static SimilarityGraph from_pairs(int n, std::span<const WeightedPair> pairs,
                                   std::vector<std::string> labels = {},
                                   double tolerance = 0.0) {
    std::vector<double> w(static_cast<std::size_t>(n) * n, 0.0);
    for (const auto& p : pairs) {
      if (p.u < 0 || p.v < 0 || p.u >= n || p.v >= n)
        throw Error(Errc::invalid_vertex, "pair endpoint out of range");
      if (p.u == p.v) throw Error(Errc::self_loop, "self-loop on vertex " +
                                                       std::to_string(p.u));
      w[static_cast<std::size_t>(p.u) * n + p.v] = p.weight;
      w[static_cast<std::size_t>(p.v) * n + p.u] = p.weight;
    }
    return SimilarityGraph(n, std::move(w), std::move(labels), tolerance);
  }

  static SimilarityGraph from_pairs(int n,
                                   std::initializer_list<WeightedPair> pairs) {
    return from_pairs(n, std::span<const WeightedPair>(pairs.begin(),
                                                       pairs.size()));
  }

  int size() const noexcept { return n_; }

  double weight(Vertex i, Vertex j) const noexcept { return at(i, j); }

  std::span<const double> row(Vertex i) const noexcept {
    return {w_.data() + static_cast<std::size_t>(i) * n_,
            static_cast<std::size_t>(n_)};
  }

  const std::vector<double>& matrix() const noexcept { return w_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(Vertex i) const { return labels_.at(i); }
  double tolerance() const noexcept { return tolerance_; }

  bool equal(double a, double b) const noexcept {
    return a == b || std::abs(a - b) <= tolerance_;
  }
  bool greater(double a, double b) const noexcept {
    return a > b && !equal(a, b);
  }

  SimilarityGraph with_tolerance(double tolerance) const {
    return SimilarityGraph(n_, w_, labels_, tolerance);
  }

  /// Subgraph on the listed vertices, in the listed order; labels carried.
  SimilarityGraph induced(std::span<const Vertex> vertices) const {
    const int m = static_cast<int>(vertices.size());
    std::vector<double> w(static_cast<std::size_t>(m) * m, 0.0);
    std::vector<std::string> labels;
    labels.reserve(vertices.size());
    for (int a = 0; a < m; ++a) {
      labels.push_back(labels_.at(vertices[a]));
      for (int b = 0; b < m; ++b)
        if (a != b)
          w[static_cast<std::size_t>(a) * m + b] =
              at(vertices[a], vertices[b]);
    }
    return SimilarityGraph(m, std::move(w), std::move(labels), tolerance_);
  }

  /// Sum of w_ij over unordered pairs.
  double total_weight() const noexcept {
    double s = 0.0;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) s += at(i, j);
    return s;
  }

  /// Number of unordered pairs with positive weight.
  std::size_t edge_count() const noexcept {
    std::size_t m = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) m += at(i, j) > 0.0;
    return m;
  }

  /// True when every weight is an integer below 2^52, so costs are exact.
  bool is_integral() const noexcept {
    for (double x : w_)
      if (x != std::floor(x) || x > 4503599627370496.0) return false;
    return true;
  }

  /// True when every positive weight is exactly 1.
  bool is_unweighted() const noexcept {
    return std::all_of(w_.begin(), w_.end(),
                       [](double x) { return x == 0.0 || x == 1.0; });
  }

  std::optional<Vertex> index_of(std::string_view label) const {
    for (int i = 0; i < n_; ++i)
      if (labels_[i] == label) return i;
    return std::nullopt;
  }

 private:
  double at(int i, int j) const noexcept {
    return w_[static_cast<std::size_t>(i) * n_ + j];
  }

  int n_ = 0;
  std::vector<double> w_;
  std::vector<std::string> labels_;
  double tolerance_ = 0.0;
};

// ---------------------------------------------------------------------------
// Triplet classification

/// Unique strict maximum on the pair (first, second), first < second.
struct Type1 {
  Vertex first;
  Vertex second;
  friend bool operator==(const Type1&, const Type1&) = default;
};
/// Two tied maxima, both incident to apex.
struct Type2 {
  Vertex apex;
  friend bool operator==(const Type2&, const Type2&) = default;
};
/// All three weights equal.
struct Type3 {
  friend bool operator==(const Type3&, const Type3&) = default;
};

using TripletType = std::variant<Type1, Type2, Type3>;

namespace detail {

inline void check_triplet(const SimilarityGraph& g, Vertex i, Vertex j,
                          Vertex k) {
  const int n = g.size();
  if (i < 0 || j < 0 || k < 0 || i >= n || j >= n || k >= n)
    throw Error(Errc::invalid_triplet, "triplet index out of range");
  if (i == j || i == k || j == k)
    throw Error(Errc::invalid_triplet, "triplet indices must be distinct");
}

inline std::pair<Vertex, Vertex> ordered(Vertex a, Vertex b) {
  return a < b ? std::pair{a, b} : std::pair{b, a};
}

// Classification without range checks; shared by every triplet scan.
inline TripletType classify(const SimilarityGraph& g, Vertex i, Vertex j,
                            Vertex k) {
  const double wij = g.weight(i, j);
  const double wik = g.weight(i, k);
  const double wjk = g.weight(j, k);
  const double top = std::max({wij, wik, wjk});
  const bool mij = g.equal(wij, top);
  const bool mik = g.equal(wik, top);
  const bool mjk = g.equal(wjk, top);
  const int count = int{mij} + int{mik} + int{mjk};
  if (count == 3) return Type3{};
  if (count == 2) {
    if (!mjk) return Type2{i};
    if (!mik) return Type2{j};
    return Type2{k};
  }
  if (mij) {
    auto [a, b] = ordered(i, j);
    return Type1{a, b};
  }
  if (mik) {
    auto [a, b] = ordered(i, k);
    return Type1{a, b};
  }
  auto [a, b] = ordered(j, k);
  return Type1{a, b};
}

inline double min_triplet_cost_unchecked(const SimilarityGraph& g, Vertex i,
                                         Vertex j, Vertex k) {
  const double a = g.weight(i, j);
  const double b = g.weight(i, k);
  const double c = g.weight(j, k);
  return std::min({a + b, a + c, b + c});
}

}  // namespace detail

inline TripletType triplet_type(const SimilarityGraph& g, Vertex i, Vertex j,
                                Vertex k) {
  detail::check_triplet(g, i, j, k);
  return detail::classify(g, i, j, k);
}

/// Sum of the two smallest pairwise weights of the triplet.
inline double min_triplet_cost(const SimilarityGraph& g, Vertex i, Vertex j,
                               Vertex k) {
  detail::check_triplet(g, i, j, k);
  return detail::min_triplet_cost_unchecked(g, i, j, k);
}

/// Sum of min_triplet_cost over all unordered triplets, in i<j<k order.
inline double base_cost(const SimilarityGraph& g) {
  const int n = g.size();
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto ri = g.row(i);
    for (int j = i + 1; j < n; ++j) {
      const double a = ri[j];
      const auto rj = g.row(j);
      double partial = 0.0;
      for (int k = j + 1; k < n; ++k) {
        const double b = ri[k];
        const double c = rj[k];
        partial += std::min({a + b, a + c, b + c});
      }
      total += partial;
    }
  }
  return total;
}

// ---------------------------------------------------------------------------
// Text formats

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() &&
           (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r'))
      ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t' &&
           line[end] != '\r')
      ++end;
    out.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

// Non-blank, non-comment lines with their 1-based line numbers.
inline std::vector<std::pair<int, std::vector<std::string_view>>> records(
    std::string_view text) {
  std::vector<std::pair<int, std::vector<std::string_view>>> out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    auto tokens = split_ws(text.substr(pos, end - pos));
    if (!tokens.empty() && tokens.front().front() != '#')
      out.emplace_back(line_no, std::move(tokens));
    pos = end + 1;
  }
  return out;
}

inline double parse_weight(std::string_view token, int line_no) {
  std::string s(token);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error(Errc::parse_error, "line " + std::to_string(line_no) +
                                       ": cannot parse weight '" + s + "'");
  }
  if (used != s.size())
    throw Error(Errc::parse_error, "line " + std::to_string(line_no) +
                                       ": cannot parse weight '" + s + "'");
  if (!std::isfinite(value) || value < 0.0)
    throw Error(Errc::invalid_weight, "line " + std::to_string(line_no) +
                                          ": weight must be finite and >= 0");
  return value;
}

}  // namespace detail

/// Parses "u v w" records. Vertex indices follow first appearance; '#' lines
/// and blank lines are skipped.
inline SimilarityGraph load_edge_list(std::string_view text,
                                      double tolerance = 0.0) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, Vertex> index;
  struct Rec {
    Vertex u, v;
    double w;
  };
  std::vector<Rec> recs;
  auto intern = [&](std::string_view name) {
    auto [it, inserted] =
        index.emplace(std::string(name), static_cast<Vertex>(labels.size()));
    if (inserted) labels.emplace_back(name);
    return it->second;
  };
  for (const auto& [line_no, tok] : detail::records(text)) {
    if (tok.size() != 3)
      throw Error(Errc::parse_error, "line " + std::to_string(line_no) +
                                         ": expected 'u v w'");
    if (tok[0] == tok[1])
      throw Error(Errc::self_loop, "line " + std::to_string(line_no) +
                                       ": self-loop on '" +
                                       std::string(tok[0]) + "'");
    const double w = detail::parse_weight(tok[2], line_no);
    const Vertex u = intern(tok[0]);
    const Vertex v = intern(tok[1]);
    recs.push_back({u, v, w});
  }
  const int n = static_cast<int>(labels.size());
  std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);
  std::vector<bool> seen(static_cast<std::size_t>(n) * n, false);
  for (const auto& r : recs) {
    const std::size_t a = static_cast<std::size_t>(r.u) * n + r.v;
    const std::size_t b = static_cast<std::size_t>(r.v) * n + r.u;
    if (seen[a])
      throw Error(Errc::duplicate_edge, "pair (" + labels[r.u] + "," +
                                            labels[r.v] + ") listed twice");
    seen[a] = seen[b] = true;
    m[a] = m[b] = r.w;
  }
  return SimilarityGraph(n, std::move(m), std::move(labels), tolerance);
}

/// Parses "n" followed by n rows of n values. Labels are "0".."n-1".
inline SimilarityGraph load_matrix(std::string_view text,
                                   double tolerance = 0.0) {
  auto recs = detail::records(text);
  if (recs.empty() || recs.front().second.size() != 1)
    throw Error(Errc::parse_error, "matrix format needs a leading 'n' line");
  int n = 0;
  try {
    std::size_t used = 0;
    std::string s(recs.front().second.front());
    n = std::stoi(s, &used);
    if (used != s.size() || n < 0) throw std::invalid_argument("n");
  } catch (const std::exception&) {
    throw Error(Errc::parse_error, "matrix size is not a nonnegative integer");
  }
  if (recs.size() != static_cast<std::size_t>(n) + 1)
    throw Error(Errc::parse_error, "expected " + std::to_string(n) +
                                       " matrix rows, got " +
                                       std::to_string(recs.size() - 1));
  std::vector<double> m;
  m.reserve(static_cast<std::size_t>(n) * n);
  for (int r = 1; r <= n; ++r) {
    const auto& [line_no, tok] = recs[r];
    if (tok.size() != static_cast<std::size_t>(n))
      throw Error(Errc::parse_error, "line " + std::to_string(line_no) +
                                         ": expected " + std::to_string(n) +
                                         " values");
    for (auto t : tok) m.push_back(detail::parse_weight(t, line_no));
  }
  return SimilarityGraph(n, std::move(m), {}, tolerance);
}

/// Dispatches on the first record: a lone token means matrix format.
inline SimilarityGraph load_graph(std::string_view text,
                                  double tolerance = 0.0) {
  auto recs = detail::records(text);
  if (!recs.empty() && recs.front().second.size() == 1)
    return load_matrix(text, tolerance);
  return load_edge_list(text, tolerance);
}

/// Inverse of load_edge_list for positive-weight pairs.
inline std::string to_edge_list(const SimilarityGraph& g) {
  std::ostringstream out;
  out.precision(17);
  for (int i = 0; i < g.size(); ++i)
    for (int j = i + 1; j < g.size(); ++j)
      if (g.weight(i, j) > 0.0)
        out << g.label(i) << ' ' << g.label(j) << ' ' << g.weight(i, j)
            << '\n';
  return out.str();
}

}  // namespace hcs
