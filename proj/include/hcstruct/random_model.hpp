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

// Random unit-weight graphs from an edge-probability matrix, with the
// closed-form predictions for Erdos-Renyi and two-block planted models.
//
// Sampling is bit-reproducible: one std::mt19937_64 per graph, seeded with
// the trial seed, and one 53-bit uniform draw per pair in i<j order.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "hcstruct/error.hpp"
#include "hcstruct/graph.hpp"
#include "hcstruct/rational.hpp"

namespace hcs {

/// Symmetric edge probabilities with a zero diagonal.
class ProbabilityMatrix {
 public:
  ProbabilityMatrix(int n, std::vector<double> p) : n_(n), p_(std::move(p)) {
    if (n < 0 || p_.size() != static_cast<std::size_t>(n) * n)
      throw Error(Errc::invalid_param, "probability matrix is not n*n");
    for (int i = 0; i < n; ++i) {
      if (at(i, i) != 0.0)
        throw Error(Errc::invalid_param, "nonzero diagonal probability");
      for (int j = i + 1; j < n; ++j) {
        const double x = at(i, j);
        if (!(x >= 0.0 && x <= 1.0))
          throw Error(Errc::invalid_param, "probability outside [0, 1]");
        if (x != at(j, i))
          throw Error(Errc::invalid_param, "probability matrix not symmetric");
      }
    }
  }

  int size() const noexcept { return n_; }
  double operator()(int i, int j) const noexcept { return at(i, j); }

 private:
  double at(int i, int j) const noexcept {
    return p_[static_cast<std::size_t>(i) * n_ + j];
  }
  int n_;
  std::vector<double> p_;
};

struct ErModel {
  int n;
  double p;
};

/// Blocks [0, n/2) and [n/2, n); p inside a block, q across.
struct PlantedModel {
  int n;
  double p;
  double q;
};

using RandomModel = std::variant<ErModel, PlantedModel>;

namespace detail {

inline void check_probability(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0))
    throw Error(Errc::invalid_param,
                std::string(name) + " must lie in [0, 1], got " +
                    std::to_string(x));
}

inline void check_model(const RandomModel& m) {
  if (const auto* er = std::get_if<ErModel>(&m)) {
    if (er->n < 1) throw Error(Errc::invalid_param, "n must be >= 1");
    check_probability(er->p, "p");
    return;
  }
  const auto& pl = std::get<PlantedModel>(m);
  if (pl.n < 2 || pl.n % 2 != 0)
    throw Error(Errc::invalid_param,
                "planted model needs an even n >= 2, got " +
                    std::to_string(pl.n));
  check_probability(pl.p, "p");
  check_probability(pl.q, "q");
}

inline double choose3(double n) { return n * (n - 1) * (n - 2) / 6.0; }
inline double choose2(double n) { return n * (n - 1) / 2.0; }

// 53-bit uniform in [0, 1).
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

inline ProbabilityMatrix probability_matrix(const RandomModel& m) {
  detail::check_model(m);
  const int n = std::visit([](const auto& x) { return x.n; }, m);
  std::vector<double> p(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      double x;
      if (const auto* er = std::get_if<ErModel>(&m)) {
        x = er->p;
      } else {
        const auto& pl = std::get<PlantedModel>(m);
        x = ((i < n / 2) == (j < n / 2)) ? pl.p : pl.q;
      }
      p[static_cast<std::size_t>(i) * n + j] = x;
    }
  return ProbabilityMatrix(n, std::move(p));
}

/// Unit-weight graph with each pair present independently.
inline SimilarityGraph gen_from_matrix(const ProbabilityMatrix& P,
                                       std::uint64_t seed) {
  const int n = P.size();
  std::mt19937_64 rng(seed);
  std::vector<double> w(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (detail::uniform01(rng) < P(i, j)) {
        w[static_cast<std::size_t>(i) * n + j] = 1.0;
        w[static_cast<std::size_t>(j) * n + i] = 1.0;
      }
  return SimilarityGraph(n, std::move(w));
}

inline SimilarityGraph gen_er(int n, double p, std::uint64_t seed) {
  return gen_from_matrix(probability_matrix(ErModel{n, p}), seed);
}

inline SimilarityGraph gen_planted(int n, double p, double q,
                                   std::uint64_t seed) {
  return gen_from_matrix(probability_matrix(PlantedModel{n, p, q}), seed);
}

/// Human-readable notes for parameters outside the predicted regime.
inline std::vector<std::string> model_warnings(const RandomModel& m) {
  std::vector<std::string> out;
  if (const auto* pl = std::get_if<PlantedModel>(&m)) {
    if (!(pl->p > pl->q))
      out.push_back("planted model expects p > q; predictions assume the "
                    "split-first tree is optimal");
  }
  const double p = std::visit([](const auto& x) { return x.p; }, m);
  if (p == 0.0) out.push_back("p = 0 gives a graph with no edges");
  return out;
}

/// Expected base cost: per triplet 2 P(triangle) + P(exactly two edges).
inline double expected_base_cost(const ProbabilityMatrix& P) {
  const int n = P.size();
  double total = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double a = P(i, j);
      double partial = 0;
      for (int k = j + 1; k < n; ++k) {
        const double b = P(j, k), c = P(i, k);
        partial += 2 * a * b * c + a * b * (1 - c) + b * c * (1 - a) +
                   c * a * (1 - b);
      }
      total += partial;
    }
  return total;
}

inline double expected_base_cost_er(int n, double p) {
  return detail::choose3(n) * (2 * p * p * p + 3 * p * p * (1 - p));
}

/// Closed form for the planted model: triplets inside one block plus
/// triplets with two vertices in one block and one in the other.
inline double expected_base_cost_planted(int n, double p, double q) {
  const double h = n / 2.0;
  const double inside = 2 * p * p * p + 3 * p * p * (1 - p);
  const double split = 2 * p * q * q + q * q * (1 - p) + 2 * p * q * (1 - q);
  return 2 * detail::choose3(h) * inside +
         2 * detail::choose2(h) * h * split;
}

inline double expected_base_cost(const RandomModel& m) {
  detail::check_model(m);
  if (const auto* er = std::get_if<ErModel>(&m))
    return expected_base_cost_er(er->n, er->p);
  const auto& pl = std::get<PlantedModel>(m);
  return expected_base_cost_planted(pl.n, pl.p, pl.q);
}

/// Total cost of the optimal tree of the expectation graph: any tree for
/// ER, the split-the-blocks-first tree for the planted model.
inline double expectation_tree_total_cost(const RandomModel& m) {
  detail::check_model(m);
  if (const auto* er = std::get_if<ErModel>(&m))
    return er->p * 2 * detail::choose3(er->n);
  const auto& pl = std::get<PlantedModel>(m);
  if (pl.p < pl.q)
    throw Error(Errc::invalid_param,
                "split-first tree is only optimal for p >= q");
  const double h = pl.n / 2.0;
  return 2 * pl.p * 2 * detail::choose3(h) +
         4 * pl.q * detail::choose2(h) * h;
}

/// Leading-order ratio cost predicted for large n.
inline double predicted_rho(const RandomModel& m) {
  if (const auto* er = std::get_if<ErModel>(&m))
    return 2 / (3 * er->p - er->p * er->p);
  const auto& pl = std::get<PlantedModel>(m);
  const double p = pl.p, q = pl.q;
  return (2 * p + 6 * q) /
         (3 * (p + q) * (p + q) - p * p * p - 3 * p * q * q);
}

struct ExperimentReport {
  RandomModel model;
  std::uint64_t seed_base = 0;
  std::vector<std::uint64_t> seeds;
  std::vector<double> base_costs;
  std::vector<double> rho_estimates;
  double expected_base_cost = 0;
  double expectation_tree_total_cost = 0;
  double predicted_rho = 0;
  std::vector<std::string> warnings;

  std::size_t samples() const noexcept { return seeds.size(); }
  double mean_rho() const {
    double s = 0;
    for (double r : rho_estimates) s += r;
    return s / static_cast<double>(rho_estimates.size());
  }
  double min_rho() const {
    return *std::min_element(rho_estimates.begin(), rho_estimates.end());
  }
  double max_rho() const {
    return *std::max_element(rho_estimates.begin(), rho_estimates.end());
  }
  /// max_t |BC_t / E[BC] - 1|.
  double max_base_deviation() const {
    double d = 0;
    for (double b : base_costs)
      d = std::max(d, std::fabs(b / expected_base_cost - 1));
    return d;
  }
};

/// Samples `trials` graphs with seeds seed_base + t. Results are stored by
/// trial index, so the report does not depend on `jobs`.
inline ExperimentReport run_experiment(const RandomModel& model, int trials,
                                       std::uint64_t seed_base, int jobs = 1) {
  if (trials < 1) throw Error(Errc::invalid_param, "trials must be >= 1");
  const ProbabilityMatrix P = probability_matrix(model);
  ExperimentReport r;
  r.model = model;
  r.seed_base = seed_base;
  r.expected_base_cost = expected_base_cost(model);
  r.expectation_tree_total_cost = expectation_tree_total_cost(model);
  r.predicted_rho = predicted_rho(model);
  r.warnings = model_warnings(model);
  r.seeds.resize(static_cast<std::size_t>(trials));
  r.base_costs.resize(r.seeds.size());
  r.rho_estimates.resize(r.seeds.size());
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int t; (t = next.fetch_add(1)) < trials;) {
      const std::uint64_t seed = seed_base + static_cast<std::uint64_t>(t);
      const double bc = base_cost(gen_from_matrix(P, seed));
      r.seeds[t] = seed;
      r.base_costs[t] = bc;
      r.rho_estimates[t] = ratio_value(r.expectation_tree_total_cost, bc);
    }
  };
  const int used = std::clamp(jobs, 1, trials);
  if (used == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < used; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return r;
}

namespace detail {

inline std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline std::string model_line(const RandomModel& m) {
  if (const auto* er = std::get_if<ErModel>(&m))
    return "er n=" + std::to_string(er->n) + " p=" + fmt(er->p);
  const auto& pl = std::get<PlantedModel>(m);
  return "planted n=" + std::to_string(pl.n) + " p=" + fmt(pl.p) +
         " q=" + fmt(pl.q);
}

}  // namespace detail

/// Plain text report, or one "key=value" record per line with `records`.
inline std::string format_report(const ExperimentReport& r, bool records) {
  using detail::fmt;
  std::string out;
  if (records) {
    out += "model " + detail::model_line(r.model) + "\n";
    out += "summary trials=" + std::to_string(r.samples()) +
           " seed_base=" + std::to_string(r.seed_base) +
           " expected_base=" + fmt(r.expected_base_cost) +
           " expectation_tree_total=" + fmt(r.expectation_tree_total_cost) +
           " predicted_rho=" + fmt(r.predicted_rho) +
           " mean_rho=" + fmt(r.mean_rho()) + " min_rho=" + fmt(r.min_rho()) +
           " max_rho=" + fmt(r.max_rho()) +
           " max_base_deviation=" + fmt(r.max_base_deviation()) + "\n";
    for (std::size_t t = 0; t < r.samples(); ++t)
      out += "trial index=" + std::to_string(t) +
             " seed=" + std::to_string(r.seeds[t]) +
             " base=" + fmt(r.base_costs[t]) +
             " rho_hat=" + fmt(r.rho_estimates[t]) + "\n";
    for (const auto& w : r.warnings) out += "warning " + w + "\n";
    return out;
  }
  out += "model: " + detail::model_line(r.model) + "\n";
  out += "trials: " + std::to_string(r.samples()) +
         "  seed base: " + std::to_string(r.seed_base) + "\n";
  out += "predicted rho: " + fmt(r.predicted_rho) + "\n";
  out += "expected base cost: " + fmt(r.expected_base_cost) + "\n";
  out += "expectation-tree total cost: " + fmt(r.expectation_tree_total_cost) +
         "\n";
  out += "\n  trial  seed                  base cost        rho_hat\n";
  for (std::size_t t = 0; t < r.samples(); ++t) {
    char line[160];
    std::snprintf(line, sizeof line, "  %5zu  %-20llu  %-15s  %s\n", t,
                  static_cast<unsigned long long>(r.seeds[t]),
                  fmt(r.base_costs[t]).c_str(),
                  fmt(r.rho_estimates[t]).c_str());
    out += line;
  }
  out += "\nmean rho_hat: " + fmt(r.mean_rho()) + "  min: " + fmt(r.min_rho()) +
         "  max: " + fmt(r.max_rho()) + "\n";
  out += "max |BC/E[BC] - 1|: " + fmt(r.max_base_deviation()) + "\n";
  for (const auto& w : r.warnings) out += "warning: " + w + "\n";
  return out;
}

}  // namespace hcs
