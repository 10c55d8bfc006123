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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "corpus.hpp"
#include "hcstruct/brute.hpp"
#include "hcstruct/cost.hpp"
#include "hcstruct/newick.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace {

using hcs::Errc;
using hcs::HcTree;
using hcs::Rational;
using hcs::SimilarityGraph;
using testutil::code_of;

const std::vector<std::string> kLabels{"1", "2", "3", "4", "5", "6"};

HcTree tree(const char* s) { return hcs::parse_newick(s, kLabels); }

TEST(Cost, PathOnFour) {
  const auto g = corpus::unit_path(4);
  const auto t = tree("((1,2),(3,4));");
  EXPECT_EQ(hcs::dasgupta_cost(g, t), 8);
  EXPECT_EQ(hcs::total_cost(g, t), 2);
  EXPECT_EQ(hcs::base_cost(g), 2);
  EXPECT_EQ(hcs::ratio_cost(g, t), 1);
  EXPECT_TRUE(hcs::is_consistent(g, t));

  const auto bad = tree("((1,3),(2,4));");
  EXPECT_EQ(hcs::total_cost(g, bad), 6);
  EXPECT_FALSE(hcs::is_consistent(g, bad));
}

TEST(Cost, Triangle) {
  const auto g = corpus::unit_clique(3);
  const auto t = tree("((1,2),3);");
  EXPECT_EQ(hcs::dasgupta_cost(g, t), 8);
  EXPECT_EQ(hcs::total_cost(g, t), 2);
  EXPECT_EQ(hcs::triplet_cost(g, t, 0, 1, 2), 2);
}

TEST(Cost, EmptyGraphCostsNothing) {
  const SimilarityGraph g(4, std::vector<double>(16, 0));
  const auto t = tree("(((1,2),3),4);");
  EXPECT_EQ(hcs::dasgupta_cost(g, t), 0);
  EXPECT_EQ(hcs::total_cost(g, t), 0);
  EXPECT_EQ(hcs::ratio_cost(g, t), 1);
  EXPECT_EQ(*hcs::exact_ratio_cost(g, t), Rational(1));
}

TEST(TripletCost, Examples) {
  const auto g = SimilarityGraph::from_pairs(3, {{0, 1, 3}, {0, 2, 2}, {1, 2, 1}});
  EXPECT_EQ(hcs::triplet_cost(g, tree("((1,2),3);"), 0, 1, 2), 3);
  EXPECT_EQ(hcs::triplet_cost(g, tree("((1,3),2);"), 0, 1, 2), 4);
  EXPECT_EQ(hcs::triplet_cost(g, tree("((2,3),1);"), 2, 0, 1), 5);
  EXPECT_EQ(hcs::triplet_cost(g, tree("(1,2,3);"), 0, 1, 2), 6);
  EXPECT_EQ(code_of([&] { hcs::triplet_cost(g, tree("(1,2,3);"), 0, 2, 2); }),
            Errc::invalid_triplet);
}

TEST(Ratio, Examples) {
  const auto k5 = corpus::unit_clique(5);
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 10; ++rep)
    EXPECT_EQ(hcs::ratio_cost(k5, corpus::random_tree(5, rng)), 1);

  // A perfect matching: 0/0 is read as 1.
  const auto matching = SimilarityGraph::from_pairs(4, {{0, 1, 1}, {2, 3, 1}});
  EXPECT_EQ(hcs::ratio_cost(matching, tree("((1,2),(3,4));")), 1);
  const auto split = tree("((1,3),(2,4));");
  EXPECT_TRUE(std::isinf(hcs::ratio_cost(matching, split)));
  EXPECT_TRUE(hcs::exact_ratio_cost(matching, split)->is_infinite());

  EXPECT_EQ(*hcs::exact_ratio_cost(corpus::unit_path(5),
                                   tree("((1,(2,3)),(4,5));")),
            Rational(4, 3));
}

TEST(Ratio, NonIntegralWeightsHaveNoExactRatio) {
  const auto g = SimilarityGraph::from_pairs(3, {{0, 1, 0.5}, {1, 2, 1}});
  EXPECT_FALSE(hcs::exact_ratio_cost(g, tree("((1,2),3);")).has_value());
}

TEST(CostIdentity, DasguptaIsTotalPlusTwiceWeight) {
  std::mt19937_64 rng(32);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 2 + rep % 11;
    const auto g = corpus::random_integer_graph(n, 4, rng);
    const auto t = rep % 3 ? corpus::random_tree(n, rng)
                           : corpus::random_multifurcating_tree(n, rng);
    EXPECT_EQ(hcs::dasgupta_cost(g, t),
              hcs::total_cost(g, t) + 2 * g.total_weight());
    EXPECT_EQ(hcs::dasgupta_cost(g, t), oracle::dasgupta_by_pairs(g, t));
  }
}

TEST(CostIdentity, TotalIsSumOfTripletCosts) {
  std::mt19937_64 rng(33);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 3 + rep % 10;
    const auto g = corpus::random_integer_graph(n, 4, rng);
    const auto t = rep % 2 ? corpus::random_tree(n, rng)
                           : corpus::random_multifurcating_tree(n, rng);
    double sum = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k) sum += hcs::triplet_cost(g, t, i, j, k);
    EXPECT_EQ(hcs::total_cost(g, t), sum);
    EXPECT_EQ(hcs::total_cost(g, t), oracle::total_cost_by_triplets(g, t));
  }
}

TEST(CostIdentity, RatioAtLeastOneAndConsistencyIsRatioOne) {
  std::mt19937_64 rng(34);
  int consistent_seen = 0;
  for (int rep = 0; rep < 300; ++rep) {
    const int n = 3 + rep % 7;
    HcTree source;
    const auto g = rep % 2 ? corpus::ultrametric_graph(n, 3, rng, &source)
                           : corpus::random_integer_graph(n, 2, rng);
    const auto t = rep % 2 ? source : corpus::random_tree(n, rng);
    const auto r = hcs::evaluate(g, t);
    EXPECT_GE(r.total, r.base);
    EXPECT_GE(r.ratio, 1);
    EXPECT_EQ(r.consistent, r.total == r.base);
    EXPECT_EQ(hcs::is_consistent(g, t), r.consistent);
    consistent_seen += r.consistent;
  }
  EXPECT_GT(consistent_seen, 100);
}

TEST(CostIdentity, RelabelInvariant) {
  std::mt19937_64 rng(35);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 3 + rep % 9;
    const auto g = corpus::random_integer_graph(n, 5, rng);
    const auto t = corpus::random_tree(n, rng);
    const auto perm = corpus::random_permutation(n, rng);
    const auto gp = corpus::permuted(g, perm);
    const auto tp = corpus::permuted(t, perm);
    EXPECT_EQ(hcs::dasgupta_cost(g, t), hcs::dasgupta_cost(gp, tp));
    EXPECT_EQ(hcs::total_cost(g, t), hcs::total_cost(gp, tp));
    EXPECT_EQ(hcs::base_cost(g), hcs::base_cost(gp));
  }
}

TEST(Consistency, Examples) {
  // Unit star: a triplet holding the centre is at its minimum unless the
  // two leaves merge before the centre joins them.
  const auto star = corpus::unit_star(3);
  EXPECT_TRUE(hcs::is_consistent(star, tree("(((1,2),3),4);")));
  EXPECT_FALSE(hcs::is_consistent(star, tree("(((2,3),4),1);")));

  // No binary tree on P5 is consistent.
  const auto p5 = corpus::unit_path(5);
  int trees = 0;
  hcs::for_each_tree(5, [&](const HcTree& t) {
    ++trees;
    EXPECT_FALSE(hcs::is_consistent(p5, t));
  });
  EXPECT_EQ(trees, 105);

  // n = 3: consistent iff the heaviest pair merges first.
  const auto g = SimilarityGraph::from_pairs(3, {{0, 1, 1}, {0, 2, 5}, {1, 2, 2}});
  EXPECT_TRUE(hcs::is_consistent(g, tree("((1,3),2);")));
  EXPECT_FALSE(hcs::is_consistent(g, tree("((1,2),3);")));
  EXPECT_FALSE(hcs::is_consistent(g, tree("((2,3),1);")));
}

TEST(Consistency, Errors) {
  const auto g = corpus::unit_path(4);
  EXPECT_EQ(code_of([&] { hcs::total_cost(g, tree("((1,2),3);")); }),
            Errc::leaf_mismatch);
  EXPECT_EQ(code_of([&] { hcs::dasgupta_cost(g, tree("((1,2),(3,5));")); }),
            Errc::leaf_mismatch);
  EXPECT_EQ(code_of([&] { hcs::is_consistent(g, tree("(1,2,3,4);")); }),
            Errc::invalid_param);
  // evaluate() still reports consistency of a non-binary tree literally.
  EXPECT_FALSE(hcs::evaluate(g, tree("(1,2,3,4);")).consistent);
}

}  // namespace
