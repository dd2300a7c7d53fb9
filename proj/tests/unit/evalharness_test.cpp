// Copyright 2026 The npchem Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "npchem/evalharness/evalharness.hpp"
#include "support/scaffold_corpus.hpp"
#include "support/stat_oracles.hpp"

namespace npchem {
namespace {

void expect_partition(const CvPlan& plan) {
  ASSERT_EQ(plan.folds.size(), 5u);
  for (const auto& repeat : plan.folds) {
    ASSERT_EQ(repeat.size(), 5u);
    std::vector<std::size_t> all;
    for (const auto& fold : repeat) all.insert(all.end(), fold.begin(), fold.end());
    std::sort(all.begin(), all.end());
    ASSERT_EQ(all.size(), plan.records);
    for (std::size_t i = 0; i < all.size(); ++i) EXPECT_EQ(all[i], i);
  }
  EXPECT_EQ(plan.runs.size(), 25u);
}

TEST(PlanCv, RandomSizes) {
  const CvPlan plan = plan_cv_random(100, 3);
  expect_partition(plan);
  for (const auto& repeat : plan.folds) {
    for (const auto& fold : repeat) EXPECT_EQ(fold.size(), 20u);
  }
  EXPECT_NE(plan.folds[0], plan.folds[1]);
  std::set<std::uint64_t> seeds;
  for (const auto& run : plan.runs) seeds.insert(run.seed);
  EXPECT_EQ(seeds.size(), 25u);
}

TEST(PlanCv, RandomUneven) {
  for (std::size_t n : {5, 7, 13, 101}) {
    const CvPlan plan = plan_cv_random(n, 1);
    expect_partition(plan);
    for (const auto& repeat : plan.folds) {
      std::size_t lo = n, hi = 0;
      for (const auto& f : repeat) {
        lo = std::min(lo, f.size());
        hi = std::max(hi, f.size());
      }
      EXPECT_LE(hi - lo, 1u);
    }
  }
}

TEST(PlanCv, Deterministic) {
  EXPECT_EQ(to_json(plan_cv_random(50, 11)).dump(), to_json(plan_cv_random(50, 11)).dump());
  EXPECT_NE(to_json(plan_cv_random(50, 11)).dump(), to_json(plan_cv_random(50, 12)).dump());
}

TEST(PlanCv, TooFew) {
  EXPECT_THROW(plan_cv_random(4, 0), std::invalid_argument);
  std::vector<ScaffoldKey> keys(100, ScaffoldKey{"a"});
  keys[0].key = "b";
  EXPECT_THROW(plan_cv_scaffold(keys, 0), std::invalid_argument);
}

TEST(PlanCv, ScaffoldGroupsStayTogether) {
  std::vector<ScaffoldKey> keys;
  const std::size_t sizes[] = {1, 3, 5, 8, 13};
  for (std::size_t g = 0; g < 5; ++g) {
    for (std::size_t i = 0; i < sizes[g]; ++i) keys.push_back({std::to_string(g)});
  }
  const CvPlan plan = plan_cv_scaffold(keys, 5);
  expect_partition(plan);
  for (const auto& repeat : plan.folds) {
    for (const auto& fold : repeat) {
      std::set<std::string> groups;
      for (auto i : fold) groups.insert(keys[i].key);
      EXPECT_EQ(groups.size(), 1u);
    }
  }
}

TEST(PlanCv, ScaffoldModeOnMolecules) {
  std::mt19937_64 rng(61);
  const auto recipes = testing::all_scaffold_recipes();
  std::vector<std::string> mols;
  for (int i = 0; i < 400; ++i) {
    mols.push_back(testing::decorate(recipes[std::uniform_int_distribution<std::size_t>(
                                         0, 40)(rng)],
                                     rng));
  }
  const CvPlan plan = plan_cv(mols, CvMode::kScaffold, 2, 2);
  expect_partition(plan);
  const auto keys = scaffold_keys(mols);
  std::map<std::string, std::size_t> group_size;
  for (const auto& k : keys) ++group_size[k.key];
  std::size_t largest = 0;
  for (const auto& [k, n] : group_size) largest = std::max(largest, n);
  for (const auto& repeat : plan.folds) {
    std::map<std::string, std::set<int>> where;
    std::size_t lo = mols.size(), hi = 0;
    for (int f = 0; f < 5; ++f) {
      for (auto i : repeat[static_cast<std::size_t>(f)]) where[keys[i].key].insert(f);
      lo = std::min(lo, repeat[static_cast<std::size_t>(f)].size());
      hi = std::max(hi, repeat[static_cast<std::size_t>(f)].size());
    }
    for (const auto& [k, folds] : where) EXPECT_EQ(folds.size(), 1u) << k;
    EXPECT_LE(hi - lo, largest);
  }
}

TEST(ClassWeights, Examples) {
  std::vector<std::string> labels(75, "A");
  labels.insert(labels.end(), 25, "B");
  const auto w = class_weights(labels);
  EXPECT_NEAR(w.at("A"), 100.0 / 150.0, 1e-12);
  EXPECT_NEAR(w.at("B"), 2.0, 1e-12);
  EXPECT_DOUBLE_EQ(class_weights(std::vector<int>{0, 1, 2, 0, 1, 2}).at(1), 1.0);
  EXPECT_DOUBLE_EQ(class_weights(std::vector<int>{4, 4, 4}).at(4), 1.0);
  EXPECT_THROW(class_weights(std::vector<int>{}), std::invalid_argument);
}

TEST(ClassWeights, WeightTimesCountConstant) {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> labels;
    const int n = std::uniform_int_distribution<int>(1, 300)(rng);
    for (int i = 0; i < n; ++i) labels.push_back(std::uniform_int_distribution<int>(0, 5)(rng));
    const auto w = class_weights(labels);
    std::map<int, double> counts;
    for (int l : labels) counts[l] += 1;
    const double expect = static_cast<double>(n) / static_cast<double>(w.size());
    for (const auto& [c, weight] : w) EXPECT_NEAR(weight * counts[c], expect, 1e-9);
  }
}

TEST(Mcc, Examples) {
  EXPECT_DOUBLE_EQ(mcc({{50, 0}, {0, 50}}), 1.0);
  EXPECT_DOUBLE_EQ(mcc({{0, 50}, {50, 0}}), -1.0);
  EXPECT_DOUBLE_EQ(mcc({{0, 0}, {0, 0}}), 0.0);
  EXPECT_DOUBLE_EQ(mcc({{10, 0}, {5, 0}}), 0.0);
  // TP=90, TN=80, FP=20, FN=10
  EXPECT_NEAR(mcc({{80, 20}, {10, 90}}), testing::mcc_four_term(90, 80, 20, 10), 1e-12);
  EXPECT_NEAR(mcc({{80, 20}, {10, 90}}), 7000.0 / std::sqrt(110.0 * 100 * 100 * 90), 1e-12);
  EXPECT_THROW(mcc({{1, 2}}), std::invalid_argument);
  EXPECT_EQ(confusion_matrix({0, 1, 1}, {0, 0, 1}, 2),
            (ConfusionMatrix{{1, 0}, {1, 1}}));
}

TEST(Mcc, RandomMatricesAgainstOracles) {
  std::mt19937_64 rng(63);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t k = trial % 2 ? 2 : std::uniform_int_distribution<std::size_t>(3, 5)(rng);
    ConfusionMatrix c(k, std::vector<double>(k));
    for (auto& row : c) {
      for (auto& x : row) x = std::uniform_int_distribution<int>(0, 30)(rng);
    }
    const double m = mcc(c);
    EXPECT_NEAR(m, testing::mcc_by_covariance(c), 1e-12);
    EXPECT_NEAR(m, mcc_generalized(c), 1e-12);
    if (k == 2) {
      EXPECT_NEAR(m, testing::mcc_four_term(c[1][1], c[0][0], c[0][1], c[1][0]), 1e-12);
    }
    // Relabeling both axes with the same permutation.
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    ConfusionMatrix p(k, std::vector<double>(k));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) p[perm[i]][perm[j]] = c[i][j];
    }
    EXPECT_NEAR(mcc_generalized(p), mcc_generalized(c), 1e-12);
  }
}

TEST(Auc, Examples) {
  EXPECT_DOUBLE_EQ(auc_roc({0.1, 0.2, 0.8, 0.9}, {0, 0, 1, 1}), 1.0);
  EXPECT_DOUBLE_EQ(auc_roc({0.5, 0.5, 0.5, 0.5}, {0, 1, 0, 1}), 0.5);
  const std::vector<double> s = {0.1, 0.4, 0.35, 0.8};
  const std::vector<int> y = {0, 1, 0, 1};
  EXPECT_NEAR(auc_roc(s, y), testing::auc_pairwise(s, y), 1e-12);
  EXPECT_DOUBLE_EQ(auc_roc(s, y), 1.0);
  EXPECT_THROW(auc_roc({0.1, 0.2}, {1, 1}), std::invalid_argument);
}

TEST(Auc, RandomScoresAgainstPairwiseOracle) {
  std::mt19937_64 rng(64);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 80)(rng);
    std::vector<double> s;
    std::vector<int> y;
    const int levels = trial % 3 == 0 ? 4 : 1000;
    for (int i = 0; i < n; ++i) {
      s.push_back(std::uniform_int_distribution<int>(0, levels)(rng) / static_cast<double>(levels));
      y.push_back(i < 1 ? 0 : i < 2 ? 1 : std::uniform_int_distribution<int>(0, 1)(rng));
    }
    const double a = auc_roc(s, y);
    EXPECT_NEAR(a, testing::auc_pairwise(s, y), 1e-12);
    std::vector<double> t;
    for (double x : s) t.push_back(std::exp(3 * x) + 1);
    EXPECT_NEAR(auc_roc(t, y), a, 1e-12);
  }
}

TEST(Auc, MacroOneVsRest) {
  const std::vector<std::vector<double>> scores = {
      {0.8, 0.1, 0.1}, {0.2, 0.7, 0.1}, {0.1, 0.2, 0.7}, {0.6, 0.3, 0.1}};
  const std::vector<int> labels = {0, 1, 2, 0};
  EXPECT_DOUBLE_EQ(auc_roc_macro_ovr(scores, labels), 1.0);
  const std::vector<int> shuffled = {1, 0, 2, 0};
  const double expected =
      (auc_roc({0.8, 0.2, 0.1, 0.6}, {0, 1, 0, 1}) + auc_roc({0.1, 0.7, 0.2, 0.3}, {1, 0, 0, 0}) +
       auc_roc({0.1, 0.1, 0.7, 0.1}, {0, 0, 1, 0})) / 3.0;
  EXPECT_NEAR(auc_roc_macro_ovr(scores, shuffled), expected, 1e-12);
}

TEST(Summarize, Examples) {
  const MetricSummary a = summarize({1, 1, 1});
  EXPECT_DOUBLE_EQ(a.mean, 1);
  EXPECT_DOUBLE_EQ(a.std, 0);
  EXPECT_DOUBLE_EQ(a.se, 0);
  const MetricSummary b = summarize({0, 2});
  EXPECT_DOUBLE_EQ(b.mean, 1);
  EXPECT_NEAR(b.std, std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(b.se, 1.0, 1e-15);
  const MetricSummary c = summarize({0.7});
  EXPECT_EQ(c.n, 1u);
  EXPECT_DOUBLE_EQ(c.std, 0);
  EXPECT_THROW(summarize({}), std::invalid_argument);
}

TEST(Summarize, OrderInvariantAndSeBelowStd) {
  std::mt19937_64 rng(65);
  std::vector<double> v;
  for (int i = 0; i < 25; ++i) v.push_back(std::uniform_real_distribution<double>(-1, 1)(rng));
  const MetricSummary a = summarize(v);
  std::shuffle(v.begin(), v.end(), rng);
  const MetricSummary b = summarize(v);
  EXPECT_NEAR(a.mean, b.mean, 1e-15);
  EXPECT_NEAR(a.std, b.std, 1e-15);
  EXPECT_LE(a.se, a.std);
}

TEST(Welch, Examples) {
  const PairwiseComparison same = welch_t({1, 2, 3}, {1, 2, 3});
  EXPECT_DOUBLE_EQ(same.t, 0.0);
  EXPECT_NEAR(same.p, 1.0, 1e-15);
  EXPECT_EQ(same.stars, "");
  const std::vector<double> a = {1, 2, 3}, b = {2, 3, 4, 5};
  const PairwiseComparison ab = welch_t(a, b), ba = welch_t(b, a);
  EXPECT_DOUBLE_EQ(ab.t, -ba.t);
  EXPECT_DOUBLE_EQ(ab.p, ba.p);
  const auto ref = testing::welch_reference(a, b);
  EXPECT_NEAR(ab.t, ref.t, 1e-9);
  EXPECT_NEAR(ab.dof, ref.dof, 1e-9);
  EXPECT_NEAR(ab.p, ref.p, 1e-9);
  EXPECT_THROW(welch_t({1, 1}, {2, 2}), std::invalid_argument);
  EXPECT_THROW(welch_t({1}, {2, 3}), std::invalid_argument);
}

TEST(Welch, RandomSamplesAgainstReference) {
  std::mt19937_64 rng(66);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a, b;
    const int na = std::uniform_int_distribution<int>(2, 25)(rng);
    const int nb = std::uniform_int_distribution<int>(2, 25)(rng);
    std::normal_distribution<double> da(0.0, 1.0), db(0.5, 2.0);
    for (int i = 0; i < na; ++i) a.push_back(da(rng));
    for (int i = 0; i < nb; ++i) b.push_back(db(rng));
    const auto got = welch_t(a, b);
    const auto ref = testing::welch_reference(a, b);
    EXPECT_NEAR(got.t, ref.t, 1e-9);
    EXPECT_NEAR(got.dof, ref.dof, 1e-9);
    EXPECT_NEAR(got.p, ref.p, 1e-9);
  }
}

TEST(Welch, Stars) {
  EXPECT_EQ(significance_stars(0.0009), "***");
  EXPECT_EQ(significance_stars(0.001), "**");
  EXPECT_EQ(significance_stars(0.0099), "**");
  EXPECT_EQ(significance_stars(0.01), "*");
  EXPECT_EQ(significance_stars(0.049), "*");
  EXPECT_EQ(significance_stars(0.05), "");
}

TEST(Welch, IncompleteBetaKnownValues) {
  EXPECT_NEAR(incomplete_beta(1, 1, 0.3), 0.3, 1e-14);
  EXPECT_NEAR(incomplete_beta(2, 3, 0.4), 0.5248, 1e-13);
  // t = 2.0 with 10 dof: two-tailed p from tables, 0.07338803.
  EXPECT_NEAR(student_t_two_tailed(2.0, 10), 0.0733880347, 1e-9);
}

TEST(CompareMatrix, Layout) {
  const std::string csv = comparison_matrix_csv(
      {{"A", {0.9, 0.91, 0.92}}, {"B", {0.5, 0.52, 0.51}}});
  EXPECT_EQ(csv, "model,A,B\nA,,0.4000***\nB,-0.4000***,\n");
}

TEST(Grid, EnumerateAndSelect) {
  const auto grid = enumerate_grid({{"lr", {"1e-4", "1e-3"}}, {"depth", {"2", "4", "8"}}});
  ASSERT_EQ(grid.size(), 6u);
  EXPECT_EQ(grid[0].at("depth"), "2");
  EXPECT_EQ(grid[0].at("lr"), "1e-4");
  EXPECT_EQ(grid[1].at("lr"), "1e-3");
  EXPECT_EQ(select_best({{0.125, 0.25}, {0.25, 0.25}, {0.5, 0.0}}), 1u);
  EXPECT_THROW(select_best({}), std::invalid_argument);
}

}  // namespace
}  // namespace npchem
