// Copyright 2026 The npchem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "npchem/scaffold/scaffold.hpp"
#include "npchem/util/csv.hpp"
#include "npchem/util/random.hpp"

namespace npchem {

// ---------------------------------------------------------------------------
// Repeated k-fold planning

inline constexpr int kCvFolds = 5;
inline constexpr int kCvRepeats = 5;

enum class CvMode { kRandom, kScaffold };

inline std::string_view to_string(CvMode m) {
  return m == CvMode::kRandom ? "random" : "scaffold";
}

inline CvMode cv_mode_from_string(std::string_view name) {
  if (name == "random") return CvMode::kRandom;
  if (name == "scaffold") return CvMode::kScaffold;
  throw std::invalid_argument("unknown split mode '" + std::string(name) + "'");
}

struct CvRun {
  int run_id = 0;
  int repeat = 0;
  int fold = 0;  // held-out fold
  std::uint64_t seed = 0;
};

struct CvPlan {
  CvMode mode = CvMode::kRandom;
  std::uint64_t seed = 0;
  std::size_t records = 0;
  // folds[repeat][fold] = ascending record indices
  std::vector<std::vector<std::vector<std::size_t>>> folds;
  std::vector<std::uint64_t> repeat_seeds;
  std::vector<CvRun> runs;
};

namespace detail {

inline void finish_plan(CvPlan& plan) {
  for (auto& repeat : plan.folds) {
    for (auto& fold : repeat) std::sort(fold.begin(), fold.end());
  }
  for (int r = 0; r < kCvRepeats; ++r) {
    for (int f = 0; f < kCvFolds; ++f) {
      const int id = r * kCvFolds + f;
      plan.runs.push_back(
          {id, r, f, derive_seed(plan.seed, "cv-run", static_cast<std::uint64_t>(id))});
    }
  }
}

}  // namespace detail

/// Random 5x5 plan over `n` records: each repeat deals a seeded shuffle
/// round-robin into the folds.
inline CvPlan plan_cv_random(std::size_t n, std::uint64_t seed) {
  if (n < static_cast<std::size_t>(kCvFolds)) {
    throw std::invalid_argument("cross-validation needs at least 5 records");
  }
  CvPlan plan;
  plan.mode = CvMode::kRandom;
  plan.seed = seed;
  plan.records = n;
  for (int r = 0; r < kCvRepeats; ++r) {
    const std::uint64_t rs = derive_seed(seed, "cv-repeat", static_cast<std::uint64_t>(r));
    plan.repeat_seeds.push_back(rs);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    SplitMix64 rng(rs);
    fisher_yates(order, rng);
    std::vector<std::vector<std::size_t>> folds(kCvFolds);
    for (std::size_t i = 0; i < n; ++i) folds[i % kCvFolds].push_back(order[i]);
    plan.folds.push_back(std::move(folds));
  }
  detail::finish_plan(plan);
  return plan;
}

/// Scaffold 5x5 plan: groups go largest first (equal sizes in seeded
/// order) into the currently smallest fold, lowest index on ties.
inline CvPlan plan_cv_scaffold(const std::vector<ScaffoldKey>& keys,
                               std::uint64_t seed) {
  std::map<ScaffoldKey, std::vector<std::size_t>> grouped;
  for (std::size_t i = 0; i < keys.size(); ++i) grouped[keys[i]].push_back(i);
  if (grouped.size() < static_cast<std::size_t>(kCvFolds)) {
    throw std::invalid_argument(
        "scaffold cross-validation needs at least 5 scaffold groups");
  }
  std::vector<const std::vector<std::size_t>*> groups;
  for (const auto& [key, members] : grouped) groups.push_back(&members);
  CvPlan plan;
  plan.mode = CvMode::kScaffold;
  plan.seed = seed;
  plan.records = keys.size();
  for (int r = 0; r < kCvRepeats; ++r) {
    const std::uint64_t rs = derive_seed(seed, "cv-repeat", static_cast<std::uint64_t>(r));
    plan.repeat_seeds.push_back(rs);
    auto order = groups;
    SplitMix64 rng(rs);
    fisher_yates(order, rng);
    std::stable_sort(order.begin(), order.end(),
                     [](auto* a, auto* b) { return a->size() > b->size(); });
    std::vector<std::vector<std::size_t>> folds(kCvFolds);
    for (const auto* g : order) {
      auto smallest = std::min_element(
          folds.begin(), folds.end(),
          [](const auto& a, const auto& b) { return a.size() < b.size(); });
      smallest->insert(smallest->end(), g->begin(), g->end());
    }
    plan.folds.push_back(std::move(folds));
  }
  detail::finish_plan(plan);
  return plan;
}

/// Plan over SMILES records; scaffold mode keys every record first.
inline CvPlan plan_cv(const std::vector<std::string>& records, CvMode mode,
                      std::uint64_t seed, unsigned jobs = 1) {
  if (mode == CvMode::kRandom) return plan_cv_random(records.size(), seed);
  return plan_cv_scaffold(scaffold_keys(records, jobs), seed);
}

inline nlohmann::ordered_json to_json(const CvPlan& plan) {
  nlohmann::ordered_json out;
  out["mode"] = to_string(plan.mode);
  out["seed"] = plan.seed;
  out["records"] = plan.records;
  out["repeats"] = kCvRepeats;
  out["folds_per_repeat"] = kCvFolds;
  out["folds"] = plan.folds;
  out["repeat_seeds"] = plan.repeat_seeds;
  auto runs = nlohmann::ordered_json::array();
  for (const auto& r : plan.runs) {
    runs.push_back({{"run_id", r.run_id}, {"repeat", r.repeat}, {"fold", r.fold},
                    {"seed", r.seed}});
  }
  out["runs"] = std::move(runs);
  return out;
}

// ---------------------------------------------------------------------------
// Class weights

/// Balanced weights n / (k * count(c)) over the k classes present.
template <typename Label>
std::map<Label, double> class_weights(const std::vector<Label>& labels) {
  if (labels.empty()) throw std::invalid_argument("class weights need labels");
  std::map<Label, std::size_t> counts;
  for (const auto& l : labels) ++counts[l];
  std::map<Label, double> weights;
  const double n = static_cast<double>(labels.size());
  const double k = static_cast<double>(counts.size());
  for (const auto& [label, count] : counts) {
    weights[label] = n / (k * static_cast<double>(count));
  }
  return weights;
}

// ---------------------------------------------------------------------------
// Classification metrics

using ConfusionMatrix = std::vector<std::vector<double>>;  // [truth][prediction]

inline ConfusionMatrix confusion_matrix(const std::vector<int>& truth,
                                        const std::vector<int>& predicted,
                                        int classes) {
  if (truth.size() != predicted.size()) {
    throw std::invalid_argument("truth and prediction lengths differ");
  }
  ConfusionMatrix m(static_cast<std::size_t>(classes),
                    std::vector<double>(static_cast<std::size_t>(classes), 0.0));
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] < 0 || truth[i] >= classes || predicted[i] < 0 ||
        predicted[i] >= classes) {
      throw std::invalid_argument("class id out of range");
    }
    m[static_cast<std::size_t>(truth[i])][static_cast<std::size_t>(predicted[i])] += 1;
  }
  return m;
}

namespace detail {

inline void check_square(const ConfusionMatrix& c) {
  for (const auto& row : c) {
    if (row.size() != c.size()) {
      throw std::invalid_argument("confusion matrix must be square");
    }
  }
}

}  // namespace detail

/// Generalized (Gorodkin) Matthews correlation for K classes; 0 when a
/// denominator term is zero.
inline double mcc_generalized(const ConfusionMatrix& c) {
  detail::check_square(c);
  const std::size_t k = c.size();
  double correct = 0, total = 0;
  std::vector<double> truth(k, 0), pred(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    correct += c[i][i];
    for (std::size_t j = 0; j < k; ++j) {
      total += c[i][j];
      truth[i] += c[i][j];
      pred[j] += c[i][j];
    }
  }
  double pt = 0, pp = 0, tt = 0;
  for (std::size_t i = 0; i < k; ++i) {
    pt += pred[i] * truth[i];
    pp += pred[i] * pred[i];
    tt += truth[i] * truth[i];
  }
  const double den = (total * total - pp) * (total * total - tt);
  if (den == 0) return 0.0;
  return (correct * total - pt) / std::sqrt(den);
}

/// Matthews correlation: the four-term form for 2x2 matrices (class 1 is
/// positive), the generalized form otherwise.
inline double mcc(const ConfusionMatrix& c) {
  detail::check_square(c);
  if (c.size() != 2) return mcc_generalized(c);
  const double tn = c[0][0], fp = c[0][1], fn = c[1][0], tp = c[1][1];
  const double den = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
  if (den == 0) return 0.0;
  return (tp * tn - fp * fn) / std::sqrt(den);
}

/// Mann-Whitney AUC with tied scores counted as one half. Throws when only
/// one class is present.
inline double auc_roc(const std::vector<double>& scores,
                      const std::vector<int>& labels) {
  if (scores.size() != labels.size()) {
    throw std::invalid_argument("scores and labels lengths differ");
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  // Sum of (1-based) midranks of the positives, doubled to stay integral.
  double twice_rank_sum = 0;
  double positives = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double twice_midrank = static_cast<double>(i + 1 + j);
    for (std::size_t t = i; t < j; ++t) {
      if (labels[order[t]]) {
        twice_rank_sum += twice_midrank;
        positives += 1;
      }
    }
    i = j;
  }
  const double negatives = static_cast<double>(scores.size()) - positives;
  if (positives == 0 || negatives == 0) {
    throw std::invalid_argument("AUC needs both classes");
  }
  const double u = twice_rank_sum / 2 - positives * (positives + 1) / 2;
  return u / (positives * negatives);
}

/// Macro-averaged one-vs-rest AUC over classes that have both positive and
/// negative examples. scores[i][c] is the score of record i for class c.
inline double auc_roc_macro_ovr(const std::vector<std::vector<double>>& scores,
                                const std::vector<int>& labels) {
  if (scores.empty()) throw std::invalid_argument("AUC needs scores");
  const std::size_t k = scores.front().size();
  double sum = 0;
  int used = 0;
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<double> s;
    std::vector<int> y;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      s.push_back(scores[i].at(c));
      y.push_back(labels.at(i) == static_cast<int>(c));
    }
    const auto pos = std::count(y.begin(), y.end(), 1);
    if (pos == 0 || pos == static_cast<long>(y.size())) continue;
    sum += auc_roc(s, y);
    ++used;
  }
  if (used == 0) throw std::invalid_argument("AUC needs at least two classes");
  return sum / used;
}

// ---------------------------------------------------------------------------
// Summaries and Welch's t-test

struct MetricSummary {
  double mean = 0.0;
  double std = 0.0;  // sample (n - 1); 0 for a single value
  double se = 0.0;
  std::size_t n = 0;
};

inline MetricSummary summarize(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("cannot summarize no values");
  MetricSummary s;
  s.n = values.size();
  const double n = static_cast<double>(s.n);
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (s.n > 1) {
    double ss = 0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / (n - 1));
    s.se = s.std / std::sqrt(n);
  }
  return s;
}

namespace detail {

// Continued fraction for the incomplete beta function (modified Lentz).
inline double beta_continued_fraction(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-15;
  double c = 1.0;
  double d = 1.0 - (a + b) * x / (a + 1.0);
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 10000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) return h;
  }
  throw std::runtime_error("incomplete beta continued fraction did not converge");
}

}  // namespace detail

/// Regularized incomplete beta I_x(a, b).
inline double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double front = std::exp(std::lgamma(a + b) - std::lgamma(a) -
                                std::lgamma(b) + a * std::log(x) +
                                b * std::log1p(-x));
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * detail::beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * detail::beta_continued_fraction(b, a, 1.0 - x) / b;
}

/// Two-tailed P(|T| >= |t|) for Student's t with `dof` degrees of freedom.
inline double student_t_two_tailed(double t, double dof) {
  return incomplete_beta(dof / 2.0, 0.5, dof / (dof + t * t));
}

inline std::string significance_stars(double p) {
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "";
}

struct PairwiseComparison {
  double t = 0.0;
  double dof = 0.0;
  double p = 1.0;
  std::string stars;
};

/// Welch's unequal-variance t-test with Welch-Satterthwaite degrees of
/// freedom. Throws for samples smaller than 2 or zero combined variance.
inline PairwiseComparison welch_t(const std::vector<double>& a,
                                  const std::vector<double>& b) {
  if (a.size() < 2 || b.size() < 2) {
    throw std::invalid_argument("Welch's t-test needs at least 2 values per sample");
  }
  const MetricSummary sa = summarize(a), sb = summarize(b);
  const double va = sa.std * sa.std / static_cast<double>(sa.n);
  const double vb = sb.std * sb.std / static_cast<double>(sb.n);
  if (!(va + vb > 0)) {
    throw std::invalid_argument("Welch's t-test needs nonzero variance");
  }
  PairwiseComparison out;
  out.t = (sa.mean - sb.mean) / std::sqrt(va + vb);
  out.dof = (va + vb) * (va + vb) /
            (va * va / static_cast<double>(sa.n - 1) +
             vb * vb / static_cast<double>(sb.n - 1));
  out.p = std::min(1.0, student_t_two_tailed(out.t, out.dof));
  out.stars = significance_stars(out.p);
  return out;
}

using LabeledSample = std::pair<std::string, std::vector<double>>;

/// Square matrix of mean differences (row minus column) with significance
/// stars; the diagonal is left blank.
inline std::string comparison_matrix_csv(const std::vector<LabeledSample>& samples) {
  std::string out = "model";
  for (const auto& s : samples) out += "," + csv_field(s.first);
  out += '\n';
  for (const auto& row : samples) {
    out += csv_field(row.first);
    for (const auto& col : samples) {
      out += ',';
      if (&row == &col) continue;
      const double diff = summarize(row.second).mean - summarize(col.second).mean;
      out += fixed_text(diff, 4) + welch_t(row.second, col.second).stars;
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hyperparameter grid bookkeeping (no training happens here)

using HyperParams = std::map<std::string, std::string>;

/// Cartesian product in key order, last key varying fastest.
inline std::vector<HyperParams> enumerate_grid(
    const std::map<std::string, std::vector<std::string>>& grid) {
  std::vector<HyperParams> out{HyperParams{}};
  for (const auto& [name, values] : grid) {
    if (values.empty()) throw std::invalid_argument("empty grid axis '" + name + "'");
    std::vector<HyperParams> next;
    for (const auto& partial : out) {
      for (const auto& v : values) {
        HyperParams p = partial;
        p[name] = v;
        next.push_back(std::move(p));
      }
    }
    out = std::move(next);
  }
  return out;
}

/// Index of the configuration with the highest mean score; first on ties.
inline std::size_t select_best(const std::vector<std::vector<double>>& fold_scores) {
  if (fold_scores.empty()) throw std::invalid_argument("no configurations to select from");
  std::size_t best = 0;
  double best_mean = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < fold_scores.size(); ++i) {
    const double m = summarize(fold_scores[i]).mean;
    if (m > best_mean) {
      best_mean = m;
      best = i;
    }
  }
  return best;
}

}  // namespace npchem
