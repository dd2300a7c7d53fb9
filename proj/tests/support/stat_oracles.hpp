// Copyright 2026 The npchem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Direct-formula references for the classification and test statistics.

#include <cmath>
#include <vector>

namespace npchem::testing {

/// MCC as the Pearson correlation of one-hot truth and prediction vectors,
/// expanded sample by sample.
inline double mcc_by_covariance(const std::vector<std::vector<double>>& c) {
  const std::size_t k = c.size();
  std::vector<std::pair<std::size_t, std::size_t>> samples;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      for (int n = 0; n < static_cast<int>(c[i][j]); ++n) samples.emplace_back(i, j);
    }
  }
  const double n = static_cast<double>(samples.size());
  std::vector<double> mx(k, 0), my(k, 0);
  for (auto [t, p] : samples) {
    mx[t] += 1;
    my[p] += 1;
  }
  for (std::size_t c2 = 0; c2 < k; ++c2) {
    mx[c2] /= n;
    my[c2] /= n;
  }
  double cxy = 0, cxx = 0, cyy = 0;
  for (auto [t, p] : samples) {
    for (std::size_t c2 = 0; c2 < k; ++c2) {
      const double x = (t == c2 ? 1.0 : 0.0) - mx[c2];
      const double y = (p == c2 ? 1.0 : 0.0) - my[c2];
      cxy += x * y;
      cxx += x * x;
      cyy += y * y;
    }
  }
  if (cxx == 0 || cyy == 0) return 0.0;
  return cxy / std::sqrt(cxx * cyy);
}

inline double mcc_four_term(double tp, double tn, double fp, double fn) {
  const double d = std::sqrt((tp + fp) * (tp + fn) * (tn + fp) * (tn + fn));
  return d == 0 ? 0.0 : (tp * tn - fp * fn) / d;
}

/// Fraction of (positive, negative) pairs ranked correctly, ties half.
inline double auc_pairwise(const std::vector<double>& s, const std::vector<int>& y) {
  double wins = 0, pairs = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!y[i]) continue;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (y[j]) continue;
      pairs += 1;
      if (s[i] > s[j]) wins += 1;
      if (s[i] == s[j]) wins += 0.5;
    }
  }
  return wins / pairs;
}

struct WelchReference {
  double t, dof, p;
};

inline double t_pdf(double x, double nu) {
  return std::exp(std::lgamma((nu + 1) / 2) - std::lgamma(nu / 2)) /
         std::sqrt(nu * M_PI) * std::pow(1 + x * x / nu, -(nu + 1) / 2);
}

/// Textbook Welch statistic; the two-tailed p integrates the t density
/// from 0 to |t| with composite Simpson's rule.
inline WelchReference welch_reference(const std::vector<double>& a,
                                      const std::vector<double>& b) {
  auto mean = [](const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  auto var = [&](const std::vector<double>& v) {
    const double m = mean(v);
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
  };
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const double qa = var(a) / na, qb = var(b) / nb;
  WelchReference r;
  r.t = (mean(a) - mean(b)) / std::sqrt(qa + qb);
  r.dof = (qa + qb) * (qa + qb) / (qa * qa / (na - 1) + qb * qb / (nb - 1));
  const int steps = 200000;
  const double h = std::abs(r.t) / steps;
  double area = t_pdf(0, r.dof) + t_pdf(std::abs(r.t), r.dof);
  for (int i = 1; i < steps; ++i) area += (i % 2 ? 4 : 2) * t_pdf(i * h, r.dof);
  area *= h / 3;
  r.p = 1 - 2 * area;
  return r;
}

}  // namespace npchem::testing
