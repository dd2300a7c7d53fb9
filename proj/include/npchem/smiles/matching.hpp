// Copyright 2026 The npchem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <numeric>
#include <queue>
#include <vector>

namespace npchem {

/// Maximum cardinality matching on a general (non-bipartite) graph using
/// Edmonds' blossom algorithm. Aromatic ring systems contain odd cycles, so
/// a bipartite augmenting-path search is not enough.
class BlossomMatching {
 public:
  explicit BlossomMatching(int n)
      : n_(n),
        adj_(static_cast<std::size_t>(n)),
        match_(static_cast<std::size_t>(n), -1),
        parent_(static_cast<std::size_t>(n)),
        base_(static_cast<std::size_t>(n)),
        used_(static_cast<std::size_t>(n)),
        blossom_(static_cast<std::size_t>(n)) {}

  void add_edge(int u, int v) {
    adj_[idx(u)].push_back(v);
    adj_[idx(v)].push_back(u);
  }

  /// Runs the search; returns the number of matched pairs. Vertices are
  /// tried in index order and neighbours in insertion order, so the result
  /// is deterministic.
  int solve() {
    int size = 0;
    for (int v = 0; v < n_; ++v) {
      if (match_[idx(v)] != -1) continue;
      const int end = find_path(v);
      if (end == -1) continue;
      ++size;
      int u = end;
      while (u != -1) {
        const int pv = parent_[idx(u)];
        const int next = match_[idx(pv)];
        match_[idx(u)] = pv;
        match_[idx(pv)] = u;
        u = next;
      }
    }
    return size;
  }

  int mate(int v) const { return match_[idx(v)]; }

 private:
  static std::size_t idx(int v) { return static_cast<std::size_t>(v); }

  int lca(int a, int b) {
    std::vector<bool> seen(static_cast<std::size_t>(n_), false);
    while (true) {
      a = base_[idx(a)];
      seen[idx(a)] = true;
      if (match_[idx(a)] == -1) break;
      a = parent_[idx(match_[idx(a)])];
    }
    while (true) {
      b = base_[idx(b)];
      if (seen[idx(b)]) return b;
      b = parent_[idx(match_[idx(b)])];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base_[idx(v)] != b) {
      blossom_[idx(base_[idx(v)])] = true;
      blossom_[idx(base_[idx(match_[idx(v)])])] = true;
      parent_[idx(v)] = child;
      child = match_[idx(v)];
      v = parent_[idx(match_[idx(v)])];
    }
  }

  int find_path(int root) {
    std::fill(used_.begin(), used_.end(), false);
    std::fill(parent_.begin(), parent_.end(), -1);
    std::iota(base_.begin(), base_.end(), 0);
    used_[idx(root)] = true;
    std::queue<int> queue;
    queue.push(root);
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop();
      for (int to : adj_[idx(v)]) {
        if (base_[idx(v)] == base_[idx(to)] || match_[idx(v)] == to) continue;
        if (to == root ||
            (match_[idx(to)] != -1 && parent_[idx(match_[idx(to)])] != -1)) {
          const int cur = lca(v, to);
          std::fill(blossom_.begin(), blossom_.end(), false);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (int i = 0; i < n_; ++i) {
            if (blossom_[idx(base_[idx(i)])]) {
              base_[idx(i)] = cur;
              if (!used_[idx(i)]) {
                used_[idx(i)] = true;
                queue.push(i);
              }
            }
          }
        } else if (parent_[idx(to)] == -1) {
          parent_[idx(to)] = v;
          if (match_[idx(to)] == -1) return to;
          used_[idx(match_[idx(to)])] = true;
          queue.push(match_[idx(to)]);
        }
      }
    }
    return -1;
  }

  int n_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> match_;
  std::vector<int> parent_;
  std::vector<int> base_;
  std::vector<bool> used_;
  std::vector<bool> blossom_;
};

}  // namespace npchem
