// Copyright 2026 The npchem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Canonical keys for deduplication. Atom classes are refined Morgan-style
// (element, isotope, charge, aromaticity, hydrogens, degree, chirality tag,
// then neighbour classes). When refinement leaves ties, every atom of the
// first tied class is individualised in turn and the smallest resulting
// serialization wins, which makes the key independent of input atom order.

#include <algorithm>
#include <compare>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "npchem/smiles/graph.hpp"
#include "npchem/smiles/kekulize.hpp"
#include "npchem/smiles/writer.hpp"

namespace npchem {

struct CanonicalKey {
  std::string key;

  auto operator<=>(const CanonicalKey&) const = default;
};

namespace detail {

// Upper bound on explored individualisation leaves. Only highly symmetric
// cages get near it.
inline constexpr std::size_t kMaxCanonicalLeaves = 4096;

inline int edge_label(const Bond& b) {
  return b.aromatic ? 4 : static_cast<int>(b.order);
}

/// Replace class values by dense ranks of (class, sorted neighbour
/// signature) until the number of classes stops growing.
inline int refine(const MolecularGraph& g, std::vector<int>& cls) {
  const auto n = static_cast<std::size_t>(g.atom_count());
  using Signature = std::pair<int, std::vector<std::pair<int, int>>>;
  std::vector<Signature> sig(n);
  int classes = -1;
  while (true) {
    for (std::size_t v = 0; v < n; ++v) {
      sig[v].first = cls[v];
      auto& nb = sig[v].second;
      nb.clear();
      for (const Neighbor& x : g.neighbors(static_cast<int>(v))) {
        nb.emplace_back(edge_label(g.bond(x.bond)),
                        cls[static_cast<std::size_t>(x.atom)]);
      }
      std::sort(nb.begin(), nb.end());
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return sig[a] < sig[b]; });
    int next = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k > 0 && sig[order[k]] != sig[order[k - 1]]) ++next;
      cls[order[k]] = next;
    }
    const int count = n == 0 ? 0 : next + 1;
    if (count == classes) return count;
    classes = count;
  }
}

inline std::vector<int> initial_classes(const MolecularGraph& g) {
  using Invariant = std::tuple<int, int, int, bool, int, int, int>;
  const auto n = static_cast<std::size_t>(g.atom_count());
  std::vector<Invariant> inv(n);
  for (std::size_t v = 0; v < n; ++v) {
    const Atom& a = g.atom(static_cast<int>(v));
    inv[v] = {a.element,      a.isotope.value_or(0),
              a.formal_charge, a.aromatic,
              a.hydrogens,     g.degree(static_cast<int>(v)),
              static_cast<int>(a.chirality)};
  }
  std::vector<Invariant> sorted = inv;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> cls(n);
  for (std::size_t v = 0; v < n; ++v) {
    cls[v] = static_cast<int>(
        std::lower_bound(sorted.begin(), sorted.end(), inv[v]) -
        sorted.begin());
  }
  return cls;
}

// Individualisation-refinement search with orbit pruning. Two leaves that
// serialize identically expose an automorphism (atoms written at the same
// position correspond); children of a node that such automorphisms map
// onto each other lead to identical subtrees and are explored once.
class CanonicalSearch {
 public:
  explicit CanonicalSearch(const MolecularGraph& g) : g_(g) {}

  std::pair<std::string, std::vector<int>> run() {
    std::vector<int> cls = initial_classes(g_);
    std::vector<int> fixed;
    search(std::move(cls), fixed);
    return {std::move(best_), std::move(best_rank_)};
  }

 private:
  void search(std::vector<int> cls, std::vector<int>& fixed) {
    const int classes = refine(g_, cls);
    if (classes == g_.atom_count()) {
      ++leaves_;
      std::vector<int> emitted;
      std::string smiles = write_smiles(g_, cls, &emitted);
      if (best_rank_.empty() || smiles < best_) {
        best_ = std::move(smiles);
        best_rank_ = cls;
        best_emitted_ = std::move(emitted);
      } else if (smiles == best_) {
        std::vector<int> gamma(emitted.size());
        for (std::size_t p = 0; p < emitted.size(); ++p) {
          gamma[static_cast<std::size_t>(best_emitted_[p])] = emitted[p];
        }
        automorphisms_.push_back(std::move(gamma));
      }
      return;
    }
    std::vector<int> size(static_cast<std::size_t>(classes), 0);
    for (int c : cls) ++size[static_cast<std::size_t>(c)];
    int target = 0;
    while (size[static_cast<std::size_t>(target)] < 2) ++target;

    std::vector<int> explored;
    for (int v = 0; v < g_.atom_count(); ++v) {
      if (cls[static_cast<std::size_t>(v)] != target) continue;
      if (leaves_ >= kMaxCanonicalLeaves) return;
      if (equivalent_to_explored(v, explored, fixed)) continue;
      explored.push_back(v);
      std::vector<int> next(cls.size());
      for (std::size_t i = 0; i < cls.size(); ++i) next[i] = 2 * cls[i] + 1;
      next[static_cast<std::size_t>(v)] = 2 * cls[static_cast<std::size_t>(v)];
      fixed.push_back(v);
      search(std::move(next), fixed);
      fixed.pop_back();
    }
  }

  // Orbit test under the discovered automorphisms that fix the current
  // path pointwise.
  bool equivalent_to_explored(int v, const std::vector<int>& explored,
                              const std::vector<int>& fixed) const {
    if (explored.empty() || automorphisms_.empty()) return false;
    const auto n = static_cast<std::size_t>(g_.atom_count());
    std::vector<int> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
    auto find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) {
        parent[static_cast<std::size_t>(x)] =
            parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        x = parent[static_cast<std::size_t>(x)];
      }
      return x;
    };
    for (const auto& gamma : automorphisms_) {
      bool fixes_path = true;
      for (int f : fixed) {
        fixes_path &= gamma[static_cast<std::size_t>(f)] == f;
      }
      if (!fixes_path) continue;
      for (std::size_t i = 0; i < n; ++i) {
        const int a = find(static_cast<int>(i));
        const int b = find(gamma[i]);
        if (a != b) parent[static_cast<std::size_t>(a)] = b;
      }
    }
    const int root = find(v);
    for (int u : explored) {
      if (find(u) == root) return true;
    }
    return false;
  }

  const MolecularGraph& g_;
  std::size_t leaves_ = 0;
  std::string best_;
  std::vector<int> best_rank_;
  std::vector<int> best_emitted_;
  std::vector<std::vector<int>> automorphisms_;
};

}  // namespace detail

/// Canonical atom ranks (0 = first written) for a kekulized or plain graph.
inline std::vector<int> canonical_ranks(const MolecularGraph& g) {
  return detail::CanonicalSearch(g).run().second;
}

/// Canonical SMILES of `g`; aromatic bonds are written in aromatic form so
/// that the choice of Kekule structure never affects the result.
inline std::string canonical_smiles(const MolecularGraph& g) {
  if (g.empty()) return {};
  const MolecularGraph& k = g.kekulized() ? g : kekulize(g);
  return detail::CanonicalSearch(k).run().first;
}

/// Order-invariant key of the molecule. Kekulizes first and propagates
/// kekulization failures.
inline CanonicalKey canonical_key(const MolecularGraph& g) {
  if (g.kekulized()) return CanonicalKey{canonical_smiles(g)};
  return CanonicalKey{canonical_smiles(kekulize(g))};
}

}  // namespace npchem
