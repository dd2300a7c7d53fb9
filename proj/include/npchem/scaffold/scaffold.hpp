// Copyright 2026 The npchem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Bemis-Murcko scaffolds and scaffold-grouped splitting.
//
// Pruning repeatedly deletes non-ring atoms of degree <= 1. A terminal atom
// whose only bond is a double bond survives, so carbonyls and other
// exocyclic double bonds stay attached to the atom that carries them
// ("O=C(C)c1ccccc1" keeps "O=Cc1ccccc1").

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "npchem/smiles/canonical.hpp"
#include "npchem/smiles/kekulize.hpp"
#include "npchem/smiles/parser.hpp"
#include "npchem/util/csv.hpp"
#include "npchem/util/parallel.hpp"
#include "npchem/util/random.hpp"

namespace npchem {

struct ScaffoldKey {
  std::string key;  // empty for acyclic molecules

  bool empty() const { return key.empty(); }
  auto operator<=>(const ScaffoldKey&) const = default;
};

namespace detail {

inline bool double_bonded_terminal(const MolecularGraph& g, int v,
                                   const std::vector<char>& alive) {
  int seen = 0;
  bool is_double = false;
  for (const Neighbor& n : g.neighbors(v)) {
    if (!alive[static_cast<std::size_t>(n.atom)]) continue;
    ++seen;
    const Bond& b = g.bond(n.bond);
    is_double = !b.aromatic && b.order == BondOrder::kDouble;
  }
  return seen == 1 && is_double;
}

}  // namespace detail

/// Atom indices (ascending) that survive scaffold pruning; empty when the
/// molecule has no ring.
inline std::vector<int> scaffold_atoms(const MolecularGraph& g) {
  const int n = g.atom_count();
  std::vector<char> alive(static_cast<std::size_t>(n), 1);
  std::vector<int> degree(static_cast<std::size_t>(n));
  std::vector<int> queue;
  for (int v = 0; v < n; ++v) {
    degree[static_cast<std::size_t>(v)] = g.degree(v);
    if (!g.atom(v).in_ring && g.degree(v) <= 1) queue.push_back(v);
  }
  while (!queue.empty()) {
    const int v = queue.back();
    queue.pop_back();
    auto idx = static_cast<std::size_t>(v);
    if (!alive[idx] || degree[idx] > 1) continue;
    if (detail::double_bonded_terminal(g, v, alive)) continue;
    alive[idx] = 0;
    for (const Neighbor& nb : g.neighbors(v)) {
      const auto w = static_cast<std::size_t>(nb.atom);
      if (!alive[w]) continue;
      --degree[w];
      if (!g.atom(nb.atom).in_ring && degree[w] <= 1) queue.push_back(nb.atom);
    }
  }
  // Components without a ring atom (double-bonded pairs such as C=C in a
  // salt fragment) are not part of any scaffold.
  std::vector<int> kept;
  std::vector<char> visited(static_cast<std::size_t>(n), 0);
  for (int start = 0; start < n; ++start) {
    if (!alive[static_cast<std::size_t>(start)] ||
        visited[static_cast<std::size_t>(start)]) {
      continue;
    }
    std::vector<int> component{start};
    visited[static_cast<std::size_t>(start)] = 1;
    bool ring = false;
    for (std::size_t i = 0; i < component.size(); ++i) {
      ring = ring || g.atom(component[i]).in_ring;
      for (const Neighbor& nb : g.neighbors(component[i])) {
        const auto w = static_cast<std::size_t>(nb.atom);
        if (alive[w] && !visited[w]) {
          visited[w] = 1;
          component.push_back(nb.atom);
        }
      }
    }
    if (ring) kept.insert(kept.end(), component.begin(), component.end());
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

/// The scaffold as a graph: pruned, chirality removed and hydrogen counts
/// raised to replace the deleted bonds.
inline MolecularGraph scaffold_graph(const MolecularGraph& g) {
  const std::vector<int> keep = scaffold_atoms(g);
  std::vector<char> kept(static_cast<std::size_t>(g.atom_count()), 0);
  for (int v : keep) kept[static_cast<std::size_t>(v)] = 1;
  std::vector<Atom> atoms;
  for (int v : keep) {
    Atom a = g.atom(v);
    for (const Neighbor& nb : g.neighbors(v)) {
      if (!kept[static_cast<std::size_t>(nb.atom)]) {
        a.hydrogens += valence_contribution(g.bond(nb.bond).order);
      }
    }
    a.chirality = Chirality::kNone;
    if (a.explicit_h_count) a.explicit_h_count = a.hydrogens;
    atoms.push_back(a);
  }
  const MolecularGraph sub = g.subgraph(keep);
  return MolecularGraph(std::move(atoms), sub.bonds(), {}, g.kekulized());
}

/// Canonical key of the scaffold. The scaffold text is re-parsed before
/// keying so the key equals that of the scaffold written as a molecule.
/// Kekulization failures propagate as SmilesError.
inline ScaffoldKey murcko_scaffold(const MolecularGraph& g) {
  const MolecularGraph kekule = g.kekulized() ? g : kekulize(g);
  const MolecularGraph scaffold = scaffold_graph(kekule);
  if (scaffold.empty()) return {};
  const std::string text = canonical_smiles(scaffold);
  return {canonical_key(parse_smiles(text)).key};
}

inline ScaffoldKey murcko_scaffold(std::string_view smiles) {
  return murcko_scaffold(parse_smiles(smiles));
}

inline std::vector<ScaffoldKey> scaffold_keys(
    const std::vector<std::string>& mols, unsigned jobs = 1) {
  return parallel_map(
      mols, [](const std::string& s) { return murcko_scaffold(s); }, jobs);
}

// ---------------------------------------------------------------------------
// Splitting

enum class Partition { kTrain, kValid, kTest };

inline std::string_view to_string(Partition p) {
  switch (p) {
    case Partition::kTrain: return "train";
    case Partition::kValid: return "valid";
    case Partition::kTest: return "test";
  }
  return "";
}

struct SplitFractions {
  double train = 0.8;
  double valid = 0.1;
  double test = 0.1;

  double operator[](Partition p) const {
    return p == Partition::kTrain ? train : p == Partition::kValid ? valid : test;
  }
};

inline void check_fractions(const SplitFractions& f) {
  if (!(f.train > 0 && f.valid > 0 && f.test > 0) ||
      std::abs(f.train + f.valid + f.test - 1.0) > 1e-9) {
    throw std::invalid_argument("split fractions must be positive and sum to 1");
  }
}

struct SplitPlan {
  std::vector<Partition> assignment;  // per molecule
  std::vector<ScaffoldKey> keys;      // empty for random splits
  SplitFractions fractions;
  std::uint64_t seed = 0;

  std::size_t count(Partition p) const {
    return static_cast<std::size_t>(
        std::count(assignment.begin(), assignment.end(), p));
  }
};

inline constexpr const char* kScaffoldOverflowRule =
    "groups by descending size (ties by key); a group joins the first of "
    "train, valid, test with room for it, otherwise the partition furthest "
    "below its target";

/// Group-atomic split over precomputed scaffold keys. Each distinct key,
/// the empty one included, forms one group.
inline SplitPlan scaffold_split_keys(std::vector<ScaffoldKey> keys,
                                     SplitFractions fractions = {},
                                     std::uint64_t seed = 0) {
  check_fractions(fractions);
  std::map<ScaffoldKey, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < keys.size(); ++i) groups[keys[i]].push_back(i);
  std::vector<const std::pair<const ScaffoldKey, std::vector<std::size_t>>*> order;
  for (const auto& entry : groups) order.push_back(&entry);
  std::stable_sort(order.begin(), order.end(), [](auto* a, auto* b) {
    return a->second.size() > b->second.size();
  });

  SplitPlan plan;
  plan.assignment.assign(keys.size(), Partition::kTrain);
  plan.fractions = fractions;
  plan.seed = seed;
  const double n = static_cast<double>(keys.size());
  constexpr Partition kOrder[] = {Partition::kTrain, Partition::kValid,
                                  Partition::kTest};
  double filled[3] = {0, 0, 0};
  for (const auto* group : order) {
    const double size = static_cast<double>(group->second.size());
    int chosen = -1;
    for (int p = 0; p < 3 && chosen < 0; ++p) {
      if (filled[p] + size <= fractions[kOrder[p]] * n + 1e-9) chosen = p;
    }
    if (chosen < 0) {
      double best = -1e300;
      for (int p = 0; p < 3; ++p) {
        const double deficit = fractions[kOrder[p]] * n - filled[p];
        if (deficit > best) {
          best = deficit;
          chosen = p;
        }
      }
    }
    filled[chosen] += size;
    for (std::size_t i : group->second) plan.assignment[i] = kOrder[chosen];
  }
  plan.keys = std::move(keys);
  return plan;
}

/// Scaffold split of SMILES strings. Throws SmilesError (with the record
/// index in the detail) for molecules that do not parse or kekulize.
inline SplitPlan scaffold_split(const std::vector<std::string>& mols,
                                SplitFractions fractions = {},
                                std::uint64_t seed = 0, unsigned jobs = 1) {
  check_fractions(fractions);
  return scaffold_split_keys(scaffold_keys(mols, jobs), fractions, seed);
}

/// Seeded shuffle, then contiguous blocks of round(f * n) molecules.
inline SplitPlan random_split(std::size_t n, SplitFractions fractions = {},
                              std::uint64_t seed = 0) {
  check_fractions(fractions);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  SplitMix64 rng(derive_seed(seed, "random-split"));
  fisher_yates(order, rng);
  const auto n_train = static_cast<std::size_t>(
      std::llround(fractions.train * static_cast<double>(n)));
  const auto n_valid = std::min(
      n - std::min(n, n_train),
      static_cast<std::size_t>(std::llround(fractions.valid * static_cast<double>(n))));
  SplitPlan plan;
  plan.assignment.assign(n, Partition::kTest);
  plan.fractions = fractions;
  plan.seed = seed;
  for (std::size_t i = 0; i < n; ++i) {
    if (i < n_train) {
      plan.assignment[order[i]] = Partition::kTrain;
    } else if (i < n_train + n_valid) {
      plan.assignment[order[i]] = Partition::kValid;
    }
  }
  return plan;
}

/// "smiles,scaffold_key,partition" with a leading '#' comment line.
inline std::string split_plan_csv(const std::vector<std::string>& mols,
                                  const SplitPlan& plan, std::string_view mode) {
  std::string out = "# mode=" + std::string(mode) + " seed=" +
                    std::to_string(plan.seed) + " fractions=" +
                    fixed_text(plan.fractions.train, 4) + "," +
                    fixed_text(plan.fractions.valid, 4) + "," +
                    fixed_text(plan.fractions.test, 4);
  if (mode == "scaffold") out += std::string("; ") + kScaffoldOverflowRule;
  out += "\nsmiles,scaffold_key,partition\n";
  for (std::size_t i = 0; i < mols.size(); ++i) {
    out += csv_field(mols[i]);
    out += ',';
    if (i < plan.keys.size()) out += csv_field(plan.keys[i].key);
    out += ',';
    out += to_string(plan.assignment[i]);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Scaffold-set statistics

template <typename Set>
double scaffold_set_jaccard(const Set& a, const Set& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t shared = 0;
  for (const auto& x : a) shared += b.count(x);
  return static_cast<double>(shared) /
         static_cast<double>(a.size() + b.size() - shared);
}

struct ZipfFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<std::pair<std::size_t, double>> table;  // (rank, frequency)
};

/// Least-squares line through (log rank, log frequency) after sorting the
/// frequencies in descending order. r^2 is 1 when all frequencies are
/// equal. Throws std::invalid_argument for fewer than two frequencies or a
/// non-positive one.
inline ZipfFit zipf_fit(std::vector<double> frequencies) {
  if (frequencies.size() < 2) {
    throw std::invalid_argument("zipf fit needs at least 2 distinct items");
  }
  std::sort(frequencies.begin(), frequencies.end(), std::greater<>());
  if (!(frequencies.back() > 0)) {
    throw std::invalid_argument("zipf fit needs positive frequencies");
  }
  ZipfFit fit;
  const double n = static_cast<double>(frequencies.size());
  double sx = 0, sy = 0;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < frequencies.size(); ++i) {
    fit.table.emplace_back(i + 1, frequencies[i]);
    xs.push_back(std::log(static_cast<double>(i + 1)));
    ys.push_back(std::log(frequencies[i]));
    sx += xs.back();
    sy += ys.back();
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

/// Count occurrences of each item and fit their rank-frequency curve.
template <typename Item>
ZipfFit zipf_fit_items(const std::vector<Item>& items) {
  std::map<Item, std::size_t> counts;
  for (const auto& x : items) ++counts[x];
  std::vector<double> freq;
  for (const auto& [item, count] : counts) freq.push_back(static_cast<double>(count));
  return zipf_fit(std::move(freq));
}

inline std::string zipf_table_csv(const ZipfFit& fit) {
  std::string out = "rank,frequency\n";
  for (const auto& [rank, freq] : fit.table) {
    out += std::to_string(rank) + "," + fixed_text(freq, 0) + "\n";
  }
  return out;
}

}  // namespace npchem
