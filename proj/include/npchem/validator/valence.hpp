// Copyright 2026 The npchem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

namespace npchem {

// Allowed valences per element. Neutral lists follow the common organic
// defaults; charged atoms use the list of the isoelectronic neighbour
// (N+ behaves like C, O- like F, ...). Elements outside the table are not
// checked.
class ValenceTable {
 public:
  ValenceTable() {
    set(1, {1});
    set(5, {3});
    set(6, {4});
    set(7, {3, 5});
    set(8, {2});
    set(9, {1});
    set(14, {4});
    set(15, {3, 5});
    set(16, {2, 4, 6});
    set(17, {1});
    set(33, {3, 5});
    set(34, {2, 4, 6});
    set(35, {1});
    set(52, {2, 4, 6});
    set(53, {1});
  }

  bool checked(int z) const {
    return z > 0 && z < static_cast<int>(neutral_.size()) &&
           !neutral_[static_cast<std::size_t>(z)].empty();
  }

  /// Allowed total valences (bond orders + hydrogens) for `z` carrying
  /// `charge`, or nullopt when the combination is not checked.
  std::optional<std::span<const int>> allowed(int z, int charge) const {
    if (!checked(z)) return std::nullopt;
    if (z == 1 && charge != 0) return std::span<const int>(kZero);
    const int shifted = z - charge;
    if (!checked(shifted)) return std::nullopt;
    return std::span<const int>(neutral_[static_cast<std::size_t>(shifted)]);
  }

  std::optional<int> max_valence(int z, int charge) const {
    auto list = allowed(z, charge);
    if (!list) return std::nullopt;
    return list->back();
  }

  /// Hydrogens an unbracketed atom receives given its bond-order sum:
  /// raise to the smallest allowed valence. nullopt if the sum already
  /// exceeds every allowed valence.
  std::optional<int> implicit_hydrogens(int z, int bond_order_sum) const {
    auto list = allowed(z, 0);
    if (!list) return 0;
    for (int v : *list) {
      if (v >= bond_order_sum) return v - bond_order_sum;
    }
    return std::nullopt;
  }

  bool is_allowed(int z, int charge, int valence) const {
    auto list = allowed(z, charge);
    if (!list) return true;
    return std::find(list->begin(), list->end(), valence) != list->end();
  }

 private:
  void set(int z, std::vector<int> valences) {
    if (static_cast<int>(neutral_.size()) <= z) {
      neutral_.resize(static_cast<std::size_t>(z) + 1);
    }
    neutral_[static_cast<std::size_t>(z)] = std::move(valences);
  }

  static constexpr int kZero[1] = {0};
  std::vector<std::vector<int>> neutral_;
};

inline const ValenceTable& default_valence_table() {
  static const ValenceTable table;
  return table;
}

}  // namespace npchem
