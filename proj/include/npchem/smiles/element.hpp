// Copyright 2026 The npchem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace npchem {

namespace detail {

inline constexpr std::array<std::string_view, 119> kElementSymbols = {
    "*",  "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na",
    "Mg", "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",
    "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br",
    "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag",
    "Cd", "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr",
    "Nd", "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu",
    "Hf", "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi",
    "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am",
    "Cm", "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh",
    "Hs", "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og"};

}  // namespace detail

/// Atomic number of a capitalised element symbol ("C", "Cl"), or nullopt.
inline std::optional<int> atomic_number(std::string_view symbol) {
  for (std::size_t z = 1; z < detail::kElementSymbols.size(); ++z) {
    if (detail::kElementSymbols[z] == symbol) return static_cast<int>(z);
  }
  return std::nullopt;
}

inline std::string_view element_symbol(int z) {
  if (z <= 0 || z >= static_cast<int>(detail::kElementSymbols.size())) {
    return "*";
  }
  return detail::kElementSymbols[static_cast<std::size_t>(z)];
}

// Elements that may be written without brackets.
inline bool is_organic_subset(int z) {
  switch (z) {
    case 5: case 6: case 7: case 8: case 9: case 15: case 16: case 17:
    case 35: case 53:
      return true;
    default:
      return false;
  }
}

// B, C, N, O, P, S, Se, As.
inline bool is_aromatic_eligible(int z) {
  switch (z) {
    case 5: case 6: case 7: case 8: case 15: case 16: case 33: case 34:
      return true;
    default:
      return false;
  }
}

// Aromatic symbols allowed outside brackets.
inline bool is_aromatic_organic(int z) {
  switch (z) {
    case 5: case 6: case 7: case 8: case 15: case 16:
      return true;
    default:
      return false;
  }
}

}  // namespace npchem
