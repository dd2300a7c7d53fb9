// Copyright 2026 The npchem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Random molecule generator for property tests. Graphs are assembled from
// aliphatic atoms and aromatic ring templates with valence bookkeeping done
// here, then written to SMILES by a small writer that picks a random root,
// random neighbour order, random ring digits and optional explicit bonds.
// Nothing here calls into the library.

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace npchem::testing {

struct GenAtom {
  std::string symbol;  // element symbol, capitalised
  bool aromatic = false;
  int free = 0;        // remaining bond capacity
  std::string decorated;  // bracket text when not written plainly
};

struct GenBond {
  int a;
  int b;
  int order;  // 1, 2, 3 or 4 (aromatic)
};

struct GenMolecule {
  std::vector<GenAtom> atoms;
  std::vector<GenBond> bonds;

  bool bonded(int a, int b) const {
    for (const auto& e : bonds) {
      if ((e.a == a && e.b == b) || (e.a == b && e.b == a)) return true;
    }
    return false;
  }
  int degree(int a) const {
    int d = 0;
    for (const auto& e : bonds) d += (e.a == a || e.b == a);
    return d;
  }
};

inline int capacity(const std::string& symbol) {
  if (symbol == "C") return 4;
  if (symbol == "N") return 3;
  if (symbol == "O" || symbol == "S") return 2;
  return 1;
}

struct RingTemplate {
  std::vector<std::string> atoms;  // "c", "n", "[nH]", "o", "s"
  std::vector<std::pair<int, int>> extra;  // fusion bonds beyond the cycle
};

inline void add_ring(GenMolecule& m, const std::vector<std::string>& ring,
                     const std::vector<std::pair<int, int>>& extra) {
  const int base = static_cast<int>(m.atoms.size());
  for (const auto& t : ring) {
    GenAtom a;
    a.aromatic = true;
    if (t == "[nH]") {
      a.symbol = "N";
      a.decorated = "[nH]";
    } else {
      a.symbol = std::string(1, static_cast<char>(t[0] - 'a' + 'A'));
    }
    a.free = t == "c" ? 1 : 0;
    m.atoms.push_back(a);
  }
  const int n = static_cast<int>(ring.size());
  for (int i = 0; i < n; ++i) {
    m.bonds.push_back({base + i, base + (i + 1) % n, 4});
  }
  for (const auto& [x, y] : extra) {
    m.bonds.push_back({base + x, base + y, 4});
    m.atoms[static_cast<std::size_t>(base + x)].free = 0;
    m.atoms[static_cast<std::size_t>(base + y)].free = 0;
  }
}

template <typename Rng>
void add_piece(GenMolecule& m, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = u(rng);
  if (r < 0.75) {
    static const char* kSymbols[] = {"C", "C", "C", "C", "C", "C", "C", "N",
                                     "N", "O", "O", "S", "F", "Cl", "Br"};
    std::uniform_int_distribution<int> pick(0, 14);
    GenAtom a;
    a.symbol = kSymbols[pick(rng)];
    a.free = capacity(a.symbol);
    m.atoms.push_back(a);
    return;
  }
  static const std::vector<std::vector<std::string>> kRings = {
      {"c", "c", "c", "c", "c", "c"},
      {"c", "c", "c", "c", "c", "n"},
      {"c", "c", "c", "c", "[nH]"},
      {"c", "c", "c", "c", "o"},
      {"c", "c", "c", "c", "s"},
      {"c", "n", "c", "n", "c", "c"},
  };
  std::uniform_int_distribution<int> pick(0, static_cast<int>(kRings.size()));
  const int k = pick(rng);
  if (k == static_cast<int>(kRings.size())) {
    // naphthalene: 10-cycle plus the fusion bond 0-5
    add_ring(m, std::vector<std::string>(10, "c"), {{0, 5}});
  } else {
    add_ring(m, kRings[static_cast<std::size_t>(k)], {});
  }
}

/// Random connected molecule with 1..max_pieces pieces.
template <typename Rng>
GenMolecule random_molecule(Rng& rng, int max_pieces = 8) {
  std::uniform_int_distribution<int> pieces(1, max_pieces);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  GenMolecule m;
  add_piece(m, rng);
  const int target = pieces(rng);
  for (int p = 1; p < target; ++p) {
    std::vector<int> anchors;
    for (int i = 0; i < static_cast<int>(m.atoms.size()); ++i) {
      if (m.atoms[static_cast<std::size_t>(i)].free > 0) anchors.push_back(i);
    }
    if (anchors.empty()) break;
    const int before = static_cast<int>(m.atoms.size());
    add_piece(m, rng);
    std::vector<int> fresh;
    for (int i = before; i < static_cast<int>(m.atoms.size()); ++i) {
      if (m.atoms[static_cast<std::size_t>(i)].free > 0) fresh.push_back(i);
    }
    if (fresh.empty()) {
      m.atoms.resize(static_cast<std::size_t>(before));
      std::erase_if(m.bonds, [&](const GenBond& e) {
        return e.a >= before || e.b >= before;
      });
      continue;
    }
    const int x = anchors[std::uniform_int_distribution<std::size_t>(
        0, anchors.size() - 1)(rng)];
    const int y = fresh[std::uniform_int_distribution<std::size_t>(
        0, fresh.size() - 1)(rng)];
    m.bonds.push_back({x, y, 1});
    --m.atoms[static_cast<std::size_t>(x)].free;
    --m.atoms[static_cast<std::size_t>(y)].free;
  }
  const int n = static_cast<int>(m.atoms.size());
  // Extra aliphatic ring bonds.
  for (int attempt = 0; attempt < 3 && n >= 3; ++attempt) {
    if (u(rng) > 0.35) continue;
    std::uniform_int_distribution<int> pick(0, n - 1);
    const int x = pick(rng);
    const int y = pick(rng);
    auto& ax = m.atoms[static_cast<std::size_t>(x)];
    auto& ay = m.atoms[static_cast<std::size_t>(y)];
    if (x == y || ax.aromatic || ay.aromatic || ax.free < 1 || ay.free < 1 ||
        m.bonded(x, y)) {
      continue;
    }
    m.bonds.push_back({x, y, 1});
    --ax.free;
    --ay.free;
  }
  // Upgrade some aliphatic single bonds.
  for (auto& e : m.bonds) {
    if (e.order != 1) continue;
    auto& a = m.atoms[static_cast<std::size_t>(e.a)];
    auto& b = m.atoms[static_cast<std::size_t>(e.b)];
    if (a.aromatic || b.aromatic) continue;
    const double r = u(rng);
    if (r < 0.05 && a.free >= 2 && b.free >= 2) {
      e.order = 3;
      a.free -= 2;
      b.free -= 2;
    } else if (r < 0.2 && a.free >= 1 && b.free >= 1) {
      e.order = 2;
      --a.free;
      --b.free;
    }
  }
  // Bracket decorations.
  for (int i = 0; i < n; ++i) {
    auto& a = m.atoms[static_cast<std::size_t>(i)];
    if (a.aromatic) continue;
    bool all_single = true;
    for (const auto& e : m.bonds) {
      if ((e.a == i || e.b == i) && e.order != 1) all_single = false;
    }
    if (!all_single) continue;
    const int d = m.degree(i);
    const double r = u(rng);
    const char* chiral = u(rng) < 0.5 ? "@" : "@@";
    if (a.symbol == "C" && d == 3 && r < 0.2) {
      a.decorated = std::string("[C") + chiral + "H]";
    } else if (a.symbol == "C" && d == 4 && r < 0.2) {
      a.decorated = std::string("[C") + chiral + "]";
    } else if (a.symbol == "C" && d == 1 && r < 0.05) {
      a.decorated = "[13CH3]";
    } else if (a.symbol == "O" && d == 1 && r < 0.1) {
      a.decorated = "[O-]";
    } else if (a.symbol == "N" && d == 1 && r < 0.1) {
      a.decorated = "[NH3+]";
    }
  }
  return m;
}

/// Depth-first SMILES writer with randomised choices.
template <typename Rng>
std::string write_random(const GenMolecule& m, Rng& rng) {
  const int n = static_cast<int>(m.atoms.size());
  if (n == 0) return {};
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<std::pair<int, int>>> adj(
      static_cast<std::size_t>(n));  // (neighbour, bond)
  for (int k = 0; k < static_cast<int>(m.bonds.size()); ++k) {
    const auto& e = m.bonds[static_cast<std::size_t>(k)];
    adj[static_cast<std::size_t>(e.a)].push_back({e.b, k});
    adj[static_cast<std::size_t>(e.b)].push_back({e.a, k});
  }
  for (auto& list : adj) std::shuffle(list.begin(), list.end(), rng);

  std::vector<int> order(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> children(static_cast<std::size_t>(n));
  std::vector<std::vector<int>> opens(static_cast<std::size_t>(n));
  std::vector<std::vector<int>> closes(static_cast<std::size_t>(n));
  std::vector<int> parent_bond(static_cast<std::size_t>(n), -1);
  std::vector<bool> tree(m.bonds.size(), false);
  std::vector<bool> ring(m.bonds.size(), false);
  int counter = 0;
  std::vector<int> roots;
  std::vector<int> starts(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) starts[static_cast<std::size_t>(i)] = i;
  std::shuffle(starts.begin(), starts.end(), rng);

  auto dfs = [&](auto&& self, int v) -> void {
    order[static_cast<std::size_t>(v)] = counter++;
    for (const auto& [w, k] : adj[static_cast<std::size_t>(v)]) {
      if (k == parent_bond[static_cast<std::size_t>(v)]) continue;
      if (order[static_cast<std::size_t>(w)] == -1) {
        tree[static_cast<std::size_t>(k)] = true;
        parent_bond[static_cast<std::size_t>(w)] = k;
        children[static_cast<std::size_t>(v)].push_back(k);
        self(self, w);
      } else if (!tree[static_cast<std::size_t>(k)] &&
                 !ring[static_cast<std::size_t>(k)]) {
        ring[static_cast<std::size_t>(k)] = true;
        // w was visited first: it opens, v closes.
        opens[static_cast<std::size_t>(w)].push_back(k);
        closes[static_cast<std::size_t>(v)].push_back(k);
      }
    }
  };
  for (int s : starts) {
    if (order[static_cast<std::size_t>(s)] == -1) {
      roots.push_back(s);
      dfs(dfs, s);
    }
  }

  auto other = [&](int k, int v) {
    const auto& e = m.bonds[static_cast<std::size_t>(k)];
    return e.a == v ? e.b : e.a;
  };
  auto bond_text = [&](int k) -> std::string {
    const auto& e = m.bonds[static_cast<std::size_t>(k)];
    const bool both = m.atoms[static_cast<std::size_t>(e.a)].aromatic &&
                      m.atoms[static_cast<std::size_t>(e.b)].aromatic;
    switch (e.order) {
      case 2: return "=";
      case 3: return "#";
      case 4: return u(rng) < 0.1 ? ":" : "";
      default:
        if (both) return "-";
        return u(rng) < 0.1 ? "-" : "";
    }
  };
  auto atom_text = [&](int v) {
    const auto& a = m.atoms[static_cast<std::size_t>(v)];
    if (!a.decorated.empty()) return a.decorated;
    if (!a.aromatic) return a.symbol;
    std::string s = a.symbol;
    s[0] = static_cast<char>(s[0] - 'A' + 'a');
    return s;
  };

  std::set<int> in_use;
  std::vector<int> digit(m.bonds.size(), 0);
  auto label = [](int d) {
    return d < 10 ? std::to_string(d) : "%" + std::to_string(d);
  };
  auto allocate = [&]() {
    int d = 1;
    if (u(rng) < 0.1) d = std::uniform_int_distribution<int>(2, 14)(rng);
    while (in_use.contains(d)) ++d;
    in_use.insert(d);
    return d;
  };

  std::string out;
  auto emit = [&](auto&& self, int v) -> void {
    out += atom_text(v);
    std::vector<int> released;
    for (int k : closes[static_cast<std::size_t>(v)]) {
      out += label(digit[static_cast<std::size_t>(k)]);
      released.push_back(digit[static_cast<std::size_t>(k)]);
    }
    for (int k : opens[static_cast<std::size_t>(v)]) {
      digit[static_cast<std::size_t>(k)] = allocate();
      out += bond_text(k);
      out += label(digit[static_cast<std::size_t>(k)]);
    }
    for (int d : released) in_use.erase(d);
    const auto& kids = children[static_cast<std::size_t>(v)];
    for (std::size_t c = 0; c < kids.size(); ++c) {
      const bool branch = c + 1 < kids.size();
      if (branch) out += '(';
      out += bond_text(kids[c]);
      self(self, other(kids[c], v));
      if (branch) out += ')';
    }
  };
  for (std::size_t r = 0; r < roots.size(); ++r) {
    if (r > 0) out += '.';
    emit(emit, roots[r]);
  }
  return out;
}

/// A random valid SMILES string; occasionally two components joined by '.'.
template <typename Rng>
std::string random_smiles(Rng& rng, int max_pieces = 8,
                          bool allow_dot = false) {
  GenMolecule m = random_molecule(rng, max_pieces);
  std::string s = write_random(m, rng);
  if (allow_dot && std::uniform_real_distribution<double>(0, 1)(rng) < 0.2) {
    GenMolecule extra = random_molecule(rng, 2);
    s += "." + write_random(extra, rng);
  }
  return s;
}

// Aromatic ring systems of at most ten ring atoms, for the kekulization
// oracle. Each atom is one of c, n, [nH], o, s.
struct RingSystem {
  std::string smiles;
  std::vector<std::string> atoms;
  std::vector<std::pair<int, int>> bonds;
};

template <typename Rng>
RingSystem random_ring_system(Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto kind = [&](bool fusion) -> std::string {
    const double r = u(rng);
    if (fusion) return r < 0.8 ? "c" : "n";
    if (r < 0.6) return "c";
    if (r < 0.8) return "n";
    if (r < 0.9) return "[nH]";
    return r < 0.95 ? "o" : "s";
  };
  RingSystem sys;
  if (u(rng) < 0.5) {
    const int size = std::uniform_int_distribution<int>(3, 10)(rng);
    for (int i = 0; i < size; ++i) sys.atoms.push_back(kind(false));
    for (int i = 0; i < size; ++i) sys.bonds.push_back({i, (i + 1) % size});
  } else {
    // Two rings sharing the bond (0, k): a cycle of `total` atoms plus the
    // chord 0-k.
    const int total = std::uniform_int_distribution<int>(6, 10)(rng);
    const int k = std::uniform_int_distribution<int>(2, total - 2)(rng);
    for (int i = 0; i < total; ++i) {
      sys.atoms.push_back(kind(i == 0 || i == k));
    }
    for (int i = 0; i < total; ++i) sys.bonds.push_back({i, (i + 1) % total});
    sys.bonds.push_back({0, k});
  }
  GenMolecule m;
  for (const auto& t : sys.atoms) {
    GenAtom a;
    a.aromatic = true;
    if (t == "[nH]") {
      a.symbol = "N";
      a.decorated = t;
    } else {
      a.symbol = std::string(1, static_cast<char>(t[0] - 'a' + 'A'));
    }
    m.atoms.push_back(a);
  }
  for (const auto& [x, y] : sys.bonds) m.bonds.push_back({x, y, 4});
  sys.smiles = write_random(m, rng);
  return sys;
}

}  // namespace npchem::testing
