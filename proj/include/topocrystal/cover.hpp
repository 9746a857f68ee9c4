#pragma once

#include <map>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "topocrystal/chain.hpp"
#include "topocrystal/cycle_space.hpp"
#include "topocrystal/graph.hpp"

namespace topocrystal {

// A point of the maximal abelian cover: the class of all based paths sharing
// this chain.  The chain determines the endpoint (its boundary is
// vertex - basepoint), so equality compares chains only; vertex is cached.
struct Atom {
  Chain1 chain;
  int vertex = basepoint;

  bool operator==(const Atom& o) const { return chain == o.chain; }
  bool operator!=(const Atom& o) const { return chain != o.chain; }
  bool operator<(const Atom& o) const { return chain < o.chain; }
};

inline Atom base_atom(const Graph&) { return Atom{Chain1{}, basepoint}; }

inline int atom_vertex(const Atom& a) { return a.vertex; }

// One neighbor per directed edge leaving the atom's vertex; a self-loop
// contributes both orientations.
inline std::vector<std::pair<DirectedEdge, Atom>> neighbors(const Graph& g, const Atom& a) {
  std::vector<std::pair<DirectedEdge, Atom>> out;
  for (const auto& e : g.out_edges(a.vertex)) {
    Atom b{a.chain, g.target(e)};
    b.chain.add_edge(e);
    out.push_back({e, std::move(b)});
  }
  return out;
}

// Deck translation by an integral cycle.
inline Atom translate_atom(const Graph& g, const Atom& a, const Chain1& z) {
  if (!is_cycle(g, z)) throw std::invalid_argument("translate_atom: chain is not a cycle");
  return Atom{a.chain + z, a.vertex};
}

// One undirected bond instance inside a fragment, stored with the +1
// orientation of its pair (from holds the atom at the pair's source).
struct Bond {
  int from = 0;
  int to = 0;
  int pair = 0;
};

struct CrystalFragment {
  const Graph* graph = nullptr;
  const CycleBasis* basis = nullptr;
  int radius = 0;
  std::vector<Atom> atoms;      // BFS discovery order, atom 0 is the base
  std::vector<int> depth;       // bond-steps from the base atom
  std::vector<Bond> bonds;      // every bond with both endpoints present
  std::map<Chain1, int> index;  // chain -> atom id

  int find(const Chain1& c) const {
    auto it = index.find(c);
    return it == index.end() ? -1 : it->second;
  }
  bool boundary_atom(int id) const { return depth[id] == radius; }
};

// Ball of the cover: all atoms within r bond-steps of the base atom.
// Discovery order is deterministic: BFS layer by layer, parents in id order,
// edges by (pair, +orientation first).  Bonds are collected in a second pass
// so bonds between two radius-r atoms are present too.
inline CrystalFragment ball(const Graph& g, const CycleBasis& basis, int r) {
  if (r < 0) throw std::invalid_argument("ball: negative radius");
  if (g.vertex_count() == 0) throw std::invalid_argument("ball: empty graph");
  CrystalFragment f;
  f.graph = &g;
  f.basis = &basis;
  f.radius = r;
  f.atoms.push_back(base_atom(g));
  f.depth.push_back(0);
  f.index.emplace(f.atoms[0].chain, 0);
  for (std::size_t i = 0; i < f.atoms.size(); ++i) {
    if (f.depth[i] == r) continue;
    const Atom a = f.atoms[i];  // copy: neighbors() may reallocate f.atoms
    for (auto& [e, b] : neighbors(g, a)) {
      if (f.index.count(b.chain)) continue;
      f.atoms.push_back(b);
      f.depth.push_back(f.depth[i] + 1);
      f.index.emplace(f.atoms.back().chain, static_cast<int>(f.atoms.size()) - 1);
    }
  }
  for (int id = 0; id < static_cast<int>(f.atoms.size()); ++id) {
    const Atom& a = f.atoms[id];
    for (const auto& e : g.out_edges(a.vertex)) {
      if (e.sign != +1) continue;  // one orientation representative
      Chain1 c = a.chain;
      c.add_edge(e);
      const int other = f.find(c);
      if (other >= 0) f.bonds.push_back({id, other, e.pair});
    }
  }
  return f;
}

}  // namespace topocrystal
