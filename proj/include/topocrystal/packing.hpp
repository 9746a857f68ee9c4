#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "topocrystal/cover.hpp"
#include "topocrystal/cycle_space.hpp"
#include "topocrystal/graph.hpp"
#include "topocrystal/numeric.hpp"

namespace topocrystal {

// Number of spanning trees: determinant of the Laplacian with the basepoint
// row and column removed.  Self-loops drop out of the Laplacian.
inline Int spanning_tree_count(const Graph& g) {
  if (!is_connected(g)) throw DisconnectedError("spanning_tree_count: graph is disconnected");
  const int n = g.vertex_count();
  if (n <= 1) return 1;
  LMat lap(n - 1, LVec(n - 1, 0));
  for (const auto& [u, w] : g.edge_pairs()) {
    if (u == w) continue;
    if (u > 0) ++lap[u - 1][u - 1];
    if (w > 0) ++lap[w - 1][w - 1];
    if (u > 0 && w > 0) {
      --lap[u - 1][w - 1];
      --lap[w - 1][u - 1];
    }
  }
  return bareiss_determinant(lap);
}

// det G.  Counts the same trees as spanning_tree_count but through the cycle
// side of the orthogonal decomposition; keeping the two routes separate is
// the point, so do not merge them.
inline Int gram_determinant(const CycleBasis& basis) { return basis.gram_det(); }

// Invariant factors d1 | d2 | ... of an integer matrix, each positive; zero
// diagonal entries (rank deficiency) are dropped.  Row/column reduction with
// a smallest-pivot rule; entries can exceed 64 bits mid-computation.
// Diagonal of the Smith form.  Unchecked entry growth is the classic failure
// mode of the Euclidean reduction, so a caller who knows a positive D with
// D*Z^rows inside the column lattice (for a nonsingular square matrix, |det|
// always works by Cramer) should pass it as `modulus`: adding multiples of D
// to an entry moves a generator by a lattice element, so every entry can be
// kept in (-D/2, D/2] without touching the cokernel.  A diagonal entry that
// ends up 0 mod D then stands for the factor D itself.
inline std::vector<Int> smith_normal_form(IMat a, const Int& modulus = 0) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  auto abs_of = [](const Int& x) { return x < 0 ? Int(-x) : x; };
  auto reduce = [&](Int& x) {
    if (modulus == 0) return;
    x %= modulus;
    if (2 * x > modulus) x -= modulus;
    if (2 * x <= -modulus) x += modulus;
  };
  if (modulus != 0)
    for (auto& row : a)
      for (Int& x : row) reduce(x);
  int t = 0;
  while (t < rows && t < cols) {
    int pi = -1, pj = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (a[i][j] != 0 && (pi < 0 || abs_of(a[i][j]) < abs_of(a[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    std::swap(a[t], a[pi]);
    for (int i = 0; i < rows; ++i) std::swap(a[i][t], a[i][pj]);
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (int i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        const Int q = a[i][t] / a[t][t];
        for (int j = t; j < cols; ++j) {
          a[i][j] -= q * a[t][j];
          reduce(a[i][j]);
        }
        if (a[i][t] != 0) {
          // remainder smaller than the pivot: promote it and go again
          std::swap(a[t], a[i]);
          dirty = true;
        }
      }
      for (int j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        const Int q = a[t][j] / a[t][t];
        for (int i = t; i < rows; ++i) {
          a[i][j] -= q * a[i][t];
          reduce(a[i][j]);
        }
        if (a[t][j] != 0) {
          for (int i = 0; i < rows; ++i) std::swap(a[i][t], a[i][j]);
          dirty = true;
        }
      }
    }
    ++t;
  }
  std::vector<Int> d;
  d.reserve(modulus != 0 ? rows : t);
  for (int i = 0; i < t; ++i) {
    Int e = abs_of(a[i][i]);
    if (modulus != 0) e = boost::multiprecision::gcd(e, modulus);
    d.push_back(std::move(e));
  }
  if (modulus != 0)
    // a block that vanished mod D is D times a unimodular-equivalent block
    for (int i = t; i < rows; ++i) d.push_back(modulus);
  // enforce the divisibility chain: gcd forward, lcm back
  for (int i = 0; i < static_cast<int>(d.size()); ++i)
    for (int j = i + 1; j < static_cast<int>(d.size()); ++j) {
      if (d[j] % d[i] == 0) continue;
      const Int g = boost::multiprecision::gcd(d[i], d[j]);
      d[j] = d[i] / g * d[j];
      d[i] = g;
    }
  return d;
}

inline std::vector<Int> smith_normal_form(const LMat& m, const Int& modulus = 0) {
  IMat a(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) a[i].assign(m[i].begin(), m[i].end());
  return smith_normal_form(std::move(a), modulus);
}

// |L / Z1| where L is the dual lattice of the integral cycle lattice.  In
// dual-basis coordinates Z1 is the column lattice of G, so the order is the
// product of G's invariant factors.
inline Int lattice_quotient_order(const CycleBasis& basis) {
  Int order = 1;
  for (const Int& d : smith_normal_form(basis.gram(), basis.gram_det())) order *= d;
  return order;
}

// Distinct atom positions modulo lattice translations.  Translating by an
// integral cycle adds an integer vector in basis coordinates, so position
// numerators modulo det G classify the residues.  The radius must reach every
// vertex fiber for the count to be meaningful.
inline int atom_residue_count(const CrystalFragment& frag, const CycleBasis& basis) {
  if (frag.radius < diameter(*frag.graph))
    throw std::invalid_argument("atom_residue_count: radius below graph diameter");
  const Int det = basis.gram_det();
  std::set<IVec> residues;
  for (const Atom& a : frag.atoms) {
    IVec y = basis.numerator(a.chain);
    for (Int& v : y) {
      v %= det;
      if (v < 0) v += det;
    }
    residues.insert(std::move(y));
  }
  return static_cast<int>(residues.size());
}

struct PackingReport {
  int vertex_count = 0;
  int pair_count = 0;
  int cycle_rank = 0;
  int diameter = 0;
  Int tree_count;
  Int gram_det;
  std::vector<Int> invariant_factors;
  Int quotient_order;
  std::vector<int> bridges;               // pair ids, empty iff bridgeless
  int residue_count = 0;                  // measured at radius = diameter
  std::optional<Rat> packing_fraction;    // |V| / |T|, only claimed without bridges
};

// Assembles the counts and cross-checks them.  The equalities proved for
// bridgeless graphs are enforced; a violation there is an implementation bug.
// With bridges present the report degrades to counts and the fraction is
// withheld.
inline PackingReport packing_report(const Graph& g) {
  const CycleBasis basis(g);
  PackingReport rep;
  rep.vertex_count = g.vertex_count();
  rep.pair_count = g.pair_count();
  rep.cycle_rank = basis.m();
  rep.diameter = diameter(g);
  rep.tree_count = spanning_tree_count(g);
  rep.gram_det = gram_determinant(basis);
  if (rep.tree_count != rep.gram_det)
    throw std::logic_error("packing_report: tree count disagrees with det G");
  rep.invariant_factors = smith_normal_form(basis.gram(), basis.gram_det());
  rep.quotient_order = 1;
  for (const Int& d : rep.invariant_factors) rep.quotient_order *= d;
  if (rep.quotient_order != rep.tree_count)
    throw std::logic_error("packing_report: invariant factor product disagrees with tree count");
  rep.bridges = find_bridges(g);
  const CrystalFragment frag = ball(g, basis, rep.diameter);
  rep.residue_count = atom_residue_count(frag, basis);
  if (rep.bridges.empty()) {
    if (rep.residue_count != rep.vertex_count)
      throw std::logic_error("packing_report: residue count disagrees with vertex count");
    rep.packing_fraction = Rat(Int(rep.vertex_count), rep.tree_count);
  }
  return rep;
}

}  // namespace topocrystal
