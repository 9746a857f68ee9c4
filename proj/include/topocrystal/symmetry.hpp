#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "topocrystal/chain.hpp"
#include "topocrystal/cover.hpp"
#include "topocrystal/cycle_space.hpp"
#include "topocrystal/graph.hpp"

namespace topocrystal {

// Graph automorphism: a vertex bijection plus a compatible bijection of edge
// pairs with orientations.  edge_map[p] is the image of (p, +1); the image of
// (p, -1) is its inverse.  Parallel edges may permute among themselves and a
// self-loop may map to a self-loop with either orientation, so the edge data
// is not determined by the vertex permutation.
struct Automorphism {
  std::vector<int> vertex_perm;
  std::vector<DirectedEdge> edge_map;

  int apply(int v) const { return vertex_perm[v]; }

  DirectedEdge apply(const DirectedEdge& e) const {
    DirectedEdge im = edge_map[e.pair];
    im.sign *= e.sign;
    return im;
  }

  // induced map on 1-chains
  Chain1 push(const Chain1& c) const {
    Chain1 out;
    for (const auto& [p, k] : c.terms()) {
      const DirectedEdge im = edge_map[p];
      out.add_term(im.pair, k * im.sign);
    }
    return out;
  }

  bool is_identity() const {
    for (int v = 0; v < static_cast<int>(vertex_perm.size()); ++v)
      if (vertex_perm[v] != v) return false;
    for (int p = 0; p < static_cast<int>(edge_map.size()); ++p)
      if (edge_map[p] != DirectedEdge{p, +1}) return false;
    return true;
  }

  bool operator==(const Automorphism& o) const {
    return vertex_perm == o.vertex_perm && edge_map == o.edge_map;
  }
  bool operator<(const Automorphism& o) const {
    if (vertex_perm != o.vertex_perm) return vertex_perm < o.vertex_perm;
    for (std::size_t p = 0; p < edge_map.size(); ++p) {
      if (edge_map[p] != o.edge_map[p]) return edge_map[p] < o.edge_map[p];
    }
    return false;
  }
};

inline Automorphism identity_automorphism(const Graph& g) {
  Automorphism a;
  a.vertex_perm.resize(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) a.vertex_perm[v] = v;
  a.edge_map.resize(g.pair_count());
  for (int p = 0; p < g.pair_count(); ++p) a.edge_map[p] = {p, +1};
  return a;
}

// (a then b) as maps: compose(b, a)(x) = b(a(x))
inline Automorphism compose(const Automorphism& b, const Automorphism& a) {
  Automorphism c;
  c.vertex_perm.resize(a.vertex_perm.size());
  for (std::size_t v = 0; v < a.vertex_perm.size(); ++v)
    c.vertex_perm[v] = b.vertex_perm[a.vertex_perm[v]];
  c.edge_map.resize(a.edge_map.size());
  for (std::size_t p = 0; p < a.edge_map.size(); ++p) c.edge_map[p] = b.apply(a.edge_map[p]);
  return c;
}

inline Automorphism inverse(const Automorphism& a) {
  Automorphism c;
  c.vertex_perm.resize(a.vertex_perm.size());
  for (std::size_t v = 0; v < a.vertex_perm.size(); ++v) c.vertex_perm[a.vertex_perm[v]] = v;
  c.edge_map.resize(a.edge_map.size());
  for (std::size_t p = 0; p < a.edge_map.size(); ++p) {
    const DirectedEdge im = a.edge_map[p];
    c.edge_map[im.pair] = {static_cast<int>(p), im.sign};
  }
  return c;
}

namespace detail {

struct AutSearch {
  const Graph& g;
  int n;
  std::size_t limit;
  std::vector<std::vector<int>> mult;      // parallel count between vertex pairs
  std::vector<int> loops;                  // self-loop count per vertex
  std::vector<int> order;                  // assignment order (BFS forest)
  std::vector<int> parent_in_order;        // index into order, -1 for roots
  std::vector<int> assign;                 // vertex -> image or -1
  std::vector<char> used;
  std::vector<std::vector<int>> group_pairs;  // grouped parallel pairs, see key_of
  std::map<std::pair<int, int>, int> group_of_key;
  std::vector<Automorphism> out;

  AutSearch(const Graph& graph, std::size_t max_count)
      : g(graph), n(graph.vertex_count()), limit(max_count) {
    mult.assign(n, std::vector<int>(n, 0));
    loops.assign(n, 0);
    for (const auto& [u, w] : g.edge_pairs()) {
      if (u == w)
        ++loops[u];
      else {
        ++mult[u][w];
        ++mult[w][u];
      }
    }
    for (int p = 0; p < g.pair_count(); ++p) {
      auto [u, w] = g.edge_pairs()[p];
      if (u > w) std::swap(u, w);
      const std::pair<int, int> key{u, w};
      auto it = group_of_key.find(key);
      if (it == group_of_key.end()) {
        it = group_of_key.emplace(key, static_cast<int>(group_pairs.size())).first;
        group_pairs.push_back({});
      }
      group_pairs[it->second].push_back(p);
    }
    build_order();
  }

  void build_order() {
    std::vector<char> seen(n, 0);
    std::vector<int> pos_in_order(n, -1);
    for (int root = 0; root < n; ++root) {
      if (seen[root]) continue;
      seen[root] = 1;
      parent_in_order.push_back(-1);
      pos_in_order[root] = static_cast<int>(order.size());
      order.push_back(root);
      std::queue<int> q;
      q.push(root);
      while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (const auto& e : g.out_edges(v)) {
          int w = g.target(e);
          if (!seen[w]) {
            seen[w] = 1;
            parent_in_order.push_back(pos_in_order[v]);
            pos_in_order[w] = static_cast<int>(order.size());
            order.push_back(w);
            q.push(w);
          }
        }
      }
    }
  }

  bool compatible(int v, int image) const {
    if (loops[v] != loops[image]) return false;
    int dv = loops[v] * 2, di = dv;
    for (int u = 0; u < n; ++u) dv += mult[v][u];
    for (int u = 0; u < n; ++u) di += mult[image][u];
    if (dv != di) return false;
    for (int u = 0; u < n; ++u) {
      if (assign[u] < 0) continue;
      if (mult[v][u] != mult[image][assign[u]]) return false;
    }
    return true;
  }

  void search(std::size_t k) {
    if (k == order.size()) {
      emit_edge_maps();
      return;
    }
    const int v = order[k];
    if (parent_in_order[k] >= 0) {
      // candidates adjacent to the image of the BFS parent, ascending
      const int pimg = assign[order[parent_in_order[k]]];
      std::vector<int> cand;
      for (const auto& e : g.out_edges(pimg)) {
        const int w = g.target(e);
        if (!used[w] && mult[pimg][w] > 0) cand.push_back(w);
      }
      std::sort(cand.begin(), cand.end());
      cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
      for (int w : cand) try_assign(k, v, w);
    } else {
      for (int w = 0; w < n; ++w)
        if (!used[w]) try_assign(k, v, w);
    }
  }

  void try_assign(std::size_t k, int v, int image) {
    if (!compatible(v, image)) return;
    assign[v] = image;
    used[image] = 1;
    search(k + 1);
    assign[v] = -1;
    used[image] = 0;
  }

  // For a fixed vertex permutation, enumerate every consistent edge map:
  // independent bijections per parallel group, orientation choices for loops.
  void emit_edge_maps() {
    const int ng = static_cast<int>(group_pairs.size());
    std::vector<std::vector<int>> targets(ng);        // image pair ids, sorted
    std::vector<std::vector<int>> perm(ng);           // current bijection
    std::vector<bool> is_loop_group(ng);
    for (int gi = 0; gi < ng; ++gi) {
      const int p0 = group_pairs[gi][0];
      auto [u, w] = g.edge_pairs()[p0];
      is_loop_group[gi] = u == w;
      int iu = assign[u], iw = assign[w];
      if (iu > iw) std::swap(iu, iw);
      targets[gi] = group_pairs[group_of_key.at({iu, iw})];
      perm[gi] = targets[gi];
    }
    std::vector<int> flips(ng, 0);  // bitmask of loop orientation flips
    // odometer over (permutation, flips) per group, group 0 outermost
    while (true) {
      Automorphism a;
      a.vertex_perm = assign;
      a.edge_map.resize(g.pair_count());
      for (int gi = 0; gi < ng; ++gi) {
        for (std::size_t i = 0; i < group_pairs[gi].size(); ++i) {
          const int p = group_pairs[gi][i];
          const int q = perm[gi][i];
          int sign;
          if (is_loop_group[gi]) {
            sign = (flips[gi] >> i) & 1 ? -1 : +1;
          } else {
            const auto& [u, w] = g.edge_pairs()[p];
            const auto& [c, d] = g.edge_pairs()[q];
            if (assign[u] == c && assign[w] == d)
              sign = +1;
            else if (assign[u] == d && assign[w] == c)
              sign = -1;
            else
              throw std::logic_error("automorphisms: inconsistent edge image");
          }
          a.edge_map[p] = {q, sign};
        }
      }
      out.push_back(std::move(a));
      if (out.size() > limit) throw std::length_error("automorphisms: group larger than limit");
      // advance odometer
      int gi = ng - 1;
      for (; gi >= 0; --gi) {
        if (is_loop_group[gi]) {
          const int limit = 1 << group_pairs[gi].size();
          if (flips[gi] + 1 < limit) {
            ++flips[gi];
            break;
          }
          flips[gi] = 0;
        }
        if (std::next_permutation(perm[gi].begin(), perm[gi].end())) break;
      }
      if (gi < 0) return;
    }
  }
};

}  // namespace detail

// The complete automorphism group, sorted (identity first).  `limit` guards
// callers that cannot afford a parallel-edge blowup (the group contains a
// factor k! per block of k parallel edges); exceeding it throws length_error.
inline std::vector<Automorphism> automorphisms(
    const Graph& g, std::size_t limit = std::numeric_limits<std::size_t>::max()) {
  if (g.vertex_count() > 64)
    throw std::invalid_argument("automorphisms: more than 64 vertices");
  if (g.vertex_count() == 0) return {Automorphism{}};
  detail::AutSearch s(g, limit);
  s.assign.assign(g.vertex_count(), -1);
  s.used.assign(g.vertex_count(), 0);
  s.search(0);
  std::sort(s.out.begin(), s.out.end());
  return s.out;
}

// Greedy generating set: walk the sorted group, keep each element the closure
// so far misses.  Deterministic; small for the groups at hand.
inline std::vector<Automorphism> generating_set(const std::vector<Automorphism>& group) {
  std::vector<Automorphism> gens;
  if (group.empty()) return gens;
  Automorphism id = group.front();
  for (const auto& a : group)
    if (a.is_identity()) {
      id = a;
      break;
    }
  std::set<Automorphism> closure{id};
  auto regrow = [&] {
    closure.clear();
    closure.insert(id);
    std::queue<Automorphism> q;
    q.push(id);
    while (!q.empty()) {
      const Automorphism cur = q.front();
      q.pop();
      for (const auto& gen : gens) {
        Automorphism nxt = compose(gen, cur);
        if (closure.insert(nxt).second) q.push(std::move(nxt));
      }
    }
  };
  for (const auto& a : group) {
    if (closure.count(a)) continue;
    gens.push_back(a);
    regrow();
    if (closure.size() == group.size()) break;
  }
  return gens;
}

// Does Aut act transitively on arcs (vertex, incident directed edge)?
inline bool arc_transitive(const Graph& g, const std::vector<Automorphism>& group) {
  if (g.pair_count() == 0) return true;
  std::set<DirectedEdge> orbit;
  const DirectedEdge d0{0, +1};
  for (const auto& a : group) orbit.insert(a.apply(d0));
  return static_cast<int>(orbit.size()) == 2 * g.pair_count();
}

// A symmetry of the cover: a base automorphism together with the chain of a
// path from the basepoint to the image of the basepoint.  Acts by
// a -> beta + f(a).
struct CoveringSymmetry {
  Automorphism base;
  Chain1 beta;
};

// The lift whose beta is the spanning-tree path basepoint -> f(basepoint).
inline CoveringSymmetry canonical_lift(const Graph& g, const CycleBasis& basis,
                                       const Automorphism& f) {
  const Path p = basis.tree_path(basepoint, f.apply(basepoint));
  return {f, path_chain(g, p)};
}

inline Atom apply_cover_symmetry(const CoveringSymmetry& s, const Atom& a) {
  return Atom{s.beta + s.base.push(a.chain), s.base.apply(a.vertex)};
}

// (s1 then s2)?  No: compose_symmetries(s1, s2) applies s2 first, mirroring
// compose(b, a) above.
inline CoveringSymmetry compose_symmetries(const CoveringSymmetry& s1,
                                           const CoveringSymmetry& s2) {
  return {compose(s1.base, s2.base), s1.beta + s1.base.push(s2.beta)};
}

inline CoveringSymmetry inverse_symmetry(const CoveringSymmetry& s) {
  const Automorphism inv = inverse(s.base);
  return {inv, -inv.push(s.beta)};
}

// Deck translation by an integral cycle: the kernel of the projection onto
// the automorphism group consists exactly of these.
inline CoveringSymmetry deck_symmetry(const Graph& g, const Chain1& z) {
  if (!is_cycle(g, z)) throw std::invalid_argument("deck_symmetry: chain is not a cycle");
  return {identity_automorphism(g), z};
}

// The action on basis coordinates: y -> F y + t.  F is integral because the
// fundamental cycles are a lattice basis of the integral cycle space and
// automorphisms preserve that lattice.
struct AffineMap {
  LMat linear;
  CycleCoords translation;

  bool operator==(const AffineMap& o) const {
    return linear == o.linear && translation == o.translation;
  }
};

inline CycleCoords apply(const AffineMap& map, const CycleCoords& y) {
  const int m = static_cast<int>(map.linear.size());
  CycleCoords out;
  out.y.assign(m, Rat(0));
  for (int i = 0; i < m; ++i) {
    Rat s = map.translation.y[i];
    for (int j = 0; j < m; ++j)
      if (map.linear[i][j] != 0 && y.y[j] != 0) s += Rat(map.linear[i][j]) * y.y[j];
    out.y[i] = s;
  }
  return out;
}

inline AffineMap compose(const AffineMap& b, const AffineMap& a) {
  const int m = static_cast<int>(a.linear.size());
  AffineMap c;
  c.linear.assign(m, LVec(m, 0));
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      if (b.linear[i][k] == 0) continue;
      for (int j = 0; j < m; ++j) c.linear[i][j] += b.linear[i][k] * a.linear[k][j];
    }
  c.translation = apply(b, a.translation);
  return c;
}

// A point fixed by every map in the list, if one exists: rational elimination
// on the stacked systems (F - 1) y = -t, free variables set to zero.  When
// the maps are lifted generators, such a point certifies that the covering
// symmetries contain a group fixing it; absence decides nothing.
inline std::optional<RVec> shared_fixed_point(const std::vector<AffineMap>& maps) {
  if (maps.empty()) return RVec{};
  const int m = static_cast<int>(maps[0].linear.size());
  RMat rows;
  RVec rhs;
  for (const AffineMap& map : maps)
    for (int i = 0; i < m; ++i) {
      RVec row(m);
      for (int j = 0; j < m; ++j) row[j] = Rat(map.linear[i][j]) - Rat(i == j ? 1 : 0);
      rows.push_back(std::move(row));
      rhs.push_back(-map.translation.y[i]);
    }
  const int nrows = static_cast<int>(rows.size());
  int rank = 0;
  std::vector<int> pivot_col;
  for (int col = 0; col < m && rank < nrows; ++col) {
    int piv = -1;
    for (int r = rank; r < nrows; ++r)
      if (rows[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    std::swap(rhs[rank], rhs[piv]);
    const Rat inv = Rat(1) / rows[rank][col];
    for (int j = col; j < m; ++j) rows[rank][j] *= inv;
    rhs[rank] *= inv;
    for (int r = 0; r < nrows; ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const Rat f = rows[r][col];
      for (int j = col; j < m; ++j) rows[r][j] -= f * rows[rank][j];
      rhs[r] -= f * rhs[rank];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (int r = rank; r < nrows; ++r)
    if (rhs[r] != 0) return std::nullopt;
  RVec y(m, Rat(0));
  for (int k = 0; k < rank; ++k) y[pivot_col[k]] = rhs[k];
  return y;
}

// Builds the affine isometry realizing a covering symmetry on coordinates.
// The isometry identity F^T G F = G is checked at construction; a violation
// is a bug, not an input error.
inline AffineMap affine_action(const CycleBasis& basis, const CoveringSymmetry& s) {
  const int m = basis.m();
  AffineMap map;
  map.linear.assign(m, LVec(m, 0));
  for (int j = 0; j < m; ++j) {
    const Chain1 image = s.base.push(basis.basis_chain(j));
    // integral cycle: its basis coordinates are its non-tree coefficients
    for (int i = 0; i < m; ++i) map.linear[i][j] = image.coeff(basis.nontree_pairs()[i]);
  }
  map.translation = project(basis, s.beta);
  // F^T G F == G, all integral
  const LMat& gmat = basis.gram();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      long long want = gmat[i][j];
      long long got = 0;
      for (int k = 0; k < m; ++k) {
        if (map.linear[k][i] == 0) continue;
        long long inner = 0;
        for (int l = 0; l < m; ++l) inner += gmat[k][l] * map.linear[l][j];
        got += map.linear[k][i] * inner;
      }
      if (got != want) throw std::logic_error("affine_action: F^T G F != G");
    }
  return map;
}

}  // namespace topocrystal
