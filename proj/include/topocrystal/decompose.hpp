#pragma once

#include <queue>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "topocrystal/chain.hpp"
#include "topocrystal/graph.hpp"

namespace topocrystal {

struct BridgePresentError : std::runtime_error {
  std::vector<int> bridges;

  explicit BridgePresentError(std::vector<int> b)
      : std::runtime_error(describe(b)), bridges(std::move(b)) {}

  static std::string describe(const std::vector<int>& b) {
    std::ostringstream os;
    os << "graph has bridge pair" << (b.size() == 1 ? "" : "s");
    for (int p : b) os << " e" << p;
    return os.str();
  }
};

struct ZeroChainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PathDecomposition {
  Path simple_path;               // empty edge list iff endpoints coincide
  std::vector<Path> simple_loops;
};

namespace detail {

// First directed edge of the support, positive pair coefficients (ascending
// pair id) before negative ones.  Restricted to edges leaving `from` when
// from >= 0.  Returns false if the support has no such edge.
inline bool first_support_edge(const Graph& g, const LVec& work, int from, DirectedEdge& out) {
  for (int pass = 0; pass < 2; ++pass) {
    const int want = pass == 0 ? +1 : -1;
    for (int p = 0; p < static_cast<int>(work.size()); ++p) {
      if ((want > 0 && work[p] <= 0) || (want < 0 && work[p] >= 0)) continue;
      const DirectedEdge e{p, want};
      if (from >= 0 && g.source(e) != from) continue;
      out = e;
      return true;
    }
  }
  return false;
}

inline void subtract_walk(LVec& work, const std::vector<DirectedEdge>& edges) {
  for (const auto& e : edges) work[e.pair] -= e.sign;
}

// Walks the support from the globally first support edge until a vertex
// repeats, then cuts out that simple loop.  Assumes work is a cycle.
inline Path peel_loop(const Graph& g, LVec& work) {
  DirectedEdge d;
  if (!first_support_edge(g, work, -1, d)) throw std::logic_error("peel_loop: empty support");
  std::vector<int> visited_at(g.vertex_count(), -1);
  std::vector<DirectedEdge> walk;
  int at = g.source(d);
  for (;;) {
    visited_at[at] = static_cast<int>(walk.size());
    if (!first_support_edge(g, work, at, d))
      throw std::logic_error("peel_loop: support walk stuck, chain is not a cycle");
    walk.push_back(d);
    at = g.target(d);
    if (visited_at[at] >= 0) break;
  }
  Path loop{at, {walk.begin() + visited_at[at], walk.end()}};
  subtract_walk(work, loop.edges);
  return loop;
}

}  // namespace detail

// Writes an integral cycle as a sum of chains of simple loops with support
// inside the input's support.  The peel count is bounded by the sum of the
// positive coefficients, which is the termination argument.
inline std::vector<Path> decompose_cycle(const Graph& g, const Chain1& c) {
  if (!is_cycle(g, c)) throw std::invalid_argument("decompose_cycle: chain is not a cycle");
  LVec work = dense(c, g.pair_count());
  long long budget = 0;
  for (long long k : work) budget += k > 0 ? k : -k;
  std::vector<Path> loops;
  while (true) {
    bool empty = true;
    for (long long k : work)
      if (k != 0) empty = false;
    if (empty) break;
    loops.push_back(detail::peel_loop(g, work));
    if (static_cast<long long>(loops.size()) > budget)
      throw std::logic_error("decompose_cycle: peel count exceeded coefficient budget");
  }
  return loops;
}

// Splits a path chain into a simple path between the endpoints plus chains of
// simple loops.  Whenever the endpoint walk revisits a vertex the loop just
// closed is cut out of the working chain and the walk restarts.
inline PathDecomposition decompose_path_chain(const Graph& g, const Path& p) {
  validate_path(g, p);
  const int x = p.start;
  const int y = path_end(g, p);
  const Chain1 c = path_chain(g, p);
  PathDecomposition out;
  out.simple_path = Path{x, {}};
  if (x == y) {
    out.simple_loops = decompose_cycle(g, c);
    return out;
  }
  LVec work = dense(c, g.pair_count());
  long long budget = 0;
  for (long long k : work) budget += k > 0 ? k : -k;
  std::vector<int> visited_at(g.vertex_count(), -1);
  std::vector<DirectedEdge> walk;
  std::vector<int> walk_vertices;  // sources of walk edges, walk_vertices[0] == x
  auto restart = [&] {
    for (int v : walk_vertices) visited_at[v] = -1;
    walk.clear();
    walk_vertices.clear();
    visited_at[x] = 0;
    walk_vertices.push_back(x);
  };
  restart();
  int at = x;
  while (at != y) {
    DirectedEdge d;
    if (!detail::first_support_edge(g, work, at, d))
      throw std::logic_error("decompose_path_chain: support walk stuck");
    const int next = g.target(d);
    if (next != y && visited_at[next] >= 0) {
      // vertex repeats: cut the loop out and start over from x
      std::vector<DirectedEdge> loop{walk.begin() + visited_at[next], walk.end()};
      loop.push_back(d);
      detail::subtract_walk(work, loop);
      out.simple_loops.push_back(Path{next, std::move(loop)});
      if (static_cast<long long>(out.simple_loops.size()) > budget)
        throw std::logic_error("decompose_path_chain: peel count exceeded coefficient budget");
      restart();
      at = x;
      continue;
    }
    walk.push_back(d);
    if (next != y) {
      // next becomes the source of the edge at index walk.size()
      visited_at[next] = static_cast<int>(walk.size());
      walk_vertices.push_back(next);
    }
    at = next;
  }
  out.simple_path = Path{x, walk};
  detail::subtract_walk(work, walk);
  auto rest = decompose_cycle(g, from_dense(work));
  out.simple_loops.insert(out.simple_loops.end(), rest.begin(), rest.end());
  if (static_cast<long long>(out.simple_loops.size()) > budget)
    throw std::logic_error("decompose_path_chain: peel count exceeded coefficient budget");
  return out;
}

// A cycle z with <z, c_p> >= 1, built from the decomposition of p: either a
// peeled loop (its chain pairs positively with c_p), or, when p reduces to a
// simple path delta = e_1..e_n, the loop formed by a detour alpha from the
// endpoint back to delta (BFS in the graph minus e_n, lowest pair id first,
// stopping at the first delta vertex encountered) plus the tail of delta.
inline Chain1 witness_cycle(const Graph& g, const Path& p) {
  {
    auto b = find_bridges(g);
    if (!b.empty()) throw BridgePresentError(std::move(b));
  }
  validate_path(g, p);
  const Chain1 c = path_chain(g, p);
  if (c.zero()) throw ZeroChainError("witness_cycle: path chain is zero");

  const PathDecomposition dec = decompose_path_chain(g, p);
  for (const auto& loop : dec.simple_loops) {
    const Chain1 lc = path_chain(g, loop);
    if (!lc.zero()) return lc;
  }

  // no loops: c equals the chain of the simple path delta
  const Path& delta = dec.simple_path;
  const int n = static_cast<int>(delta.edges.size());
  if (n == 0) throw std::logic_error("witness_cycle: empty decomposition of nonzero chain");
  const DirectedEdge last = delta.edges[n - 1];
  const int vn = g.target(last);

  std::vector<int> delta_index(g.vertex_count(), -1);  // vertex -> position on delta
  {
    int at = delta.start;
    for (int i = 0; i < n; ++i) {
      delta_index[at] = i;
      at = g.target(delta.edges[i]);
    }
  }

  // BFS from vn avoiding the pair of the last edge
  std::vector<DirectedEdge> via(g.vertex_count());
  std::vector<int> pred(g.vertex_count(), -1);
  std::vector<char> seen(g.vertex_count(), 0);
  std::queue<int> q;
  seen[vn] = 1;
  q.push(vn);
  int hit = -1;
  DirectedEdge hit_edge;
  int hit_from = -1;
  while (!q.empty() && hit < 0) {
    const int v = q.front();
    q.pop();
    for (const auto& e : g.out_edges(v)) {
      if (e.pair == last.pair) continue;
      const int w = g.target(e);
      if (w != vn && delta_index[w] >= 0) {
        hit = w;
        hit_edge = e;
        hit_from = v;
        break;
      }
      if (!seen[w]) {
        seen[w] = 1;
        pred[w] = v;
        via[w] = e;
        q.push(w);
      }
    }
  }
  if (hit < 0) throw std::logic_error("witness_cycle: endpoint detour not found in bridgeless graph");

  Chain1 z;  // c_alpha + c_beta
  for (int v = hit_from; v != vn; v = pred[v]) z.add_edge(via[v]);
  z.add_edge(hit_edge);
  for (int i = delta_index[hit]; i < n; ++i) z.add_edge(delta.edges[i]);
  return z;
}

}  // namespace topocrystal
