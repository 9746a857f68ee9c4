#pragma once

#include <algorithm>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace topocrystal {

// A directed edge is an orientation of an edge pair: (pair, +1) runs
// source -> target as stored, (pair, -1) is its inverse.  The involution
// e != e^-1 holds structurally even for self-loops.
struct DirectedEdge {
  int pair = 0;
  int sign = +1;

  DirectedEdge inverse() const { return {pair, -sign}; }

  bool operator==(const DirectedEdge& o) const { return pair == o.pair && sign == o.sign; }
  bool operator!=(const DirectedEdge& o) const { return !(*this == o); }
  // +orientation sorts before -orientation within a pair.
  bool operator<(const DirectedEdge& o) const {
    if (pair != o.pair) return pair < o.pair;
    return sign > o.sign;
  }
};

struct GraphParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DisconnectedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Finite multigraph.  One entry of edge_pairs per undirected bond, in input
// order; that order is part of the graph's identity (coordinates computed
// downstream depend on it).  Parallel edges and self-loops are allowed.
class Graph {
 public:
  Graph() = default;

  Graph(int vertex_count, std::vector<std::pair<int, int>> edge_pairs,
        std::vector<std::string> labels = {})
      : vertex_count_(vertex_count),
        edge_pairs_(std::move(edge_pairs)),
        labels_(std::move(labels)) {
    if (vertex_count_ < 0) throw std::invalid_argument("Graph: negative vertex count");
    for (const auto& [u, w] : edge_pairs_) {
      if (u < 0 || w < 0 || u >= vertex_count_ || w >= vertex_count_)
        throw std::invalid_argument("Graph: edge endpoint out of range");
    }
    out_.assign(vertex_count_, {});
    for (int p = 0; p < static_cast<int>(edge_pairs_.size()); ++p) {
      const auto& [u, w] = edge_pairs_[p];
      out_[u].push_back({p, +1});
      out_[w].push_back({p, -1});  // for a self-loop both orientations leave u
    }
    for (auto& lst : out_) std::sort(lst.begin(), lst.end());
  }

  int vertex_count() const { return vertex_count_; }
  int pair_count() const { return static_cast<int>(edge_pairs_.size()); }
  const std::vector<std::pair<int, int>>& edge_pairs() const { return edge_pairs_; }
  const std::vector<std::string>& labels() const { return labels_; }

  int source(const DirectedEdge& e) const {
    const auto& [u, w] = edge_pairs_[e.pair];
    return e.sign > 0 ? u : w;
  }
  int target(const DirectedEdge& e) const {
    const auto& [u, w] = edge_pairs_[e.pair];
    return e.sign > 0 ? w : u;
  }

  // Directed edges leaving v, ordered by (pair, +orientation first).
  const std::vector<DirectedEdge>& out_edges(int v) const { return out_[v]; }

 private:
  int vertex_count_ = 0;
  std::vector<std::pair<int, int>> edge_pairs_;
  std::vector<std::string> labels_;
  std::vector<std::vector<DirectedEdge>> out_;
};

// A walk: start vertex plus composable directed edges.
struct Path {
  int start = 0;
  std::vector<DirectedEdge> edges;
};

inline void validate_path(const Graph& g, const Path& p) {
  if (p.start < 0 || p.start >= g.vertex_count())
    throw std::invalid_argument("Path: start vertex out of range");
  int at = p.start;
  for (const auto& e : p.edges) {
    if (e.pair < 0 || e.pair >= g.pair_count() || (e.sign != 1 && e.sign != -1))
      throw std::invalid_argument("Path: bad directed edge");
    if (g.source(e) != at) throw std::invalid_argument("Path: edges do not compose");
    at = g.target(e);
  }
}

inline int path_end(const Graph& g, const Path& p) {
  int at = p.start;
  for (const auto& e : p.edges) at = g.target(e);
  return at;
}

inline Path inverse_path(const Graph& g, const Path& p) {
  Path q{path_end(g, p), {}};
  q.edges.reserve(p.edges.size());
  for (auto it = p.edges.rbegin(); it != p.edges.rend(); ++it) q.edges.push_back(it->inverse());
  return q;
}

// Renders "e3 e5^-1" style edge words; trivial paths render as "(trivial)".
inline std::string path_word(const Path& p) {
  std::ostringstream os;
  os << p.start << ":";
  if (p.edges.empty()) os << " (trivial)";
  for (const auto& e : p.edges) {
    os << " e" << e.pair;
    if (e.sign < 0) os << "^-1";
  }
  return os.str();
}

// --- graph file format ------------------------------------------------------
//
//   # comment
//   v <count>          (optional, at most once)
//   e <u> <w>          (0-based endpoints, one line per edge pair)
//
// Without a v line the vertex count is 1 + max id (0 for an empty file).

inline Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  long long declared = -1;
  long long max_id = -1;
  std::vector<std::pair<int, int>> pairs;
  int lineno = 0;
  auto fail = [&](const std::string& what) {
    throw GraphParseError("line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank
    if (tok[0] == '#') continue;
    if (tok == "v") {
      long long n;
      std::string extra;
      if (!(ls >> n)) fail("malformed vertex count");
      if (ls >> extra) fail("trailing tokens after vertex count");
      if (n < 0) fail("negative vertex count");
      if (declared >= 0) fail("duplicate v line");
      declared = n;
    } else if (tok == "e") {
      long long u, w;
      std::string extra;
      if (!(ls >> u >> w)) fail("malformed edge line");
      if (ls >> extra) fail("trailing tokens after edge");
      if (u < 0 || w < 0) fail("negative vertex id");
      max_id = std::max({max_id, u, w});
      pairs.emplace_back(static_cast<int>(u), static_cast<int>(w));
    } else {
      fail("unknown directive '" + tok + "'");
    }
  }
  long long count = declared >= 0 ? declared : max_id + 1;
  if (declared >= 0 && max_id >= declared)
    throw GraphParseError("edge endpoint " + std::to_string(max_id) +
                          " out of declared range v " + std::to_string(declared));
  return Graph(static_cast<int>(count), std::move(pairs));
}

inline std::string format_graph(const Graph& g) {
  std::ostringstream os;
  os << "v " << g.vertex_count() << "\n";
  for (const auto& [u, w] : g.edge_pairs()) os << "e " << u << " " << w << "\n";
  return os.str();
}

// --- connectivity -----------------------------------------------------------

inline bool is_connected(const Graph& g) {
  const int n = g.vertex_count();
  if (n == 0) return true;  // vacuously
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (const auto& e : g.out_edges(v)) {
      int w = g.target(e);
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        q.push(w);
      }
    }
  }
  return reached == n;
}

// Bridge pairs by low-link DFS, ascending pair id.  Each traversal skips only
// the specific pair it entered through, so a parallel copy shows up as a back
// edge and correctly prevents bridge status; self-loops never qualify.
inline std::vector<int> find_bridges(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<int> bridges;
  int timer = 0;
  // explicit stack: (vertex, entry pair or -1, next out-edge index)
  struct Frame {
    int v;
    int entry_pair;
    std::size_t next;
  };
  for (int root = 0; root < n; ++root) {
    if (disc[root] >= 0) continue;
    std::vector<Frame> stack{{root, -1, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& out = g.out_edges(f.v);
      if (f.next < out.size()) {
        const DirectedEdge e = out[f.next++];
        const int w = g.target(e);
        if (w == f.v) continue;  // self-loop
        if (e.pair == f.entry_pair) continue;
        if (disc[w] < 0) {
          disc[w] = low[w] = timer++;
          stack.push_back({w, e.pair, 0});
        } else {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        const Frame done = f;
        stack.pop_back();
        if (!stack.empty()) {
          Frame& parent = stack.back();
          low[parent.v] = std::min(low[parent.v], low[done.v]);
          if (low[done.v] > disc[parent.v]) bridges.push_back(done.entry_pair);
        }
      }
    }
  }
  std::sort(bridges.begin(), bridges.end());
  return bridges;
}

struct EulerData {
  int vertices = 0;
  int edge_pairs = 0;
  int cycle_rank = 0;
};

inline EulerData euler_data(const Graph& g) {
  if (!is_connected(g)) throw DisconnectedError("euler_data: graph is disconnected");
  return {g.vertex_count(), g.pair_count(), g.pair_count() - g.vertex_count() + 1};
}

// Largest BFS eccentricity; requires a connected graph.
inline int diameter(const Graph& g) {
  const int n = g.vertex_count();
  if (!is_connected(g)) throw DisconnectedError("diameter: graph is disconnected");
  if (n == 0) return 0;
  int best = 0;
  std::vector<int> dist(n);
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::queue<int> q;
    q.push(s);
    dist[s] = 0;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      best = std::max(best, dist[v]);
      for (const auto& e : g.out_edges(v)) {
        int w = g.target(e);
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          q.push(w);
        }
      }
    }
  }
  return best;
}

}  // namespace topocrystal
