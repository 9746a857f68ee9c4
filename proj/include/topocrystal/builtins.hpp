#pragma once

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "topocrystal/graph.hpp"
#include "topocrystal/klein_data.hpp"

namespace topocrystal {

struct UnknownBuiltinError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

using EdgeList = std::vector<std::pair<int, int>>;

inline EdgeList sorted(std::set<std::pair<int, int>> s) { return {s.begin(), s.end()}; }

inline Graph tetrahedron() {
  EdgeList e;
  for (int u = 0; u < 4; ++u)
    for (int w = u + 1; w < 4; ++w) e.push_back({u, w});
  return Graph(4, e);
}

inline Graph cube() {
  std::set<std::pair<int, int>> e;
  for (int u = 0; u < 8; ++u)
    for (int b = 0; b < 3; ++b) {
      int w = u ^ (1 << b);
      if (u < w) e.insert({u, w});
    }
  return Graph(8, sorted(e));
}

inline Graph octahedron() {
  // all pairs except the antipodes (0,3) (1,4) (2,5)
  EdgeList e;
  for (int u = 0; u < 6; ++u)
    for (int w = u + 1; w < 6; ++w)
      if (w - u != 3) e.push_back({u, w});
  return Graph(6, e);
}

inline Graph cuboctahedron() {
  // vertices (+-1,+-1,0) and cyclic shifts; adjacent at squared distance 2
  std::set<std::array<int, 3>> vset;
  for (int a : {1, -1})
    for (int b : {1, -1}) {
      vset.insert({a, b, 0});
      vset.insert({a, 0, b});
      vset.insert({0, a, b});
    }
  std::vector<std::array<int, 3>> v(vset.begin(), vset.end());
  std::set<std::pair<int, int>> e;
  for (int i = 0; i < 12; ++i)
    for (int j = i + 1; j < 12; ++j) {
      int d = 0;
      for (int k = 0; k < 3; ++k) d += (v[i][k] - v[j][k]) * (v[i][k] - v[j][k]);
      if (d == 2) e.insert({i, j});
    }
  return Graph(12, sorted(e));
}

inline Graph dodecahedron() {
  static constexpr std::array<int, 20> lcf = {10, 7, 4, -4, -7, 10, -4, 7, -7, 4,
                                              10, 7, 4, -4, -7, 10, -4, 7, -7, 4};
  std::set<std::pair<int, int>> e;
  for (int i = 0; i < 20; ++i) {
    e.insert(std::minmax(i, (i + 1) % 20));
    e.insert(std::minmax(i, ((i + lcf[i]) % 20 + 20) % 20));
  }
  return Graph(20, sorted(e));
}

inline Graph icosahedron() {
  // pentagonal antiprism rings 1..5 and 6..10 plus apexes 0 and 11
  std::set<std::pair<int, int>> e;
  for (int i = 0; i < 5; ++i) {
    const int u = 1 + i, un = 1 + (i + 1) % 5;
    const int l = 6 + i, ln = 6 + (i + 1) % 5;
    e.insert({0, u});
    e.insert(std::minmax(u, un));
    e.insert(std::minmax(l, ln));
    e.insert(std::minmax(u, l));
    e.insert(std::minmax(un, l));
    e.insert({l, 11});
  }
  return Graph(12, sorted(e));
}

inline Graph icosidodecahedron() {
  // rectified icosahedron: one vertex per icosahedron edge, one triangle of
  // edges per icosahedral face (its triangles are exactly its 3-cliques)
  const Graph ico = icosahedron();
  const auto& pairs = ico.edge_pairs();
  std::vector<std::vector<char>> adj(12, std::vector<char>(12, 0));
  for (const auto& [u, w] : pairs) adj[u][w] = adj[w][u] = 1;
  auto edge_index = [&](int u, int w) {
    if (u > w) std::swap(u, w);
    for (int p = 0; p < static_cast<int>(pairs.size()); ++p)
      if (pairs[p] == std::make_pair(u, w)) return p;
    throw std::logic_error("icosidodecahedron: missing icosahedron edge");
  };
  std::set<std::pair<int, int>> e;
  int faces = 0;
  for (int a = 0; a < 12; ++a)
    for (int b = a + 1; b < 12; ++b)
      for (int c = b + 1; c < 12; ++c) {
        if (!(adj[a][b] && adj[b][c] && adj[a][c])) continue;
        ++faces;
        const int f[3] = {edge_index(a, b), edge_index(a, c), edge_index(b, c)};
        for (int x = 0; x < 3; ++x)
          for (int y = x + 1; y < 3; ++y) e.insert(std::minmax(f[x], f[y]));
      }
  if (faces != 20) throw std::logic_error("icosidodecahedron: face count " + std::to_string(faces));
  return Graph(30, sorted(e));
}

inline Graph petersen() {
  std::set<std::pair<int, int>> e;
  for (int i = 0; i < 5; ++i) {
    e.insert(std::minmax(i, (i + 1) % 5));
    e.insert({i, i + 5});
    e.insert(std::minmax(5 + i, 5 + (i + 2) % 5));
  }
  return Graph(10, sorted(e));
}

inline Graph hosohedron(int n) {
  if (n < 2) throw UnknownBuiltinError("hosohedron requires n >= 2");
  EdgeList e(n, {0, 1});
  return Graph(2, e);
}

}  // namespace detail

struct BuiltinInfo {
  std::string name;
  bool parametrized = false;
};

inline const std::vector<BuiltinInfo>& builtin_list() {
  static const std::vector<BuiltinInfo> list = {
      {"tetrahedron"},   {"cube"},
      {"octahedron"},    {"cuboctahedron"},
      {"dodecahedron"},  {"icosahedron"},
      {"icosidodecahedron"}, {"hosohedron", true},
      {"petersen"},      {"klein_triangular"},
      {"klein_heptagonal"},  {"theta"},
      {"diamond"},
  };
  return list;
}

// Accepts "name" or "name:n" for the parametrized family.  theta and diamond
// are aliases for hosohedron(3) and hosohedron(4): the graphs whose crystals
// are the honeycomb and the diamond network.
inline Graph builtin_graph(const std::string& spec) {
  std::string name = spec;
  int param = -1;
  if (auto colon = spec.find(':'); colon != std::string::npos) {
    name = spec.substr(0, colon);
    const std::string rest = spec.substr(colon + 1);
    try {
      std::size_t used = 0;
      param = std::stoi(rest, &used);
      if (used != rest.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw UnknownBuiltinError("bad builtin parameter '" + rest + "'");
    }
  }
  if (name == "hosohedron") {
    if (param < 0) throw UnknownBuiltinError("hosohedron requires a parameter, e.g. hosohedron:3");
    return detail::hosohedron(param);
  }
  if (param >= 0) throw UnknownBuiltinError("builtin '" + name + "' takes no parameter");
  if (name == "tetrahedron") return detail::tetrahedron();
  if (name == "cube") return detail::cube();
  if (name == "octahedron") return detail::octahedron();
  if (name == "cuboctahedron") return detail::cuboctahedron();
  if (name == "dodecahedron") return detail::dodecahedron();
  if (name == "icosahedron") return detail::icosahedron();
  if (name == "icosidodecahedron") return detail::icosidodecahedron();
  if (name == "petersen") return detail::petersen();
  if (name == "theta") return detail::hosohedron(3);
  if (name == "diamond") return detail::hosohedron(4);
  if (name == "klein_triangular") return parse_graph(klein_triangular_data);
  if (name == "klein_heptagonal") return parse_graph(klein_heptagonal_data);
  throw UnknownBuiltinError("unknown builtin graph '" + name + "'");
}

}  // namespace topocrystal
