#pragma once

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <vector>

#include "topocrystal/chain.hpp"
#include "topocrystal/graph.hpp"
#include "topocrystal/numeric.hpp"

namespace topocrystal {

// All coordinates are taken in the fundamental-cycle basis of a fixed BFS
// spanning tree.  The basepoint is vertex 0 throughout.
inline constexpr int basepoint = 0;

// BFS spanning tree from the basepoint, lowest pair id first.
// Returns tree pair ids in ascending order.
inline std::vector<int> spanning_tree(const Graph& g) {
  if (!is_connected(g)) throw DisconnectedError("spanning_tree: graph is disconnected");
  std::vector<int> tree;
  if (g.vertex_count() == 0) return tree;
  std::vector<char> seen(g.vertex_count(), 0);
  std::queue<int> q;
  seen[basepoint] = 1;
  q.push(basepoint);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (const auto& e : g.out_edges(v)) {
      int w = g.target(e);
      if (!seen[w]) {
        seen[w] = 1;
        tree.push_back(e.pair);
        q.push(w);
      }
    }
  }
  std::sort(tree.begin(), tree.end());
  return tree;
}

// Exact rational coordinates in the fundamental-cycle basis.
struct CycleCoords {
  RVec y;

  bool operator==(const CycleCoords& o) const { return y == o.y; }
  bool operator!=(const CycleCoords& o) const { return y != o.y; }
};

class CycleBasis {
 public:
  explicit CycleBasis(const Graph& g) : vertex_count_(g.vertex_count()), pair_count_(g.pair_count()) {
    if (!is_connected(g)) throw DisconnectedError("CycleBasis: graph is disconnected");
    build_tree(g);
    build_basis(g);
    build_gram();
  }

  int m() const { return static_cast<int>(nontree_pairs_.size()); }
  int vertex_count() const { return vertex_count_; }
  int pair_count() const { return pair_count_; }

  const std::vector<int>& tree_edges() const { return tree_pairs_; }
  bool in_tree(int pair) const { return column_of_[pair] < 0; }
  const std::vector<int>& nontree_pairs() const { return nontree_pairs_; }
  int column_of(int pair) const { return column_of_[pair]; }

  // E x m matrix whose columns are the fundamental cycles; the non-tree row
  // of column j is +1 and all other non-tree rows of column j are 0.
  const LMat& basis_matrix() const { return basis_; }
  const LMat& gram() const { return gram_; }
  const RMat& gram_inverse() const { return gram_inverse_; }
  const Int& gram_det() const { return gram_det_; }
  // gram_inverse * gram_det; integral, used for denominator-free arithmetic.
  const IMat& gram_adjugate() const { return gram_adjugate_; }

  // Column j as a chain.
  Chain1 basis_chain(int j) const {
    Chain1 c;
    for (int p = 0; p < pair_count_; ++p) c.add_term(p, basis_[p][j]);
    return c;
  }

  // B^T c: determines the projection uniquely (G y = B^T c).
  LVec dual(const Chain1& c) const {
    LVec w(m(), 0);
    for (const auto& [p, k] : c.terms())
      for (int j = 0; j < m(); ++j) w[j] += k * basis_[p][j];
    return w;
  }

  // Numerator of the projection over the common denominator gram_det.
  IVec numerator(const Chain1& c) const {
    const LVec w = dual(c);
    IVec y(m(), 0);
    for (int i = 0; i < m(); ++i)
      for (int j = 0; j < m(); ++j) y[i] += gram_adjugate_[i][j] * w[j];
    return y;
  }

  // Unique path inside the tree.
  Path tree_path(int from, int to) const {
    check_vertex(from);
    check_vertex(to);
    std::vector<DirectedEdge> up_from, up_to;
    int a = from, b = to;
    while (depth_[a] > depth_[b]) {
      up_from.push_back(parent_edge_[a].inverse());
      a = parent_[a];
    }
    while (depth_[b] > depth_[a]) {
      up_to.push_back(parent_edge_[b]);
      b = parent_[b];
    }
    while (a != b) {
      up_from.push_back(parent_edge_[a].inverse());
      a = parent_[a];
      up_to.push_back(parent_edge_[b]);
      b = parent_[b];
    }
    Path p{from, std::move(up_from)};
    for (auto it = up_to.rbegin(); it != up_to.rend(); ++it) p.edges.push_back(*it);
    return p;
  }

 private:
  void check_vertex(int v) const {
    if (v < 0 || v >= vertex_count_) throw std::invalid_argument("CycleBasis: vertex out of range");
  }

  void build_tree(const Graph& g) {
    parent_.assign(vertex_count_, -1);
    parent_edge_.assign(vertex_count_, DirectedEdge{});
    depth_.assign(vertex_count_, 0);
    column_of_.assign(pair_count_, -2);
    if (vertex_count_ == 0) return;
    std::vector<char> seen(vertex_count_, 0);
    std::queue<int> q;
    seen[basepoint] = 1;
    q.push(basepoint);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (const auto& e : g.out_edges(v)) {
        int w = g.target(e);
        if (!seen[w]) {
          seen[w] = 1;
          parent_[w] = v;
          parent_edge_[w] = e;
          depth_[w] = depth_[v] + 1;
          tree_pairs_.push_back(e.pair);
          column_of_[e.pair] = -1;
          q.push(w);
        }
      }
    }
    std::sort(tree_pairs_.begin(), tree_pairs_.end());
  }

  void build_basis(const Graph& g) {
    for (int p = 0; p < pair_count_; ++p) {
      if (column_of_[p] == -2) {
        column_of_[p] = static_cast<int>(nontree_pairs_.size());
        nontree_pairs_.push_back(p);
      }
    }
    basis_.assign(pair_count_, LVec(m(), 0));
    for (int j = 0; j < m(); ++j) {
      const int p = nontree_pairs_[j];
      const auto& [u, w] = g.edge_pairs()[p];
      basis_[p][j] = 1;
      // close the cycle through the tree: w back to u
      const Path back = tree_path(w, u);
      for (const auto& e : back.edges) basis_[e.pair][j] += e.sign;
    }
  }

  void build_gram() {
    const int k = m();
    gram_.assign(k, LVec(k, 0));
    for (int i = 0; i < k; ++i)
      for (int j = i; j < k; ++j) {
        long long s = 0;
        for (int p = 0; p < pair_count_; ++p) s += basis_[p][i] * basis_[p][j];
        gram_[i][j] = gram_[j][i] = s;
      }
    gram_det_ = bareiss_determinant(gram_);
    if (k > 0 && gram_det_ <= 0)
      throw std::logic_error("CycleBasis: Gram determinant not positive");
    gram_inverse_ = rational_inverse(gram_);
    gram_adjugate_.assign(k, IVec(k, 0));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        const Rat scaled = gram_inverse_[i][j] * Rat(gram_det_);
        if (denominator(scaled) != 1)
          throw std::logic_error("CycleBasis: adjugate not integral");
        gram_adjugate_[i][j] = boost::multiprecision::numerator(scaled);
      }
  }

  int vertex_count_ = 0;
  int pair_count_ = 0;
  std::vector<int> tree_pairs_;
  std::vector<int> nontree_pairs_;
  std::vector<int> column_of_;  // pair -> column, or -1 for tree pairs
  LMat basis_;
  LMat gram_;
  RMat gram_inverse_;
  Int gram_det_;
  IMat gram_adjugate_;
  std::vector<int> parent_;
  std::vector<DirectedEdge> parent_edge_;
  std::vector<int> depth_;
};

inline CycleBasis cycle_basis(const Graph& g) { return CycleBasis(g); }

// Orthogonal projection onto the cycle space, y = G^-1 B^T c.
inline CycleCoords project(const CycleBasis& basis, const Chain1& c) {
  const IVec num = basis.numerator(c);
  CycleCoords out;
  out.y.resize(num.size());
  for (std::size_t i = 0; i < num.size(); ++i) out.y[i] = Rat(num[i], basis.gram_det());
  return out;
}

// Projection of a dense rational chain (one entry per edge pair).
inline CycleCoords project_rational(const CycleBasis& basis, const RVec& c) {
  if (static_cast<int>(c.size()) != basis.pair_count())
    throw std::invalid_argument("project_rational: wrong chain length");
  RVec w(basis.m(), Rat(0));
  for (int p = 0; p < basis.pair_count(); ++p) {
    if (c[p] == 0) continue;
    for (int j = 0; j < basis.m(); ++j)
      if (basis.basis_matrix()[p][j] != 0) w[j] += c[p] * basis.basis_matrix()[p][j];
  }
  CycleCoords out;
  out.y.assign(basis.m(), Rat(0));
  for (int i = 0; i < basis.m(); ++i)
    for (int j = 0; j < basis.m(); ++j)
      if (w[j] != 0) out.y[i] += basis.gram_inverse()[i][j] * w[j];
  return out;
}

// The projected chain B y, one rational per edge pair.
inline RVec embed_coords(const CycleBasis& basis, const CycleCoords& y) {
  RVec c(basis.pair_count(), Rat(0));
  for (int p = 0; p < basis.pair_count(); ++p)
    for (int j = 0; j < basis.m(); ++j)
      if (basis.basis_matrix()[p][j] != 0) c[p] += Rat(basis.basis_matrix()[p][j]) * y.y[j];
  return c;
}

// <y1, y2> in C1, i.e. y1^T G y2.
inline Rat inner_product(const CycleBasis& basis, const CycleCoords& y1, const CycleCoords& y2) {
  Rat s = 0;
  for (int i = 0; i < basis.m(); ++i) {
    if (y1.y[i] == 0) continue;
    for (int j = 0; j < basis.m(); ++j)
      if (y2.y[j] != 0) s += y1.y[i] * Rat(basis.gram()[i][j]) * y2.y[j];
  }
  return s;
}

inline Rat norm_sq(const CycleBasis& basis, const CycleCoords& y) {
  return inner_product(basis, y, y);
}

}  // namespace topocrystal
