#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "topocrystal/graph.hpp"
#include "topocrystal/numeric.hpp"

namespace topocrystal {

// Integral 1-chain: a formal sum of edge pairs.  Stored sparsely as
// (pair, coefficient) terms, ordered by pair id, with no zero coefficients;
// that makes the representation canonical, so equality, ordering and hashing
// of chains are plain vector operations.  e^-1 contributes -1 to its pair.
class Chain1 {
 public:
  Chain1() = default;

  static Chain1 edge(const DirectedEdge& e, long long k = 1) {
    Chain1 c;
    if (k * e.sign != 0) c.terms_.push_back({e.pair, k * e.sign});
    return c;
  }

  const std::vector<std::pair<int, long long>>& terms() const { return terms_; }
  bool zero() const { return terms_.empty(); }

  long long coeff(int pair) const {
    for (const auto& [p, k] : terms_) {
      if (p == pair) return k;
      if (p > pair) break;
    }
    return 0;
  }

  void add_edge(const DirectedEdge& e, long long k = 1) { add_term(e.pair, k * e.sign); }

  void add_term(int pair, long long k) {
    if (k == 0) return;
    auto it = terms_.begin();
    while (it != terms_.end() && it->first < pair) ++it;
    if (it != terms_.end() && it->first == pair) {
      it->second += k;
      if (it->second == 0) terms_.erase(it);
    } else {
      terms_.insert(it, {pair, k});
    }
  }

  Chain1& operator+=(const Chain1& o) {
    for (const auto& [p, k] : o.terms_) add_term(p, k);
    return *this;
  }
  Chain1& operator-=(const Chain1& o) {
    for (const auto& [p, k] : o.terms_) add_term(p, -k);
    return *this;
  }
  friend Chain1 operator+(Chain1 a, const Chain1& b) { return a += b; }
  friend Chain1 operator-(Chain1 a, const Chain1& b) { return a -= b; }
  Chain1 operator-() const {
    Chain1 c = *this;
    for (auto& [p, k] : c.terms_) k = -k;
    return c;
  }

  bool operator==(const Chain1& o) const { return terms_ == o.terms_; }
  bool operator!=(const Chain1& o) const { return terms_ != o.terms_; }
  bool operator<(const Chain1& o) const { return terms_ < o.terms_; }

 private:
  std::vector<std::pair<int, long long>> terms_;
};

inline LVec dense(const Chain1& c, int pair_count) {
  LVec v(pair_count, 0);
  for (const auto& [p, k] : c.terms()) v[p] = k;
  return v;
}

inline Chain1 from_dense(const LVec& v) {
  Chain1 c;
  for (int p = 0; p < static_cast<int>(v.size()); ++p) c.add_term(p, v[p]);
  return c;
}

// <.,.> on C1 with the edge pairs orthonormal.
inline Int chain_dot(const Chain1& a, const Chain1& b) {
  Int s = 0;
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  while (ia != a.terms().end() && ib != b.terms().end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      s += Int(ia->second) * ib->second;
      ++ia;
      ++ib;
    }
  }
  return s;
}

// 0-chains are dense; vertex counts stay tiny.
using Chain0 = std::vector<long long>;

// boundary(e) = target - source; self-loops cancel.
inline Chain0 boundary(const Graph& g, const Chain1& c) {
  Chain0 b(g.vertex_count(), 0);
  for (const auto& [p, k] : c.terms()) {
    const auto& [u, w] = g.edge_pairs()[p];
    b[w] += k;
    b[u] -= k;
  }
  return b;
}

inline bool is_cycle(const Graph& g, const Chain1& c) {
  for (const auto& [p, k] : c.terms()) {
    (void)k;
    if (p < 0 || p >= g.pair_count()) throw std::invalid_argument("is_cycle: pair out of range");
  }
  const Chain0 b = boundary(g, c);
  for (long long v : b)
    if (v != 0) return false;
  return true;
}

// Adjoint of the boundary: the sum of edges into x.  For a self-loop both
// orientations point into x and cancel, so loops contribute nothing.
inline Chain1 adjoint_boundary(const Graph& g, int x) {
  if (x < 0 || x >= g.vertex_count())
    throw std::invalid_argument("adjoint_boundary: vertex out of range");
  Chain1 c;
  for (int p = 0; p < g.pair_count(); ++p) {
    const auto& [u, w] = g.edge_pairs()[p];
    long long k = (w == x ? 1 : 0) - (u == x ? 1 : 0);
    c.add_term(p, k);
  }
  return c;
}

inline Chain1 path_chain(const Graph& g, const Path& p) {
  validate_path(g, p);
  Chain1 c;
  for (const auto& e : p.edges) c.add_edge(e);
  return c;
}

}  // namespace topocrystal
