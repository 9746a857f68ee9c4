#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "topocrystal/cover.hpp"
#include "topocrystal/cycle_space.hpp"

namespace topocrystal {

struct ZeroProjectionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline CycleCoords atom_position(const CycleBasis& basis, const Atom& a) {
  return project(basis, a.chain);
}

// Projected edge vector; bond_vector(e^-1) = -bond_vector(e), and the vectors
// out of any single vertex sum to zero.
inline CycleCoords bond_vector(const CycleBasis& basis, const DirectedEdge& e) {
  return project(basis, Chain1::edge(e));
}

inline Rat distance_sq(const CycleBasis& basis, const Atom& a, const Atom& b) {
  const CycleCoords ya = atom_position(basis, a);
  const CycleCoords yb = atom_position(basis, b);
  CycleCoords d;
  d.y.resize(basis.m());
  for (int i = 0; i < basis.m(); ++i) d.y[i] = yb.y[i] - ya.y[i];
  return norm_sq(basis, d);
}

// Exact angle data between two projected bonds: cos^2 plus the sign of the
// inner product, which determines the angle without leaving the rationals.
struct AngleCos {
  Rat cos_sq;
  int sign = 0;
};

inline AngleCos bond_angle_cos(const CycleBasis& basis, const DirectedEdge& e1,
                               const DirectedEdge& e2) {
  const CycleCoords u = bond_vector(basis, e1);
  const CycleCoords v = bond_vector(basis, e2);
  const Rat nu = norm_sq(basis, u);
  const Rat nv = norm_sq(basis, v);
  if (nu == 0 || nv == 0)
    throw ZeroProjectionError("bond_angle_cos: edge projects to zero (bridge)");
  const Rat dot = inner_product(basis, u, v);
  return {dot * dot / (nu * nv), rat_sign(dot)};
}

// Lower-triangular real M with M^T M = G, from the exact U D U^T
// factorization of G (elimination run bottom-up keeps M lower); square roots
// are the only floating step.
inline std::vector<std::vector<double>> float_frame(const CycleBasis& basis) {
  const int m = basis.m();
  RMat s(m, RVec(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) s[i][j] = basis.gram()[i][j];
  RMat u(m, RVec(m, Rat(0)));
  RVec d(m, Rat(0));
  for (int k = m - 1; k >= 0; --k) {
    d[k] = s[k][k];
    if (d[k] <= 0) throw std::logic_error("float_frame: Gram matrix not positive definite");
    u[k][k] = 1;
    for (int i = 0; i < k; ++i) u[i][k] = s[i][k] / d[k];
    for (int i = 0; i < k; ++i)
      for (int j = 0; j <= i; ++j) s[i][j] = s[j][i] = s[i][j] - u[i][k] * d[k] * u[j][k];
  }
  std::vector<std::vector<double>> frame(m, std::vector<double>(m, 0.0));
  for (int k = 0; k < m; ++k) {
    const double root = std::sqrt(d[k].convert_to<double>());
    for (int i = 0; i <= k; ++i) frame[k][i] = root * u[i][k].convert_to<double>();
  }
  return frame;
}

inline std::vector<double> to_float(const std::vector<std::vector<double>>& frame,
                                    const CycleCoords& y) {
  const int m = static_cast<int>(frame.size());
  std::vector<double> out(m, 0.0);
  for (int r = 0; r < m; ++r) {
    double s = 0;
    for (int c = 0; c <= r; ++c) s += frame[r][c] * y.y[c].convert_to<double>();
    out[r] = s;
  }
  return out;
}

struct EmbeddedFragment {
  const CrystalFragment* fragment = nullptr;
  std::vector<CycleCoords> positions;             // exact, per atom
  std::vector<std::vector<double>> frame;         // lower-triangular, M^T M = G
  std::vector<std::vector<double>> float_positions;
  std::vector<std::vector<int>> collision_groups; // atom ids sharing a position
};

// Positions for a whole fragment.  Position collisions (possible exactly when
// the graph has a bridge) are reported, not fatal.
inline EmbeddedFragment embed_fragment(const CrystalFragment& frag) {
  const CycleBasis& basis = *frag.basis;
  EmbeddedFragment ef;
  ef.fragment = &frag;
  ef.frame = float_frame(basis);
  ef.positions.reserve(frag.atoms.size());
  std::map<LVec, std::vector<int>> by_dual;
  for (int id = 0; id < static_cast<int>(frag.atoms.size()); ++id) {
    const Atom& a = frag.atoms[id];
    ef.positions.push_back(atom_position(basis, a));
    ef.float_positions.push_back(to_float(ef.frame, ef.positions.back()));
    by_dual[basis.dual(a.chain)].push_back(id);
  }
  for (auto& [key, ids] : by_dual)
    if (ids.size() > 1) ef.collision_groups.push_back(ids);
  return ef;
}

// --- exact segment intersection --------------------------------------------
//
// Do the closed segments [a,b] and [c,d] in Q^m share a point that is not a
// shared endpoint?  Exact: endpoints are rational, so solve the 2-unknown
// linear system on two independent coordinates and verify the rest, handling
// the parallel and collinear-overlap cases separately.

namespace detail {

inline RVec sub(const RVec& a, const RVec& b) {
  RVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Rat dot(const RVec& a, const RVec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace detail

inline bool segments_share_interior_point(const RVec& a, const RVec& b, const RVec& c,
                                          const RVec& d) {
  using detail::dot;
  using detail::sub;
  const RVec u = sub(b, a);
  const RVec v = sub(d, c);
  const RVec w = sub(c, a);
  const Rat uu = dot(u, u), vv = dot(v, v), uv = dot(u, v), uw = dot(u, w), vw = dot(v, w);
  auto point_of = [](const RVec& o, const RVec& dir, const Rat& t) {
    RVec p(o.size());
    for (std::size_t i = 0; i < o.size(); ++i) p[i] = o[i] + t * dir[i];
    return p;
  };
  if (uu == 0 && vv == 0) return false;  // two points; coincidence is endpoint sharing
  if (uu == 0 || vv == 0) {
    // one segment degenerates to a point: inside the other's interior?
    const RVec& p = uu == 0 ? a : c;
    const RVec& o = uu == 0 ? c : a;
    const RVec& dir = uu == 0 ? v : u;
    const Rat len = uu == 0 ? vv : uu;
    const Rat t = dot(dir, sub(p, o)) / len;
    return point_of(o, dir, t) == p && t > 0 && t < 1;
  }
  const Rat det = uu * vv - uv * uv;  // Cauchy-Schwarz: zero iff u, v parallel
  if (det != 0) {
    // s u - t v = w dotted with u and v gives a 2x2 system; the unique
    // candidate must then meet exactly in all m coordinates.
    const Rat s = (uw * vv - uv * vw) / det;
    const Rat t = (uv * uw - uu * vw) / det;
    if (point_of(a, u, s) != point_of(c, v, t)) return false;
    if (s < 0 || s > 1 || t < 0 || t > 1) return false;
    const bool endpoint_first = s == 0 || s == 1;
    const bool endpoint_second = t == 0 || t == 1;
    return !(endpoint_first && endpoint_second);
  }
  // parallel lines: a real intersection needs c and d on the first line
  const Rat tc = uw / uu;
  if (point_of(a, u, tc) != c) return false;
  const Rat td = dot(u, sub(d, a)) / uu;
  if (point_of(a, u, td) != d) return false;
  const Rat lo = tc < td ? tc : td;
  const Rat hi = tc < td ? td : tc;
  const Rat start = lo > 0 ? lo : Rat(0);
  const Rat end = hi < 1 ? hi : Rat(1);
  if (start > end) return false;
  if (start < end) return true;  // collinear overlap of positive length
  // single touch point: bad unless it is an endpoint of both segments
  const bool interior_first = start > 0 && start < 1;
  const bool interior_second = start != tc && start != td;
  return interior_first || interior_second;
}

}  // namespace topocrystal
