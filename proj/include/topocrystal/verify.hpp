#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "topocrystal/chain.hpp"
#include "topocrystal/cover.hpp"
#include "topocrystal/cycle_space.hpp"
#include "topocrystal/decompose.hpp"
#include "topocrystal/embed.hpp"
#include "topocrystal/graph.hpp"
#include "topocrystal/numeric.hpp"
#include "topocrystal/packing.hpp"
#include "topocrystal/symmetry.hpp"

// The self-check suite.  Every check is deterministic: random draws are
// seeded by a hash of the graph text, so re-feeding a counterexample's graph
// reproduces its failure exactly.

namespace topocrystal {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;  // skip note or failure description
};

struct VerifyReport {
  int radius = 0;
  bool bridgeless = true;
  std::vector<CheckResult> checks;
  nlohmann::ordered_json counterexample;  // null unless some check failed

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

namespace detail {

struct CheckFailure {
  std::string detail;
  nlohmann::ordered_json data;
};
using CheckOutcome = std::optional<CheckFailure>;

inline Path random_path(const Graph& g, SplitMix64& rng, int max_len) {
  Path p;
  p.start = static_cast<int>(rng.below(g.vertex_count()));
  int v = p.start;
  const int len = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_len) + 1));
  for (int i = 0; i < len; ++i) {
    const auto& out = g.out_edges(v);
    if (out.empty()) break;
    const DirectedEdge e = out[rng.below(out.size())];
    p.edges.push_back(e);
    v = g.target(e);
  }
  return p;
}

inline Chain1 random_chain(const Graph& g, SplitMix64& rng, int bound) {
  Chain1 c;
  for (int p = 0; p < g.pair_count(); ++p)
    c.add_term(p, static_cast<long long>(rng.below(2 * bound + 1)) - bound);
  return c;
}

// Random integral cycle: integer combination of the fundamental cycles.
inline Chain1 random_cycle(const CycleBasis& basis, SplitMix64& rng, int bound) {
  Chain1 z;
  for (int j = 0; j < basis.m(); ++j) {
    const long long k = static_cast<long long>(rng.below(2 * bound + 1)) - bound;
    if (k == 0) continue;
    const Chain1 bj = basis.basis_chain(j);
    for (const auto& [p, c0] : bj.terms()) z.add_term(p, k * c0);
  }
  return z;
}

inline nlohmann::ordered_json chain_json(const Chain1& c, int pair_count) {
  return nlohmann::ordered_json(dense(c, pair_count));
}

inline nlohmann::ordered_json coords_json(const CycleCoords& y) {
  std::vector<std::string> s;
  s.reserve(y.y.size());
  for (const Rat& r : y.y) s.push_back(rat_str(r));
  return nlohmann::ordered_json(s);
}

inline bool simple_path(const Graph& g, const Path& p) {
  std::vector<int> seen;
  seen.push_back(p.start);
  int v = p.start;
  for (const auto& e : p.edges) {
    if (g.source(e) != v) return false;
    v = g.target(e);
    for (int u : seen)
      if (u == v) return false;
    seen.push_back(v);
  }
  return true;
}

// Base vertex exactly twice (start and end), every other vertex at most once.
inline bool simple_loop(const Graph& g, const Path& p) {
  if (p.edges.empty()) return false;
  int v = p.start;
  std::vector<int> interior;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    if (g.source(p.edges[i]) != v) return false;
    v = g.target(p.edges[i]);
    if (i + 1 < p.edges.size()) {
      if (v == p.start) return false;
      for (int u : interior)
        if (u == v) return false;
      interior.push_back(v);
    }
  }
  return v == p.start;
}

}  // namespace detail

inline VerifyReport verify_suite(const Graph& g, int radius) {
  using detail::CheckFailure;
  using detail::CheckOutcome;
  using nlohmann::ordered_json;

  if (radius < 0) throw std::invalid_argument("verify_suite: negative radius");
  if (g.vertex_count() == 0) throw std::invalid_argument("verify_suite: empty graph");
  if (!is_connected(g)) throw DisconnectedError("verify_suite: graph is disconnected");

  const std::string gtext = format_graph(g);
  const std::uint64_t seed = fnv1a(gtext);
  const std::vector<int> bridges = find_bridges(g);

  VerifyReport rep;
  rep.radius = radius;
  rep.bridgeless = bridges.empty();

  const CycleBasis basis(g);
  const int m = basis.m();
  const CrystalFragment frag = ball(g, basis, radius);
  const EmbeddedFragment emb = embed_fragment(frag);

  // symmetry checks reuse a radius-3 window; larger balls only add cost
  const int sym_radius = radius < 3 ? radius : 3;
  CrystalFragment sym_frag_store;
  const CrystalFragment* sym_frag = &frag;
  if (sym_radius != radius) {
    sym_frag_store = ball(g, basis, sym_radius);
    sym_frag = &sym_frag_store;
  }

  auto run = [&](const std::string& name, auto body) {
    CheckResult res{name, true, {}};
    CheckOutcome out;
    try {
      out = body();
    } catch (const std::exception& e) {
      out = CheckFailure{std::string("exception: ") + e.what(), {}};
    }
    if (out) {
      res.passed = false;
      res.detail = out->detail;
      if (rep.counterexample.is_null()) {
        ordered_json ce;
        ce["check"] = name;
        ce["radius"] = radius;
        ce["graph"] = gtext;
        ce["detail"] = out->detail;
        if (!out->data.is_null()) ce["data"] = out->data;
        rep.counterexample = std::move(ce);
      }
    }
    rep.checks.push_back(std::move(res));
  };
  auto skip = [&](const std::string& name, const std::string& why) {
    rep.checks.push_back({name, true, "skipped: " + why});
  };

  const int max_len = 2 * g.pair_count() + 3;

  // --- chains and projection ------------------------------------------------

  run("path-boundary", [&]() -> CheckOutcome {
    SplitMix64 rng(seed ^ 0x01ull);
    for (int t = 0; t < 1000; ++t) {
      const Path p = detail::random_path(g, rng, max_len);
      const Chain0 b = boundary(g, path_chain(g, p));
      const int end = path_end(g, p);
      for (int v = 0; v < g.vertex_count(); ++v) {
        const long long want = (v == end ? 1 : 0) - (v == p.start ? 1 : 0);
        if (b[v] != want)
          return CheckFailure{"boundary of a path chain is not endpoint minus start",
                              {{"path", path_word(p)}}};
      }
    }
    return {};
  });

  run("projection-idempotent", [&]() -> CheckOutcome {
    SplitMix64 rng(seed ^ 0x02ull);
    for (int t = 0; t < 200; ++t) {
      Chain1 c;
      CycleCoords want;
      want.y.assign(m, Rat(0));
      for (int j = 0; j < m; ++j) {
        const long long k = static_cast<long long>(rng.below(9)) - 4;
        want.y[j] = k;
        if (k == 0) continue;
        const Chain1 bj = basis.basis_chain(j);
        for (const auto& [p, c0] : bj.terms()) c.add_term(p, k * c0);
      }
      if (project(basis, c) != want)
        return CheckFailure{"projection of an integral cycle moved it",
                            {{"chain", detail::chain_json(c, g.pair_count())}}};
    }
    return {};
  });

  run("projection-orthogonal", [&]() -> CheckOutcome {
    SplitMix64 rng(seed ^ 0x03ull);
    for (int t = 0; t < 200; ++t) {
      const Chain1 c = detail::random_chain(g, rng, 4);
      const CycleCoords y = project(basis, c);
      const RVec py = embed_coords(basis, y);
      for (int j = 0; j < m; ++j) {
        Rat s = 0;
        for (int p = 0; p < g.pair_count(); ++p)
          if (basis.basis_matrix()[p][j] != 0)
            s += (Rat(c.coeff(p)) - py[p]) * basis.basis_matrix()[p][j];
        if (s != 0)
          return CheckFailure{"projection residual meets a basis cycle",
                              {{"chain", detail::chain_json(c, g.pair_count())},
                               {"column", j},
                               {"pairing", rat_str(s)}}};
      }
    }
    return {};
  });

  run("pythagoras", [&]() -> CheckOutcome {
    SplitMix64 rng(seed ^ 0x04ull);
    for (int t = 0; t < 200; ++t) {
      const Chain1 c = detail::random_chain(g, rng, 4);
      const CycleCoords y = project(basis, c);
      const RVec py = embed_coords(basis, y);
      Rat resid = 0;
      for (int p = 0; p < g.pair_count(); ++p) {
        const Rat d = Rat(c.coeff(p)) - py[p];
        resid += d * d;
      }
      if (Rat(chain_dot(c, c)) != norm_sq(basis, y) + resid)
        return CheckFailure{"norm of a chain is not cycle part plus residual",
                            {{"chain", detail::chain_json(c, g.pair_count())}}};
    }
    return {};
  });

  run("projection-pairing", [&]() -> CheckOutcome {
    SplitMix64 rng(seed ^ 0x05ull);
    for (int t = 0; t < 200; ++t) {
      const Chain1 c = detail::random_chain(g, rng, 4);
      const CycleCoords y = project(basis, c);
      const RVec py = embed_coords(basis, y);
      for (int j = 0; j < m; ++j) {
        const Chain1 bj = basis.basis_chain(j);
        Rat lhs = 0;
        for (const auto& [p, k] : bj.terms()) lhs += py[p] * k;
        if (lhs != Rat(chain_dot(c, bj)))
          return CheckFailure{"projection changed a pairing with a cycle",
                              {{"chain", detail::chain_json(c, g.pair_count())}, {"column", j}}};
      }
    }
    return {};
  });

  run("gram-positive", [&]() -> CheckOutcome {
    if (m >= 1 && basis.gram_det() <= 0)
      return CheckFailure{"Gram determinant is not positive",
                          {{"det", basis.gram_det().str()}}};
    return {};
  });

  // --- decomposition --------------------------------------------------------
  // the four decomposition checks deliberately share one path stream

  auto each_random_decomposition = [&](auto visit) -> CheckOutcome {
    SplitMix64 rng(seed ^ 0x06ull);
    for (int t = 0; t < 1000; ++t) {
      const Path p = detail::random_path(g, rng, max_len);
      const PathDecomposition dec = decompose_path_chain(g, p);
      CheckOutcome out = visit(p, dec);
      if (out) return out;
    }
    return {};
  };

  run("decompose-resum", [&]() -> CheckOutcome {
    return each_random_decomposition([&](const Path& p, const PathDecomposition& dec) -> CheckOutcome {
      Chain1 sum = path_chain(g, dec.simple_path);
      for (const Path& loop : dec.simple_loops) sum += path_chain(g, loop);
      if (sum != path_chain(g, p))
        return CheckFailure{"decomposition parts do not resum to the input chain",
                            {{"path", path_word(p)}}};
      return {};
    });
  });

  run("decompose-simple", [&]() -> CheckOutcome {
    return each_random_decomposition([&](const Path& p, const PathDecomposition& dec) -> CheckOutcome {
      if (!detail::simple_path(g, dec.simple_path))
        return CheckFailure{"decomposition path part is not simple", {{"path", path_word(p)}}};
      for (const Path& loop : dec.simple_loops)
        if (!detail::simple_loop(g, loop))
          return CheckFailure{"decomposition loop part is not simple",
                              {{"path", path_word(p)}, {"loop", path_word(loop)}}};
      return {};
    });
  });

  run("decompose-support", [&]() -> CheckOutcome {
    return each_random_decomposition([&](const Path& p, const PathDecomposition& dec) -> CheckOutcome {
      const Chain1 c = path_chain(g, p);
      std::vector<Chain1> parts;
      parts.push_back(path_chain(g, dec.simple_path));
      for (const Path& loop : dec.simple_loops) parts.push_back(path_chain(g, loop));
      for (const Chain1& q : parts)
        for (const auto& [pair, k] : q.terms()) {
          const long long ck = c.coeff(pair);
          const bool ok = (ck > 0 && k >= 0) || (ck < 0 && k <= 0);
          if (!ok)
            return CheckFailure{"decomposition part leaves the input support",
                                {{"path", path_word(p)}, {"pair", pair}}};
        }
      return {};
    });
  });

  run("decompose-budget", [&]() -> CheckOutcome {
    return each_random_decomposition([&](const Path& p, const PathDecomposition& dec) -> CheckOutcome {
      const Chain1 c = path_chain(g, p);
      long long budget = 0;
      for (const auto& [pair, k] : c.terms()) budget += k < 0 ? -k : k;
      if (static_cast<long long>(dec.simple_loops.size()) > budget)
        return CheckFailure{"more loops than the coefficient budget allows",
                            {{"path", path_word(p)}, {"loops", dec.simple_loops.size()}}};
      return {};
    });
  });

  if (rep.bridgeless) {
    run("witness-pairing", [&]() -> CheckOutcome {
      SplitMix64 rng(seed ^ 0x07ull);
      for (int t = 0; t < 1000; ++t) {
        const Path p = detail::random_path(g, rng, max_len);
        const Chain1 c = path_chain(g, p);
        if (c.zero()) continue;
        const Chain1 z = witness_cycle(g, p);
        if (!is_cycle(g, z))
          return CheckFailure{"witness is not a cycle", {{"path", path_word(p)}}};
        if (chain_dot(z, c) < 1)
          return CheckFailure{"witness pairs below 1 with the path chain",
                              {{"path", path_word(p)},
                               {"witness", detail::chain_json(z, g.pair_count())},
                               {"pairing", chain_dot(z, c).str()}}};
      }
      return {};
    });
  } else {
    run("witness-bridge-detect", [&]() -> CheckOutcome {
      const int b = bridges.front();
      const Path p{g.edge_pairs()[b].first, {DirectedEdge{b, +1}}};
      try {
        witness_cycle(g, p);
      } catch (const BridgePresentError&) {
        return {};
      }
      return CheckFailure{"witness construction did not refuse a bridged graph",
                          {{"bridge", b}}};
    });
  }

  // --- cover fragments ------------------------------------------------------

  run("fiber-cycles", [&]() -> CheckOutcome {
    for (std::size_t id = 0; id < frag.atoms.size(); ++id) {
      const Atom& a = frag.atoms[id];
      if ((a.vertex == basepoint) != is_cycle(g, a.chain))
        return CheckFailure{"fiber over the basepoint disagrees with cycle chains",
                            {{"atom", id}, {"chain", detail::chain_json(a.chain, g.pair_count())}}};
    }
    return {};
  });

  if (m == 0) {
    skip("deck-free", "trivial cycle lattice");
  } else {
    run("deck-free", [&]() -> CheckOutcome {
      SplitMix64 rng(seed ^ 0x08ull);
      for (int t = 0; t < 100; ++t) {
        Chain1 z = detail::random_cycle(basis, rng, 3);
        if (z.zero()) continue;
        const Atom& a = frag.atoms[rng.below(frag.atoms.size())];
        if (translate_atom(g, a, z) == a)
          return CheckFailure{"nonzero deck translation fixed an atom",
                              {{"cycle", detail::chain_json(z, g.pair_count())}}};
      }
      return {};
    });
  }

  run("cover-degree", [&]() -> CheckOutcome {
    std::vector<int> inc(frag.atoms.size(), 0);
    for (const Bond& b : frag.bonds) {
      ++inc[b.from];
      ++inc[b.to];
    }
    for (std::size_t id = 0; id < frag.atoms.size(); ++id) {
      if (frag.depth[id] >= frag.radius) continue;
      const int want = static_cast<int>(g.out_edges(frag.atoms[id].vertex).size());
      if (inc[id] != want)
        return CheckFailure{"interior atom does not have the full bond star",
                            {{"atom", id}, {"degree", inc[id]}, {"expected", want}}};
    }
    return {};
  });

  run("ball-monotone", [&]() -> CheckOutcome {
    if (radius == 0) return {};
    const CrystalFragment prev = ball(g, basis, radius - 1);
    if (prev.atoms.size() > frag.atoms.size())
      return CheckFailure{"smaller ball has more atoms", {}};
    for (std::size_t id = 0; id < prev.atoms.size(); ++id)
      if (!(prev.atoms[id] == frag.atoms[id]))
        return CheckFailure{"smaller ball is not a prefix of the larger one",
                            {{"atom", id}}};
    return {};
  });

  // --- embedding ------------------------------------------------------------

  if (rep.bridgeless) {
    run("injective", [&]() -> CheckOutcome {
      if (!emb.collision_groups.empty()) {
        const auto& grp = emb.collision_groups.front();
        return CheckFailure{"two atoms of a bridgeless graph share a position",
                            {{"atoms", grp},
                             {"chain_a", detail::chain_json(frag.atoms[grp[0]].chain, g.pair_count())},
                             {"chain_b", detail::chain_json(frag.atoms[grp[1]].chain, g.pair_count())},
                             {"coords", detail::coords_json(emb.positions[grp[0]])}}};
      }
      return {};
    });
  } else {
    run("bridge-collision", [&]() -> CheckOutcome {
      for (int b : bridges) {
        const CycleCoords v = bond_vector(basis, DirectedEdge{b, +1});
        for (const Rat& r : v.y)
          if (r != 0)
            return CheckFailure{"bridge has a nonzero projected bond vector",
                                {{"bridge", b}, {"coords", detail::coords_json(v)}}};
      }
      return {};
    });
  }

  run("sum-zero", [&]() -> CheckOutcome {
    for (int x = 0; x < g.vertex_count(); ++x) {
      RVec s(m, Rat(0));
      for (const auto& e : g.out_edges(x)) {
        const CycleCoords v = bond_vector(basis, e);
        for (int i = 0; i < m; ++i) s[i] += v.y[i];
      }
      for (int i = 0; i < m; ++i)
        if (s[i] != 0)
          return CheckFailure{"bond vectors out of a vertex do not sum to zero",
                              {{"vertex", x}}};
    }
    return {};
  });

  run("translate-covariance", [&]() -> CheckOutcome {
    SplitMix64 rng(seed ^ 0x09ull);
    for (int t = 0; t < 50; ++t) {
      const Atom& a = frag.atoms[rng.below(frag.atoms.size())];
      const Chain1 z = detail::random_cycle(basis, rng, 3);
      const CycleCoords lhs = atom_position(basis, translate_atom(g, a, z));
      const CycleCoords ya = atom_position(basis, a);
      const CycleCoords yz = project(basis, z);
      CycleCoords want;
      want.y.resize(m);
      for (int i = 0; i < m; ++i) want.y[i] = ya.y[i] + yz.y[i];
      if (lhs != want)
        return CheckFailure{"translation does not shift positions by the cycle",
                            {{"cycle", detail::chain_json(z, g.pair_count())}}};
    }
    return {};
  });

  if (!rep.bridgeless) {
    skip("segment-interiors", "positions collide when bridges are present");
  } else {
    run("segment-interiors", [&]() -> CheckOutcome {
      const CrystalFragment& sf = *sym_frag;
      std::vector<std::pair<const RVec*, const RVec*>> seg;
      std::vector<std::pair<int, int>> ends;
      std::vector<CycleCoords> pos(sf.atoms.size());
      for (std::size_t id = 0; id < sf.atoms.size(); ++id)
        pos[id] = atom_position(basis, sf.atoms[id]);
      for (const Bond& b : sf.bonds) {
        seg.push_back({&pos[b.from].y, &pos[b.to].y});
        ends.push_back({b.from, b.to});
      }
      auto meet = [&](std::size_t i, std::size_t j) -> CheckOutcome {
        if (segments_share_interior_point(*seg[i].first, *seg[i].second, *seg[j].first,
                                          *seg[j].second))
          return CheckFailure{"two bond segments meet off their shared endpoints",
                              {{"bond_a", {ends[i].first, ends[i].second}},
                               {"bond_b", {ends[j].first, ends[j].second}}}};
        return {};
      };
      if (m <= 2) {
        for (std::size_t i = 0; i < seg.size(); ++i)
          for (std::size_t j = i + 1; j < seg.size(); ++j)
            if (CheckOutcome out = meet(i, j)) return out;
      } else if (seg.size() >= 2) {
        SplitMix64 rng(seed ^ 0x0aull);
        for (int t = 0; t < 200; ++t) {
          const std::size_t i = rng.below(seg.size());
          const std::size_t j = rng.below(seg.size());
          if (i == j) continue;
          if (CheckOutcome out = meet(i, j)) return out;
        }
      }
      return {};
    });
  }

  run("float-frame", [&]() -> CheckOutcome {
    SplitMix64 rng(seed ^ 0x0bull);
    for (int t = 0; t < 50; ++t) {
      const std::size_t i = rng.below(frag.atoms.size());
      const std::size_t j = rng.below(frag.atoms.size());
      const Rat exact = distance_sq(basis, frag.atoms[i], frag.atoms[j]);
      double fl = 0;
      for (int k = 0; k < m; ++k) {
        const double d = emb.float_positions[i][k] - emb.float_positions[j][k];
        fl += d * d;
      }
      const double ex = static_cast<double>(exact);
      const double scale = std::abs(ex) > 1.0 ? std::abs(ex) : 1.0;
      if (std::abs(ex - fl) > 1e-9 * scale)
        return CheckFailure{"float frame drifts from the exact metric",
                            {{"atoms", {i, j}}, {"exact", rat_str(exact)}, {"float", fl}}};
    }
    return {};
  });

  // --- lattice counts -------------------------------------------------------

  run("laplacian-gram", [&]() -> CheckOutcome {
    const Int trees = spanning_tree_count(g);
    if (trees != basis.gram_det())
      return CheckFailure{"tree count disagrees with the Gram determinant",
                          {{"trees", trees.str()}, {"gram_det", basis.gram_det().str()}}};
    return {};
  });

  run("snf-product", [&]() -> CheckOutcome {
    Int prod = 1;
    for (const Int& d : smith_normal_form(basis.gram(), basis.gram_det())) prod *= d;
    if (prod != basis.gram_det())
      return CheckFailure{"invariant factor product disagrees with det G",
                          {{"product", prod.str()}, {"gram_det", basis.gram_det().str()}}};
    return {};
  });

  run("dual-lattice", [&]() -> CheckOutcome {
    for (int p = 0; p < g.pair_count(); ++p) {
      const Chain1 e = Chain1::edge(DirectedEdge{p, +1});
      const RVec pe = embed_coords(basis, project(basis, e));
      for (int j = 0; j < m; ++j) {
        const Chain1 bj = basis.basis_chain(j);
        Rat lhs = 0;
        for (const auto& [q, k] : bj.terms()) lhs += pe[q] * k;
        if (lhs != Rat(chain_dot(e, bj)))
          return CheckFailure{"projected edge pairs non-integrally with a cycle",
                              {{"pair", p}, {"column", j}, {"pairing", rat_str(lhs)}}};
      }
    }
    return {};
  });

  if (!rep.bridgeless) {
    skip("residue-count", "count equals the vertex count only without bridges");
  } else {
    run("residue-count", [&]() -> CheckOutcome {
      const int diam = diameter(g);
      const CrystalFragment* rf = &frag;
      CrystalFragment store;
      if (radius < diam) {
        store = ball(g, basis, diam);
        rf = &store;
      }
      const int count = atom_residue_count(*rf, basis);
      if (count != g.vertex_count())
        return CheckFailure{"residue classes do not match the vertex count",
                            {{"residues", count}, {"vertices", g.vertex_count()}}};
      return {};
    });
  }

  // --- symmetries -----------------------------------------------------------

  std::vector<Automorphism> aut;
  bool have_aut = g.vertex_count() <= 64;
  std::string aut_why = "more than 64 vertices";
  if (have_aut) {
    try {
      aut = automorphisms(g, 200000);
    } catch (const std::length_error&) {
      have_aut = false;
      aut_why = "automorphism group above the enumeration cap";
    }
  }

  if (!have_aut) {
    for (const char* name :
         {"lift-section", "equivariance", "bond-equivariance", "isometry", "affine-compose"})
      skip(name, aut_why);
  } else {
    std::vector<Automorphism> gens = generating_set(aut);
    std::vector<CoveringSymmetry> lifts;
    lifts.reserve(gens.size());
    for (const Automorphism& f : gens) lifts.push_back(canonical_lift(g, basis, f));

    run("lift-section", [&]() -> CheckOutcome {
      for (std::size_t i = 0; i < gens.size(); ++i) {
        if (!(lifts[i].base == gens[i]))
          return CheckFailure{"lift does not project back to its automorphism", {{"generator", i}}};
        const Chain0 b = boundary(g, lifts[i].beta);
        const int fx = gens[i].apply(basepoint);
        for (int v = 0; v < g.vertex_count(); ++v) {
          const long long want = (v == fx ? 1 : 0) - (v == basepoint ? 1 : 0);
          if (b[v] != want)
            return CheckFailure{"lift chain has the wrong boundary", {{"generator", i}}};
        }
      }
      // kernel side: fiber atoms come exactly from deck translations
      for (std::size_t id = 0; id < sym_frag->atoms.size(); ++id) {
        const Atom& a = sym_frag->atoms[id];
        if (a.vertex != basepoint) continue;
        const CoveringSymmetry s = deck_symmetry(g, a.chain);
        if (!s.base.is_identity() ||
            !(apply_cover_symmetry(s, base_atom(g)) == a))
          return CheckFailure{"deck translation misses a fiber atom", {{"atom", id}}};
      }
      return {};
    });

    run("equivariance", [&]() -> CheckOutcome {
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const AffineMap map = affine_action(basis, lifts[i]);
        for (std::size_t id = 0; id < sym_frag->atoms.size(); ++id) {
          const Atom& a = sym_frag->atoms[id];
          const CycleCoords lhs = atom_position(basis, apply_cover_symmetry(lifts[i], a));
          const CycleCoords rhs = apply(map, atom_position(basis, a));
          if (lhs != rhs)
            return CheckFailure{"affine map disagrees with the atom action",
                                {{"generator", i},
                                 {"atom", id},
                                 {"chain", detail::chain_json(a.chain, g.pair_count())}}};
        }
      }
      return {};
    });

    run("bond-equivariance", [&]() -> CheckOutcome {
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const AffineMap map = affine_action(basis, lifts[i]);
        for (const Bond& b : sym_frag->bonds) {
          const Atom& from = sym_frag->atoms[b.from];
          const Atom& to = sym_frag->atoms[b.to];
          const Atom ifrom = apply_cover_symmetry(lifts[i], from);
          const Atom ito = apply_cover_symmetry(lifts[i], to);
          const DirectedEdge ie = gens[i].apply(DirectedEdge{b.pair, +1});
          if (!(ito.chain == ifrom.chain + Chain1::edge(ie)))
            return CheckFailure{"image of a bond is not a bond",
                                {{"generator", i}, {"bond", {b.from, b.to}}}};
          // affine maps must take the midpoint to the midpoint, exactly
          const CycleCoords ya = atom_position(basis, from);
          const CycleCoords yb = atom_position(basis, to);
          CycleCoords mid;
          mid.y.resize(m);
          for (int k = 0; k < m; ++k) mid.y[k] = (ya.y[k] + yb.y[k]) / 2;
          const CycleCoords ia = apply(map, ya);
          const CycleCoords ib = apply(map, yb);
          const CycleCoords imid = apply(map, mid);
          for (int k = 0; k < m; ++k)
            if (imid.y[k] != (ia.y[k] + ib.y[k]) / 2)
              return CheckFailure{"bond midpoint breaks equivariance",
                                  {{"generator", i}, {"bond", {b.from, b.to}}}};
        }
      }
      return {};
    });

    run("isometry", [&]() -> CheckOutcome {
      // affine_action verifies F^T G F = G itself; on top of that F must be a
      // lattice automorphism
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const AffineMap map = affine_action(basis, lifts[i]);
        const Int det = bareiss_determinant(map.linear);
        if (det != 1 && det != -1)
          return CheckFailure{"linear part is not a lattice automorphism",
                              {{"generator", i}, {"det", det.str()}}};
      }
      return {};
    });

    run("affine-compose", [&]() -> CheckOutcome {
      for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = 0; j < gens.size(); ++j) {
          const CoveringSymmetry both = compose_symmetries(lifts[i], lifts[j]);
          const AffineMap direct = affine_action(basis, both);
          const AffineMap composed =
              compose(affine_action(basis, lifts[i]), affine_action(basis, lifts[j]));
          if (!(direct == composed))
            return CheckFailure{"affine action does not respect composition",
                                {{"generators", {i, j}}}};
        }
      return {};
    });
  }

  return rep;
}

}  // namespace topocrystal
