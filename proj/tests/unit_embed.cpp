#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "support/corpus.hpp"
#include "topocrystal/embed.hpp"

using namespace topocrystal;
using Catch::Matchers::WithinAbs;

namespace {

Chain1 random_cycle(SplitMix64& rng, const CycleBasis& basis) {
  Chain1 c;
  for (int j = 0; j < basis.m(); ++j) {
    const long long k = static_cast<long long>(rng.below(5)) - 2;
    if (k == 0) continue;
    const Chain1 bj = basis.basis_chain(j);
    for (const auto& [p, c0] : bj.terms()) c.add_term(p, k * c0);
  }
  return c;
}

RVec q(std::initializer_list<long long> v) {
  RVec r;
  for (long long x : v) r.emplace_back(x);
  return r;
}

}  // namespace

TEST_CASE("theta bonds form the honeycomb angles", "[embed]") {
  const Graph theta = parse_graph("e 0 1\ne 0 1\ne 0 1\n");
  const CycleBasis basis(theta);
  const CycleCoords y0 = bond_vector(basis, {0, +1});
  CHECK(y0.y == RVec{Rat(-1, 3), Rat(-1, 3)});
  CHECK(norm_sq(basis, y0) == Rat(2, 3));
  const AngleCos ac = bond_angle_cos(basis, {0, +1}, {1, +1});
  CHECK(ac.cos_sq == Rat(1, 4));
  CHECK(ac.sign == -1);  // cos = -1/2, the 120 degree honeycomb angle
  const AngleCos same = bond_angle_cos(basis, {0, +1}, {0, +1});
  CHECK(same.cos_sq == 1);
  CHECK(same.sign == 1);
}

TEST_CASE("complete graph bonds meet at the diamond-like angle", "[embed]") {
  const Graph k4 = parse_graph("e 0 1\ne 0 2\ne 0 3\ne 1 2\ne 1 3\ne 2 3\n");
  const CycleBasis basis(k4);
  const CrystalFragment f = ball(k4, basis, 1);
  for (const Bond& b : f.bonds)
    CHECK(distance_sq(basis, f.atoms[b.from], f.atoms[b.to]) == Rat(1, 2));
  const AngleCos ac = bond_angle_cos(basis, {0, +1}, {1, +1});
  CHECK(ac.cos_sq == Rat(1, 4));
  CHECK(ac.sign == -1);
}

TEST_CASE("four parallel edges meet at the tetrahedral angle", "[embed]") {
  const Graph banana = parse_graph("e 0 1\ne 0 1\ne 0 1\ne 0 1\n");
  const CycleBasis basis(banana);
  CHECK(norm_sq(basis, bond_vector(basis, {0, +1})) == Rat(3, 4));
  const AngleCos ac = bond_angle_cos(basis, {0, +1}, {1, +1});
  CHECK(inner_product(basis, bond_vector(basis, {0, +1}), bond_vector(basis, {1, +1})) ==
        Rat(-1, 4));
  CHECK(ac.cos_sq == Rat(1, 9));  // cos = -1/3, the diamond bond angle
  CHECK(ac.sign == -1);
}

TEST_CASE("bond vectors negate under orientation flip and balance at vertices", "[embed]") {
  SplitMix64 rng(0xb0d);
  for (int t = 0; t < 40; ++t) {
    const Graph g = corpus::random_connected(rng);
    const CycleBasis basis(g);
    for (int p = 0; p < g.pair_count(); ++p) {
      const CycleCoords plus = bond_vector(basis, {p, +1});
      const CycleCoords minus = bond_vector(basis, {p, -1});
      for (int j = 0; j < basis.m(); ++j) REQUIRE(minus.y[j] == -plus.y[j]);
    }
    for (int v = 0; v < g.vertex_count(); ++v) {
      RVec sum(basis.m(), Rat(0));
      for (const auto& e : g.out_edges(v)) {
        const CycleCoords y = bond_vector(basis, e);
        for (int j = 0; j < basis.m(); ++j) sum[j] += y.y[j];
      }
      for (int j = 0; j < basis.m(); ++j) REQUIRE(sum[j] == 0);
    }
  }
}

TEST_CASE("deck translations act by isometries", "[embed]") {
  SplitMix64 rng(0x150);
  for (int t = 0; t < 30; ++t) {
    const Graph g = corpus::random_connected(rng, 6, 8);
    const CycleBasis basis(g);
    const Chain1 z = random_cycle(rng, basis);
    const CrystalFragment f = ball(g, basis, 1);
    for (const Atom& a : f.atoms)
      for (const Atom& b : f.atoms)
        REQUIRE(distance_sq(basis, translate_atom(g, a, z), translate_atom(g, b, z)) ==
                distance_sq(basis, a, b));
  }
}

TEST_CASE("float frame factors the gram matrix", "[embed]") {
  SplitMix64 rng(0xf7a3);
  for (int t = 0; t < 30; ++t) {
    const Graph g = corpus::random_connected(rng);
    const CycleBasis basis(g);
    const auto frame = float_frame(basis);
    const int m = basis.m();
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        if (j > i) CHECK(frame[i][j] == 0.0);  // lower triangular
        double s = 0;
        for (int k = 0; k < m; ++k) s += frame[k][i] * frame[k][j];
        REQUIRE_THAT(s, WithinAbs(static_cast<double>(basis.gram()[i][j]), 1e-9));
      }
  }
}

TEST_CASE("float coordinates reproduce exact norms", "[embed]") {
  SplitMix64 rng(0xf10a7);
  for (int t = 0; t < 30; ++t) {
    const Graph g = corpus::random_connected(rng);
    const CycleBasis basis(g);
    const auto frame = float_frame(basis);
    const Chain1 c = random_cycle(rng, basis);
    const CycleCoords y = project(basis, c);
    const auto fy = to_float(frame, y);
    double n = 0;
    for (double v : fy) n += v * v;
    REQUIRE_THAT(n, WithinAbs(norm_sq(basis, y).convert_to<double>(), 1e-8));
  }
}

TEST_CASE("embedded fragments carry consistent positions", "[embed]") {
  SplitMix64 rng(0xe3b);
  for (int t = 0; t < 15; ++t) {
    const Graph g = corpus::random_bridgeless(rng, 6, 8);
    const CycleBasis basis(g);
    const CrystalFragment f = ball(g, basis, 2);
    const EmbeddedFragment ef = embed_fragment(f);
    REQUIRE(ef.positions.size() == f.atoms.size());
    REQUIRE(ef.float_positions.size() == f.atoms.size());
    REQUIRE(ef.collision_groups.empty());  // no bridges, no collisions
    for (std::size_t i = 0; i < f.atoms.size(); ++i) {
      REQUIRE(ef.positions[i] == atom_position(basis, f.atoms[i]));
      for (std::size_t j = i + 1; j < f.atoms.size(); ++j) {
        double d = 0;
        for (int k = 0; k < basis.m(); ++k) {
          const double diff = ef.float_positions[i][k] - ef.float_positions[j][k];
          d += diff * diff;
        }
        REQUIRE_THAT(d, WithinAbs(distance_sq(basis, f.atoms[i], f.atoms[j]).convert_to<double>(),
                                  1e-8));
      }
    }
  }
}

TEST_CASE("bridges collapse atoms onto each other", "[embed]") {
  // bridge at the basepoint, then a triangle
  const Graph g = parse_graph("e 0 1\ne 1 2\ne 2 3\ne 3 1\n");
  const CycleBasis basis(g);
  const EmbeddedFragment ef = embed_fragment(ball(g, basis, 1));
  REQUIRE(ef.collision_groups.size() == 1);
  // the base atom and its image across the bridge land on the same point
  CHECK(ef.collision_groups[0] == std::vector<int>{0, 1});
  CHECK(distance_sq(basis, Atom{Chain1{}, 0}, Atom{Chain1::edge({0, +1}), 1}) == 0);

  // a bare edge has trivial cycle space: everything lands on the origin
  const Graph edge = parse_graph("e 0 1\n");
  const CycleBasis eb(edge);
  const EmbeddedFragment eef = embed_fragment(ball(edge, eb, 1));
  REQUIRE(eef.collision_groups.size() == 1);
  CHECK(eef.collision_groups[0].size() == 2);
}

TEST_CASE("bridge bonds have no direction to measure", "[embed]") {
  const Graph g = parse_graph("e 0 1\ne 1 2\ne 2 3\ne 3 1\n");
  const CycleBasis basis(g);
  CHECK_THROWS_AS(bond_angle_cos(basis, {0, +1}, {1, +1}), ZeroProjectionError);
}

TEST_CASE("segment interiors in the plane", "[embed]") {
  // proper crossing
  CHECK(segments_share_interior_point(q({0, 0}), q({1, 1}), q({0, 1}), q({1, 0})));
  // shared endpoint only
  CHECK_FALSE(segments_share_interior_point(q({0, 0}), q({1, 0}), q({1, 0}), q({1, 1})));
  // endpoint of one interior to the other
  CHECK(segments_share_interior_point(q({0, 0}), q({2, 0}), q({1, 0}), q({1, 1})));
  // disjoint, intersection point off both segments
  CHECK_FALSE(segments_share_interior_point(q({0, 0}), q({1, 0}), q({0, 1}), q({1, 2})));
  // parallel, distinct lines
  CHECK_FALSE(segments_share_interior_point(q({0, 0}), q({1, 0}), q({0, 1}), q({1, 1})));
  // collinear, disjoint
  CHECK_FALSE(segments_share_interior_point(q({0, 0}), q({1, 0}), q({2, 0}), q({3, 0})));
  // collinear, overlap of positive length
  CHECK(segments_share_interior_point(q({0, 0}), q({2, 0}), q({1, 0}), q({3, 0})));
  // collinear, touching end to end
  CHECK_FALSE(segments_share_interior_point(q({0, 0}), q({1, 0}), q({1, 0}), q({2, 0})));
  // collinear containment
  CHECK(segments_share_interior_point(q({0, 0}), q({3, 0}), q({1, 0}), q({2, 0})));
}

TEST_CASE("segment interiors, degenerate and spatial cases", "[embed]") {
  // point resting on an interior
  CHECK(segments_share_interior_point(q({1, 0}), q({1, 0}), q({0, 0}), q({2, 0})));
  // point at an endpoint
  CHECK_FALSE(segments_share_interior_point(q({0, 0}), q({0, 0}), q({0, 0}), q({1, 0})));
  // two coincident points
  CHECK_FALSE(segments_share_interior_point(q({0, 0}), q({0, 0}), q({0, 0}), q({0, 0})));
  // skew lines in three coordinates pass without touching
  CHECK_FALSE(segments_share_interior_point(q({0, 0, 0}), q({1, 0, 0}), q({0, 1, -1}),
                                            q({0, 1, 1})));
  // genuine crossing in three coordinates
  CHECK(segments_share_interior_point(q({0, 0, 0}), q({1, 1, 1}), q({1, 0, 0}), q({0, 1, 1})));
}
