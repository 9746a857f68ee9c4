#include <catch2/catch_amalgamated.hpp>

#include "support/corpus.hpp"
#include "support/oracles.hpp"
#include "topocrystal/cycle_space.hpp"

using namespace topocrystal;

namespace {

Chain1 random_chain(SplitMix64& rng, int pair_count) {
  Chain1 c;
  for (int p = 0; p < pair_count; ++p)
    c.add_term(p, static_cast<long long>(rng.below(7)) - 3);
  return c;
}

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

}  // namespace

TEST_CASE("spanning tree of the theta graph", "[cycle_space]") {
  const Graph theta = parse_graph("e 0 1\ne 0 1\ne 0 1\n");
  CHECK(spanning_tree(theta) == std::vector<int>{0});  // lowest pair id wins
  const CycleBasis basis(theta);
  CHECK(basis.m() == 2);
  CHECK(basis.tree_edges() == std::vector<int>{0});
  CHECK(basis.nontree_pairs() == std::vector<int>{1, 2});
  CHECK(basis.in_tree(0));
  CHECK_FALSE(basis.in_tree(1));
  CHECK(basis.column_of(1) == 0);
  CHECK(basis.column_of(2) == 1);
  // fundamental cycles close through the tree edge
  CHECK(basis.basis_chain(0) == Chain1::edge({1, +1}) + Chain1::edge({0, -1}));
  CHECK(basis.basis_chain(1) == Chain1::edge({2, +1}) + Chain1::edge({0, -1}));
  CHECK(basis.gram() == LMat{{2, 1}, {1, 2}});
  CHECK(basis.gram_det() == 3);
}

TEST_CASE("basis columns are cycles with unit non-tree rows", "[cycle_space]") {
  SplitMix64 rng(0xba515);
  for (int t = 0; t < 60; ++t) {
    const Graph g = corpus::random_connected(rng);
    const CycleBasis basis(g);
    REQUIRE(basis.m() == g.pair_count() - g.vertex_count() + 1);
    for (int j = 0; j < basis.m(); ++j) {
      const Chain1 bj = basis.basis_chain(j);
      REQUIRE(is_cycle(g, bj));
      // the non-tree rows of the basis matrix form an identity block
      for (int jj = 0; jj < basis.m(); ++jj)
        REQUIRE(basis.basis_matrix()[basis.nontree_pairs()[jj]][j] == (jj == j ? 1 : 0));
    }
  }
}

TEST_CASE("tree paths compose and stay in the tree", "[cycle_space]") {
  SplitMix64 rng(0x72ee);
  for (int t = 0; t < 60; ++t) {
    const Graph g = corpus::random_connected(rng);
    const CycleBasis basis(g);
    for (int from = 0; from < g.vertex_count(); ++from)
      for (int to = 0; to < g.vertex_count(); ++to) {
        const Path p = basis.tree_path(from, to);
        validate_path(g, p);
        REQUIRE(path_end(g, p) == to);
        for (const auto& e : p.edges) REQUIRE(basis.in_tree(e.pair));
        // tree paths never revisit a vertex
        std::vector<int> visited{from};
        int at = from;
        for (const auto& e : p.edges) {
          at = g.target(e);
          REQUIRE(std::find(visited.begin(), visited.end(), at) == visited.end());
          visited.push_back(at);
        }
      }
    CHECK(basis.tree_path(0, 0).edges.empty());
  }
  CHECK_THROWS_AS(CycleBasis(parse_graph("e 0 1\n")).tree_path(0, 7), std::invalid_argument);
}

TEST_CASE("gram matrix data is mutually consistent", "[cycle_space]") {
  SplitMix64 rng(0x62a3);
  for (int t = 0; t < 40; ++t) {
    const Graph g = corpus::random_connected(rng);
    const CycleBasis basis(g);
    const int k = basis.m();
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        REQUIRE(Int(basis.gram()[i][j]) ==
                chain_dot(basis.basis_chain(i), basis.basis_chain(j)));
        // adjugate identity: adj(G) * G == det(G) * I
        Int s = 0;
        for (int l = 0; l < k; ++l) s += basis.gram_adjugate()[i][l] * basis.gram()[l][j];
        REQUIRE(s == (i == j ? basis.gram_det() : Int(0)));
      }
    REQUIRE(basis.gram_det() > 0);
  }
}

TEST_CASE("gram determinant counts spanning trees", "[cycle_space]") {
  SplitMix64 rng(0x7c0);
  for (int t = 0; t < 30; ++t) {
    const Graph g = corpus::random_connected(rng, 6, 9);
    REQUIRE(CycleBasis(g).gram_det() == oracle::tree_count_by_subsets(g));
  }
  CHECK(CycleBasis(parse_graph("e 0 1\ne 1 2\n")).gram_det() == 1);  // tree, m = 0
}

TEST_CASE("integral cycles read off their non-tree coefficients", "[cycle_space]") {
  SplitMix64 rng(0x1c5);
  for (int t = 0; t < 60; ++t) {
    const Graph g = corpus::random_connected(rng);
    const CycleBasis basis(g);
    const Chain1 z = random_cycle(rng, basis);
    const CycleCoords y = project(basis, z);
    for (int j = 0; j < basis.m(); ++j) {
      REQUIRE(denominator(y.y[j]) == 1);
      REQUIRE(y.y[j] == Rat(z.coeff(basis.nontree_pairs()[j])));
    }
    // and the projection reproduces the cycle exactly
    const RVec back = embed_coords(basis, y);
    for (int p = 0; p < g.pair_count(); ++p) REQUIRE(back[p] == Rat(z.coeff(p)));
  }
}

TEST_CASE("projection matches the potential-theory oracle", "[cycle_space]") {
  SplitMix64 rng(0xe1ec);
  for (int t = 0; t < 50; ++t) {
    const Graph g = corpus::random_connected(rng);
    const CycleBasis basis(g);
    const Chain1 c = random_chain(rng, g.pair_count());
    const RVec via_basis = embed_coords(basis, project(basis, c));
    const RVec via_potentials = oracle::project_by_potentials(g, c);
    REQUIRE(via_basis == via_potentials);
  }
}

TEST_CASE("projection is idempotent and orthogonal", "[cycle_space]") {
  SplitMix64 rng(0x0f);
  for (int t = 0; t < 50; ++t) {
    const Graph g = corpus::random_connected(rng);
    const CycleBasis basis(g);
    const Chain1 c = random_chain(rng, g.pair_count());
    const CycleCoords y = project(basis, c);
    const RVec pc = embed_coords(basis, y);
    REQUIRE(project_rational(basis, pc) == y);
    // residual c - pi(c) is orthogonal to every basis cycle
    for (int j = 0; j < basis.m(); ++j) {
      Rat dot = 0;
      const Chain1 bj = basis.basis_chain(j);
      for (const auto& [p, k] : bj.terms()) dot += (Rat(c.coeff(p)) - pc[p]) * k;
      REQUIRE(dot == 0);
    }
    // numerators are the projection over the common denominator det G
    const IVec num = basis.numerator(c);
    for (int j = 0; j < basis.m(); ++j)
      REQUIRE(y.y[j] == Rat(num[j], basis.gram_det()));
  }
}

TEST_CASE("theta edge projections", "[cycle_space]") {
  const Graph theta = parse_graph("e 0 1\ne 0 1\ne 0 1\n");
  const CycleBasis basis(theta);
  const CycleCoords y0 = project(basis, Chain1::edge({0, +1}));
  CHECK(y0.y == RVec{Rat(-1, 3), Rat(-1, 3)});
  CHECK(norm_sq(basis, y0) == Rat(2, 3));
  const CycleCoords y1 = project(basis, Chain1::edge({1, +1}));
  CHECK(inner_product(basis, y0, y1) == Rat(-1, 3));
  // the three parallel edges project to vectors summing to zero
  const CycleCoords y2 = project(basis, Chain1::edge({2, +1}));
  CHECK(y0.y[0] + y1.y[0] + y2.y[0] == 0);
  CHECK(y0.y[1] + y1.y[1] + y2.y[1] == 0);
  CHECK(embed_coords(basis, y0) == RVec{Rat(2, 3), Rat(-1, 3), Rat(-1, 3)});
}

TEST_CASE("norms are positive definite on the cycle space", "[cycle_space]") {
  SplitMix64 rng(0x905d);
  for (int t = 0; t < 40; ++t) {
    const Graph g = corpus::random_connected(rng);
    const CycleBasis basis(g);
    const Chain1 c = random_chain(rng, g.pair_count());
    const CycleCoords y = project(basis, c);
    const Rat n = norm_sq(basis, y);
    REQUIRE(n >= 0);
    bool zero = true;
    for (const Rat& v : y.y) zero = zero && v == 0;
    REQUIRE((n == 0) == zero);
  }
}

TEST_CASE("cycle space rejects bad input", "[cycle_space]") {
  CHECK_THROWS_AS(CycleBasis(parse_graph("v 3\ne 0 1\n")), DisconnectedError);
  CHECK_THROWS_AS(spanning_tree(parse_graph("v 2\n")), DisconnectedError);
  const CycleBasis basis(parse_graph("e 0 1\ne 0 1\n"));
  CHECK_THROWS_AS(project_rational(basis, RVec{Rat(1)}), std::invalid_argument);
}
