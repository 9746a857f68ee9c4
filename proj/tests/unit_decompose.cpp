#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <set>

#include "support/corpus.hpp"
#include "topocrystal/cycle_space.hpp"
#include "topocrystal/decompose.hpp"

using namespace topocrystal;

namespace {

bool is_simple_loop(const Graph& g, const Path& p) {
  validate_path(g, p);
  if (p.edges.empty() || path_end(g, p) != p.start) return false;
  std::set<int> seen{p.start};
  int at = p.start;
  for (std::size_t i = 0; i + 1 < p.edges.size(); ++i) {
    at = g.target(p.edges[i]);
    if (!seen.insert(at).second) return false;
  }
  return true;
}

bool is_simple_open_path(const Graph& g, const Path& p) {
  validate_path(g, p);
  std::set<int> seen{p.start};
  int at = p.start;
  for (const auto& e : p.edges) {
    at = g.target(e);
    if (!seen.insert(at).second) return false;
  }
  return true;
}

// each part must spend coefficients the input actually has: zero stays zero,
// positive parts only where the input is positive, and symmetrically
void check_signed_support(const Chain1& whole, const Chain1& part) {
  for (const auto& [p, k] : part.terms()) {
    const long long w = whole.coeff(p);
    REQUIRE(w != 0);
    REQUIRE((w > 0) == (k > 0));
    REQUIRE(std::abs(k) <= std::abs(w));
  }
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

TEST_CASE("peeling the theta graph", "[decompose]") {
  const Graph theta = parse_graph("e 0 1\ne 0 1\ne 0 1\n");
  const Chain1 e0 = Chain1::edge({0, +1});
  const Chain1 e1 = Chain1::edge({1, +1});
  const Chain1 e2 = Chain1::edge({2, +1});

  const auto one = decompose_cycle(theta, e0 - e1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].start == 0);
  CHECK(one[0].edges == std::vector<DirectedEdge>{{0, +1}, {1, -1}});

  const auto two = decompose_cycle(theta, e0 + e0 - e1 - e2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].edges == std::vector<DirectedEdge>{{0, +1}, {1, -1}});
  CHECK(two[1].edges == std::vector<DirectedEdge>{{0, +1}, {2, -1}});

  CHECK(decompose_cycle(theta, Chain1()).empty());
  CHECK_THROWS_AS(decompose_cycle(theta, e0), std::invalid_argument);
}

TEST_CASE("splitting a theta walk into path and loop", "[decompose]") {
  const Graph theta = parse_graph("e 0 1\ne 0 1\ne 0 1\n");
  const Path walk{0, {{0, +1}, {1, -1}, {2, +1}}};
  const PathDecomposition dec = decompose_path_chain(theta, walk);
  CHECK(dec.simple_path.start == 0);
  CHECK(dec.simple_path.edges == std::vector<DirectedEdge>{{0, +1}});
  REQUIRE(dec.simple_loops.size() == 1);
  CHECK(dec.simple_loops[0].start == 0);
  CHECK(dec.simple_loops[0].edges == std::vector<DirectedEdge>{{2, +1}, {1, -1}});
}

TEST_CASE("closed walks delegate to cycle peeling", "[decompose]") {
  const Graph theta = parse_graph("e 0 1\ne 0 1\ne 0 1\n");
  const PathDecomposition dec =
      decompose_path_chain(theta, Path{0, {{0, +1}, {1, -1}, {1, +1}, {0, -1}}});
  CHECK(dec.simple_path.start == 0);
  CHECK(dec.simple_path.edges.empty());
  CHECK(dec.simple_loops.empty());  // the chain cancels to zero
}

TEST_CASE("cycle decomposition properties on random graphs", "[decompose]") {
  SplitMix64 rng(0xdc);
  for (int t = 0; t < 80; ++t) {
    const Graph g = corpus::random_connected(rng);
    const CycleBasis basis(g);
    const Chain1 z = random_cycle(rng, basis);
    const auto loops = decompose_cycle(g, z);
    long long budget = 0;
    for (const auto& [p, k] : z.terms()) budget += std::abs(k);
    REQUIRE(static_cast<long long>(loops.size()) <= budget);
    Chain1 resum;
    for (const auto& loop : loops) {
      REQUIRE(is_simple_loop(g, loop));
      const Chain1 lc = path_chain(g, loop);
      check_signed_support(z, lc);
      resum += lc;
    }
    REQUIRE(resum == z);
  }
}

TEST_CASE("walk decomposition properties on random graphs", "[decompose]") {
  SplitMix64 rng(0xa11c);
  for (int t = 0; t < 80; ++t) {
    const Graph g = corpus::random_connected(rng);
    const Path p = corpus::random_walk(g, rng, 1 + static_cast<int>(rng.below(12)));
    const Chain1 c = path_chain(g, p);
    const PathDecomposition dec = decompose_path_chain(g, p);
    REQUIRE(dec.simple_path.start == p.start);
    REQUIRE(path_end(g, dec.simple_path) == path_end(g, p));
    REQUIRE(is_simple_open_path(g, dec.simple_path));
    Chain1 resum = path_chain(g, dec.simple_path);
    check_signed_support(c, resum);
    for (const auto& loop : dec.simple_loops) {
      REQUIRE(is_simple_loop(g, loop));
      const Chain1 lc = path_chain(g, loop);
      check_signed_support(c, lc);
      resum += lc;
    }
    REQUIRE(resum == c);
  }
}

TEST_CASE("witness cycle for a single theta edge", "[decompose]") {
  const Graph theta = parse_graph("e 0 1\ne 0 1\ne 0 1\n");
  const Chain1 z = witness_cycle(theta, Path{0, {{0, +1}}});
  CHECK(z == Chain1::edge({0, +1}) + Chain1::edge({1, -1}));
  CHECK(is_cycle(theta, z));
  CHECK(chain_dot(z, Chain1::edge({0, +1})) == 1);
}

TEST_CASE("witness cycle pairs positively on random bridgeless graphs", "[decompose]") {
  SplitMix64 rng(0x3117);
  for (int t = 0; t < 120; ++t) {
    const Graph g = corpus::random_bridgeless(rng);
    const Path p = corpus::random_walk(g, rng, 1 + static_cast<int>(rng.below(10)));
    const Chain1 c = path_chain(g, p);
    if (c.zero()) {
      CHECK_THROWS_AS(witness_cycle(g, p), ZeroChainError);
      continue;
    }
    const Chain1 z = witness_cycle(g, p);
    REQUIRE(is_cycle(g, z));
    REQUIRE(chain_dot(z, c) >= 1);
  }
}

TEST_CASE("witness cycle exercises the endpoint detour", "[decompose]") {
  // single-edge paths are already simple, so the detour search always runs
  SplitMix64 rng(0xde7);
  for (int t = 0; t < 60; ++t) {
    const Graph g = corpus::random_bridgeless(rng);
    const int p = static_cast<int>(rng.below(g.pair_count()));
    const DirectedEdge e{p, +1};
    if (g.source(e) == g.target(e)) continue;  // loop chains are their own witness
    const Path path{g.source(e), {e}};
    const Chain1 z = witness_cycle(g, path);
    REQUIRE(is_cycle(g, z));
    REQUIRE(chain_dot(z, Chain1::edge(e)) >= 1);
  }
}

TEST_CASE("witness cycle refuses bridges and zero chains", "[decompose]") {
  // two triangles joined by pair 3
  const Graph bridged = parse_graph("e 0 1\ne 1 2\ne 2 0\ne 2 3\ne 3 4\ne 4 5\ne 5 3\n");
  try {
    witness_cycle(bridged, Path{0, {{0, +1}}});
    FAIL("expected BridgePresentError");
  } catch (const BridgePresentError& err) {
    CHECK(err.bridges == std::vector<int>{3});
    CHECK_THAT(err.what(), Catch::Matchers::ContainsSubstring("bridge pair e3"));
  }
  CHECK_THAT(BridgePresentError({0, 1}).what(),
             Catch::Matchers::ContainsSubstring("bridge pairs e0 e1"));

  const Graph theta = parse_graph("e 0 1\ne 0 1\ne 0 1\n");
  CHECK_THROWS_AS(witness_cycle(theta, Path{0, {{0, +1}, {0, -1}}}), ZeroChainError);
}
