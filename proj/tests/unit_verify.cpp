#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "support/corpus.hpp"
#include "topocrystal/verify.hpp"

using namespace topocrystal;

namespace {

std::vector<std::string> names_of(const VerifyReport& rep) {
  std::vector<std::string> names;
  for (const auto& c : rep.checks) names.push_back(c.name);
  return names;
}

bool has_check(const VerifyReport& rep, const std::string& name) {
  const auto names = names_of(rep);
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::string detail_of(const VerifyReport& rep, const std::string& name) {
  for (const auto& c : rep.checks)
    if (c.name == name) return c.detail;
  return "<missing>";
}

}  // namespace

TEST_CASE("the suite passes on small sound graphs", "[verify]") {
  for (const char* text : {"e 0 1\ne 0 1\ne 0 1\n",
                           "e 0 1\ne 0 2\ne 0 3\ne 1 2\ne 1 3\ne 2 3\n",
                           "e 0 1\ne 0 1\n"}) {
    const VerifyReport rep = verify_suite(parse_graph(text), 2);
    CHECK(rep.all_passed());
    CHECK(rep.counterexample.is_null());
    CHECK(rep.radius == 2);
    CHECK(rep.bridgeless);
    CHECK(rep.checks.size() == 29);
  }
}

TEST_CASE("the suite passes on random graphs", "[verify]") {
  SplitMix64 rng(0x3e21f);
  for (int t = 0; t < 3; ++t) {
    const Graph g = corpus::random_connected(rng, 6, 8);
    const VerifyReport rep = verify_suite(g, 1);
    INFO(format_graph(g));
    CHECK(rep.all_passed());
    CHECK(rep.checks.size() == 29);
  }
}

TEST_CASE("reports are deterministic", "[verify]") {
  const Graph g = parse_graph("e 0 1\ne 0 1\ne 1 2\ne 2 0\n");
  const VerifyReport a = verify_suite(g, 2);
  const VerifyReport b = verify_suite(g, 2);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].name == b.checks[i].name);
    CHECK(a.checks[i].passed == b.checks[i].passed);
    CHECK(a.checks[i].detail == b.checks[i].detail);
  }
  CHECK(a.counterexample == b.counterexample);
}

TEST_CASE("bridged graphs switch to the bridge checks", "[verify]") {
  const Graph g = parse_graph("e 0 1\ne 1 2\ne 2 3\ne 3 1\n");
  const VerifyReport rep = verify_suite(g, 1);
  CHECK(rep.all_passed());
  CHECK_FALSE(rep.bridgeless);
  CHECK(has_check(rep, "witness-bridge-detect"));
  CHECK(has_check(rep, "bridge-collision"));
  CHECK_FALSE(has_check(rep, "witness-pairing"));
  CHECK_FALSE(has_check(rep, "injective"));
  CHECK(detail_of(rep, "segment-interiors") ==
        "skipped: positions collide when bridges are present");
  CHECK(detail_of(rep, "residue-count") ==
        "skipped: count equals the vertex count only without bridges");
}

TEST_CASE("trees skip the deck translation check", "[verify]") {
  const VerifyReport rep = verify_suite(parse_graph("e 0 1\ne 1 2\n"), 1);
  CHECK(rep.all_passed());
  CHECK(detail_of(rep, "deck-free") == "skipped: trivial cycle lattice");
}

TEST_CASE("oversized symmetry groups are skipped, not ground through", "[verify]") {
  // nine parallel edges: 2 * 9! automorphisms, far past the cap
  const Graph g = parse_graph(
      "e 0 1\ne 0 1\ne 0 1\ne 0 1\ne 0 1\ne 0 1\ne 0 1\ne 0 1\ne 0 1\n");
  const VerifyReport rep = verify_suite(g, 1);
  CHECK(rep.all_passed());
  const std::string why = "skipped: automorphism group above the enumeration cap";
  for (const char* name : {"lift-section", "equivariance", "bond-equivariance",
                           "isometry", "affine-compose"})
    CHECK(detail_of(rep, name) == why);
}

TEST_CASE("huge vertex counts skip the symmetry block", "[verify]") {
  std::vector<std::pair<int, int>> ring;
  for (int v = 0; v < 66; ++v) ring.push_back({v, (v + 1) % 66});
  const VerifyReport rep = verify_suite(Graph(66, ring), 1);
  CHECK(rep.all_passed());
  CHECK(detail_of(rep, "equivariance") == "skipped: more than 64 vertices");
}

TEST_CASE("verification rejects unusable input", "[verify]") {
  const Graph theta = parse_graph("e 0 1\ne 0 1\ne 0 1\n");
  CHECK_THROWS_AS(verify_suite(theta, -1), std::invalid_argument);
  CHECK_THROWS_AS(verify_suite(parse_graph(""), 1), std::invalid_argument);
  CHECK_THROWS_AS(verify_suite(parse_graph("v 3\ne 0 1\n"), 1), DisconnectedError);
}
