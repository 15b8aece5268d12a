#include <doctest.h>

#include <random>
#include <string>

#include "fixtures.hpp"
#include "gogbench/admissibility.hpp"
#include "gogbench/errors.hpp"

using namespace gogbench;

namespace {

GroupElement random_element(const BackendSpec& b, std::mt19937_64& rng, int len) {
  const auto gens = b.generators();
  GroupElement g = b.identity();
  for (int i = 0; i < len; ++i) g = b.multiply(g, gens[rng() % gens.size()]);
  return g;
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  s.replace(s.find(from), from.size(), to);
  return s;
}

}  // namespace

TEST_CASE("torus complex validates with the expected edge shapes") {
  const auto cfg = fixtures::load(fixtures::kTorus3);
  const GraphOfGroups g = cfg.graph();
  CHECK(g.validate().ok());
  const auto& s1 = g.edge_subgroup(1);
  const BackendSpec& b1 = g.backend(1);
  CHECK(b1.render(b1.make_product(s1.root, 0)) == "b2");
  CHECK(s1.center_step == 1);
  CHECK(g.in_spanning_tree(1));
  CHECK(g.in_spanning_tree(2));
  CHECK(g.base_vertex() == 1);
  // tau_e(z1^3 b2^-2) = a2^3 z2^-2
  const GroupElement x = b1.parse_element("z1 z1 z1 b2^-1 b2^-1");
  CHECK(g.backend(2).render(g.tau(1, x)) == "a2 a2 a2 z2^-1 z2^-1");
  CHECK(g.tau(2, g.tau(1, x)) == x);
}

TEST_CASE("coset representatives split every element") {
  const GraphOfGroups g = fixtures::load(fixtures::kMixed).graph();
  std::mt19937_64 rng(31);
  for (EdgeId e : g.edge_ids()) {
    const BackendSpec& b = g.backend(g.edge(e).source);
    for (int i = 0; i < 200; ++i) {
      const GroupElement x = random_element(b, rng, 1 + static_cast<int>(rng() % 8));
      const auto [rep, rest] = g.split_coset(x, e);
      CHECK(b.multiply(rep, rest) == x);
      CHECK(g.edge_membership(rest, e).has_value());
      CHECK(rep == g.coset_rep(x, e));
      // Right-translating by G_e does not move the representative.
      const EdgeCoordinates k{static_cast<std::int64_t>(rng() % 5) - 2, static_cast<std::int64_t>(rng() % 5) - 2};
      CHECK(g.coset_rep(b.multiply(x, g.edge_element(e, k)), e) == rep);
      CHECK(g.coset_rep(rep, e) == rep);
    }
  }
}

TEST_CASE("tau is an involution on every edge") {
  const GraphOfGroups g = fixtures::load(fixtures::kMixed).graph();
  for (EdgeId e : g.edge_ids()) {
    for (std::int64_t a = -3; a <= 3; ++a) {
      for (std::int64_t c = -3; c <= 3; ++c) {
        const GroupElement x = g.edge_element(e, {a, c});
        CHECK(g.tau(g.edge(e).reverse, g.tau(e, x)) == x);
        const EdgeCoordinates k = g.tau_coordinates(e, {a, c});
        CHECK(g.edge_element(g.edge(e).reverse, k) == g.tau(e, x));
      }
    }
  }
}

TEST_CASE("spanning tree by breadth-first search from the least vertex") {
  const GraphOfGroups g = fixtures::load(fixtures::kMixed).graph();
  CHECK(g.in_spanning_tree(0));
  CHECK(g.in_spanning_tree(1));
  CHECK(g.in_spanning_tree(2));
  CHECK(g.in_spanning_tree(3));
  CHECK_FALSE(g.in_spanning_tree(4));
  CHECK_FALSE(g.in_spanning_tree(5));
}

TEST_CASE("validation reports violations with witnesses") {
  SUBCASE("non-commuting basis") {
    const std::string bad = replace(fixtures::kDouble, "basis = x, z\nimage = x, z\n[edge 1]",
                                    "basis = x, y\nimage = x, z\n[edge 1]");
    try {
      fixtures::load(bad.c_str());
      FAIL("expected ValidationFailed");
    } catch (const ValidationFailed& e) {
      CHECK(std::string(e.what()).find("do not commute") != std::string::npos);
      CHECK(std::string(e.what()).find("witness") != std::string::npos);
    }
  }
  SUBCASE("missing reverse edge") {
    const std::string bad = replace(fixtures::kDouble, "reverse = 1", "reverse = 7");
    try {
      fixtures::load(bad.c_str());
      FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
      CHECK(std::string(e.what()).find("edge 0") != std::string::npos);
    }
  }
  SUBCASE("two forward orientations") {
    const std::string bad = replace(fixtures::kDouble, "reverse = 0\n", "reverse = 0\nforward = true\n");
    CHECK_THROWS_AS(fixtures::load(bad.c_str()), ValidationFailed);
  }
  SUBCASE("tau not an involution") {
    const std::string bad = replace(fixtures::kDouble, "reverse = 0\nbasis = x, z\nimage = x, z",
                                    "reverse = 0\nbasis = x, z\nimage = x, z^-1");
    CHECK_THROWS_AS(fixtures::load(bad.c_str()), ValidationFailed);
  }
}

TEST_CASE("admissibility of the torus complex") {
  const GraphOfGroups g = fixtures::load(fixtures::kTorus3).graph();
  const auto r = check_admissibility(g, 3);
  CHECK(r.all_pass());
  REQUIRE(r.kernel_indices.size() == 2);
  for (const auto& k : r.kernel_indices) CHECK(k.index == std::optional<std::uint64_t>(1));
  const GraphOfGroups g5 = parse_config(fixtures::torus5_path()).graph();
  CHECK(check_admissibility(g5, 2).all_pass());
}

TEST_CASE("admissibility failures carry witnesses") {
  SUBCASE("the double fails condition 4") {
    const auto r = check_admissibility(fixtures::load(fixtures::kDouble).graph(), 2);
    CHECK(r.conditions[0].verdict == Verdict::Pass);
    CHECK(r.conditions[1].verdict == Verdict::Pass);
    CHECK(r.conditions[3].verdict == Verdict::Fail);
    CHECK_FALSE(r.conditions[3].witnesses.empty());
    for (const auto& k : r.kernel_indices) CHECK_FALSE(k.index.has_value());
  }
  SUBCASE("conjugate edge groups fail condition 3") {
    const std::string text = replace(replace(fixtures::kHnn, "image = y, z", "image = y x y^-1, z"),
                                     "basis = y, z", "basis = y x y^-1, z");
    const auto r = check_admissibility(fixtures::load(text.c_str()).graph(), 2);
    CHECK(r.conditions[2].verdict == Verdict::Fail);
    CHECK_FALSE(r.conditions[2].witnesses.empty());
  }
  SUBCASE("a non-primitive central step fails condition 3") {
    const std::string text = replace(replace(fixtures::kTorus3, "basis = z1, b2\nimage = a2, z2",
                                             "basis = z1 z1, b2\nimage = a2, z2"),
                                     "basis = a2, z2\nimage = z1, b2", "basis = a2, z2\nimage = z1 z1, b2");
    const auto r = check_admissibility(fixtures::load(text.c_str()).graph(), 2);
    CHECK(r.conditions[2].verdict == Verdict::Fail);
  }
}
