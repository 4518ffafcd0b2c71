#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "symcube/datasets.hpp"
#include "symcube/isomorphism.hpp"

using namespace symcube;
using namespace symcube::testing;

namespace {

bool is_facet_bijection(const Complex& x, const Complex& y,
                        const std::vector<VertexId>& map) {
  std::set<Face> target(y.facets().begin(), y.facets().end());
  for (const Face& f : x.facets()) {
    Face g;
    for (VertexId v : f) g.push_back(map[v]);
    std::sort(g.begin(), g.end());
    if (!target.count(g)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("isomorphic after relabelling") {
  SplitMix64 rng(31337);
  for (int trial = 0; trial < 50; ++trial) {
    const Complex x = random_complex(rng, 8, 8, 4);
    const auto [y, perm] = random_relabel(x, rng);
    const auto found = are_isomorphic(x, y);
    REQUIRE(found.has_value());
    CHECK(is_facet_bijection(x, y, *found));
    // symmetric direction
    const auto back = are_isomorphic(y, x);
    REQUIRE(back.has_value());
    CHECK(is_facet_bijection(y, x, *back));
  }
}

TEST_CASE("non-isomorphic complexes are rejected") {
  CHECK_FALSE(are_isomorphic(standard_sphere(2), standard_sphere(3)).has_value());
  const Complex cyc4 = complex_of("1 2\n2 3\n3 4\n4 1");
  const Complex path = complex_of("1 2\n2 3\n3 4");
  CHECK_FALSE(are_isomorphic(cyc4, path).has_value());
  // same f-vector, different structure: disjoint triangles vs 6-cycle
  const Complex two_tri = complex_of("a b\nb c\nc a\nd e\ne f\nf d");
  const Complex hex = complex_of("1 2\n2 3\n3 4\n4 5\n5 6\n6 1");
  CHECK(fvec(two_tri) == fvec(hex));
  CHECK_FALSE(are_isomorphic(two_tri, hex).has_value());
}

TEST_CASE("automorphism groups of standard spheres") {
  // |Aut(S^d on d+2 vertices)| = (d+2)!
  CHECK(automorphism_group(standard_sphere(1)).order == 6);
  CHECK(automorphism_group(standard_sphere(2)).order == 24);
  CHECK(automorphism_group(standard_sphere(3)).order == 120);

  const auto group = automorphism_group(standard_sphere(2));
  for (const auto& g : group.generators) CHECK(is_automorphism(standard_sphere(2), g));
}

TEST_CASE("automorphism group of an asymmetric complex") {
  // a tree with three branches of distinct lengths has no symmetry
  const Complex lopsided = complex_of("1 2\n2 3\n3 4\n2 5\n5 6\n6 7");
  const auto group = automorphism_group(lopsided);
  CHECK(group.order == 1);
  CHECK(group.generators.empty());
}

TEST_CASE("hexagon symmetries") {
  const Complex hex = complex_of("1 2\n2 3\n3 4\n4 5\n5 6\n6 1");
  const auto group = automorphism_group(hex);
  CHECK(group.order == 12);  // dihedral
  // generators actually generate the group
  Group g(hex.vertices(), [&] {
    std::vector<NamedPermutation> gens;
    for (std::size_t i = 0; i < group.generators.size(); ++i)
      gens.push_back({"g" + std::to_string(i), group.generators[i]});
    return gens;
  }());
  CHECK(g.order() == 12);
}

TEST_CASE("automorphism groups of the shipped complexes" * doctest::timeout(300)) {
  const auto spec30 = load_orbit_spec("cp3_30");
  const auto cp30 = orbit_expand(spec30.reps, spec30.group);
  CHECK(automorphism_group(cp30.complex).order == 12);

  CHECK(automorphism_group(load_facet_complex("cp3_18")).order == 1);

  // the full symmetry group of the 124-vertex complex, found exhaustively
  const auto spec124 = load_orbit_spec("s2s2s2_124");
  const auto x124 = orbit_expand(spec124.reps, spec124.group);
  const auto aut = automorphism_group(x124.complex);
  CHECK(aut.order == 72);
  for (const auto& g : aut.generators) CHECK(is_automorphism(x124.complex, g));
}

TEST_CASE("order divides factorial of the vertex count") {
  SplitMix64 rng(2718);
  for (int trial = 0; trial < 10; ++trial) {
    const Complex x = random_complex(rng, 6, 5, 3);
    const auto group = automorphism_group(x);
    std::uint64_t fact = 1;
    for (std::uint64_t i = 2; i <= x.vertices().size(); ++i) fact *= i;
    CHECK(fact % group.order == 0);
    for (const auto& g : group.generators) CHECK(is_automorphism(x, g));
  }
}
