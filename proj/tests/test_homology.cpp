#include <doctest.h>

#include "helpers.hpp"
#include "symcube/homology.hpp"

using namespace symcube;
using namespace symcube::testing;

TEST_CASE("ring parsing") {
  CHECK(Ring::parse("z").kind == Ring::Kind::integers);
  CHECK(Ring::parse("q").kind == Ring::Kind::rationals);
  CHECK(Ring::parse("gf2").p == 2);
  CHECK(Ring::parse("gf5").name() == "gf5");
  CHECK_THROWS_AS(Ring::parse("gf4"), Error);
  CHECK_THROWS_AS(Ring::parse("r"), Error);
}

TEST_CASE("boundary matrices of a triangle") {
  const Complex tri = standard_ball(2);
  const ChainData chain = boundary_matrices(tri);
  CHECK(chain.face_count(0) == 3);
  CHECK(chain.face_count(1) == 3);
  CHECK(chain.face_count(2) == 1);
  // each edge column has one -1 and one +1
  for (const auto& col : chain.cols[1]) {
    REQUIRE(col.size() == 2);
    CHECK(int(col[0].value) + int(col[1].value) == 0);
  }
}

TEST_CASE("boundary ranks of the 2-sphere") {
  const ChainData chain = boundary_matrices(standard_sphere(2));
  CHECK(boundary_rank_gf(chain, 1, 2) == 3);
  CHECK(boundary_rank_gf(chain, 2, 2) == 3);
  CHECK(boundary_invariant_factors(chain, 1) ==
        std::vector<std::int64_t>(3, 1));
}

TEST_CASE("homology of spheres over every ring") {
  for (int d = 1; d <= 4; ++d) {
    const Complex s = standard_sphere(d);
    std::vector<std::int64_t> expect(d + 1, 0);
    expect[0] = 1;
    expect[d] = 1;
    for (const char* ring : {"z", "q", "gf2", "gf3", "gf5"}) {
      const auto profile = homology(s, Ring::parse(ring));
      CHECK(profile.betti == expect);
      for (const auto& t : profile.torsion) CHECK(t.empty());
    }
  }
  const auto s3 = homology(standard_sphere(3), Ring::Z());
  CHECK(s3.betti == std::vector<std::int64_t>{1, 0, 0, 1});
}

TEST_CASE("homology of the staircase torus") {
  const Complex c3 = complex_of("a b\nb c\nc a");
  const Complex torus = staircase_product(c3, c3, {"a", "b", "c"}, {"a", "b", "c"});
  const auto z = homology(torus, Ring::Z());
  CHECK(z.betti == std::vector<std::int64_t>{1, 2, 1});
  for (const auto& t : z.torsion) CHECK(t.empty());
  const auto gf2 = homology(torus, Ring::GF(2));
  CHECK(gf2.betti == std::vector<std::int64_t>{1, 2, 1});
}

TEST_CASE("homology of the real projective plane") {
  const Complex ico = icosahedron();
  Group g(ico.vertices(), {{"a", icosahedron_antipodal(ico)}});
  const Complex rp2 = quotient(ico, g).complex;

  const auto z = homology(rp2, Ring::Z());
  CHECK(z.betti == std::vector<std::int64_t>{1, 0, 0});
  CHECK(z.torsion[1] == std::vector<std::int64_t>{2});
  CHECK(z.torsion[0].empty());
  CHECK(z.torsion[2].empty());

  const auto q = homology(rp2, Ring::Q());
  CHECK(q.betti == std::vector<std::int64_t>{1, 0, 0});
  const auto gf2 = homology(rp2, Ring::GF(2));
  CHECK(gf2.betti == std::vector<std::int64_t>{1, 1, 1});
  const auto gf3 = homology(rp2, Ring::GF(3));
  CHECK(gf3.betti == std::vector<std::int64_t>{1, 0, 0});
}

TEST_CASE("betti alternating sum equals euler characteristic") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 8; ++trial) {
    const Complex x = random_complex(rng, 7, 8, 4);
    const auto profile = homology(x, Ring::Q());
    std::int64_t sum = 0;
    int sign = 1;
    for (auto b : profile.betti) {
      sum += sign * b;
      sign = -sign;
    }
    CHECK(sum == euler_characteristic(x));
  }
}

TEST_CASE("field betti numbers dominate rational ones") {
  SplitMix64 rng(88);
  for (int trial = 0; trial < 6; ++trial) {
    const Complex x = random_complex(rng, 7, 8, 4);
    const auto q = homology(x, Ring::Q());
    for (int p : {2, 3, 5}) {
      const auto f = homology(x, Ring::GF(p));
      for (std::size_t k = 0; k < q.betti.size(); ++k)
        CHECK(f.betti[k] >= q.betti[k]);
    }
    // rank-nullity over Q matches integer SNF ranks
    const auto z = homology(x, Ring::Z());
    CHECK(z.betti == q.betti);
  }
}

TEST_CASE("homology is invariant under relabelling") {
  SplitMix64 rng(404);
  for (int trial = 0; trial < 5; ++trial) {
    const Complex x = random_complex(rng, 7, 8, 4);
    const auto [y, perm] = random_relabel(x, rng);
    CHECK(homology(x, Ring::GF(2)).betti == homology(y, Ring::GF(2)).betti);
    CHECK(homology(x, Ring::Z()).betti == homology(y, Ring::Z()).betti);
  }
}

TEST_CASE("orientability") {
  CHECK(orientability(standard_sphere(2)));
  CHECK(orientability(standard_sphere(3)));
  const Complex ico = icosahedron();
  CHECK(orientability(ico));
  Group g(ico.vertices(), {{"a", icosahedron_antipodal(ico)}});
  const Complex rp2 = quotient(ico, g).complex;
  CHECK_FALSE(orientability(rp2));
  CHECK_THROWS_AS(orientability(standard_ball(2)), Error);

  const Complex c3 = complex_of("a b\nb c\nc a");
  const Complex torus = staircase_product(c3, c3, {"a", "b", "c"}, {"a", "b", "c"});
  CHECK(orientability(torus));
}
