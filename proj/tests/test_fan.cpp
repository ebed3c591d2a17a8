#include <catch2/catch_amalgamated.hpp>

#include "testutil.hpp"

using namespace torfan;

namespace {

Fan octant3() {
  return Fan::from_data(
      3, {{Int(1), Int(0), Int(0)}, {Int(0), Int(1), Int(0)}, {Int(0), Int(0), Int(1)}},
      {{0, 1, 2}});
}

// Reference five-cone subdivision of the octant on which (3,0,-2) and
// (2,1,-1) are both sign-coherent.
Fan reference_octant_fan() {
  std::vector<IntVec> rays = {
      {Int(1), Int(0), Int(0)}, {Int(0), Int(1), Int(0)}, {Int(0), Int(0), Int(1)},
      {Int(1), Int(0), Int(1)}, {Int(1), Int(0), Int(2)}, {Int(0), Int(1), Int(1)},
      {Int(2), Int(0), Int(3)}};
  return Fan::from_data(3, rays,
                        {{0, 1, 3}, {4, 5, 2}, {4, 1, 5}, {6, 1, 4}, {3, 1, 6}});
}

}  // namespace

TEST_CASE("orthant fan shapes") {
  Fan f1 = make_orthant_fan(1);
  REQUIRE(f1.rays().size() == 2);
  REQUIRE(f1.maximal_cones().size() == 2);

  Fan f2 = make_orthant_fan(2);
  REQUIRE(f2.rays().size() == 4);
  REQUIRE(f2.maximal_cones().size() == 4);

  Fan f0 = make_orthant_fan(0);
  REQUIRE(f0.maximal_cones().size() == 1);
  REQUIRE(f0.maximal_cones()[0].rays.empty());
}

TEST_CASE("orthant fans are complete, smooth and valid") {
  for (std::size_t n = 1; n <= 5; ++n) {
    Fan f = make_orthant_fan(n);
    REQUIRE(is_complete(f));
    REQUIRE(is_smooth(f));
  }
  for (std::size_t n = 1; n <= 3; ++n) REQUIRE(is_valid_fan(make_orthant_fan(n)));
  REQUIRE(is_complete(make_orthant_fan(0)));
}

TEST_CASE("smoothness") {
  REQUIRE(is_smooth(make_orthant_fan(2)));
  Fan bad = Fan::from_data(2, {{Int(1), Int(0)}, {Int(1), Int(2)}}, {{0, 1}});
  REQUIRE_FALSE(is_smooth(bad));
  REQUIRE(is_smooth(reference_octant_fan()));
  REQUIRE(is_valid_fan(reference_octant_fan()));
}

TEST_CASE("two dimensional cones") {
  REQUIRE(two_dim_cones(make_orthant_fan(2)).size() == 4);
  REQUIRE(two_dim_cones(make_orthant_fan(3)).size() == 12);
  Fan ray = Fan::from_data(2, {{Int(1), Int(0)}}, {{0}});
  REQUIRE(two_dim_cones(ray).empty());
}

TEST_CASE("completeness") {
  REQUIRE(is_complete(make_orthant_fan(2)));
  REQUIRE_FALSE(is_complete(octant3()));
  Fan fig4 = resolve_all(make_orthant_fan(2), {IntVec{1, 0}, IntVec{1, 2}}).first;
  REQUIRE(is_complete(fig4));
  Fan mixed = Fan::from_data(2, {{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(-1), Int(-1)}},
                             {{0, 1}, {2}});
  REQUIRE_THROWS_AS(is_complete(mixed), MixedDimensionError);
}

TEST_CASE("stellar subdivision of the first quadrant") {
  Fan f = make_orthant_fan(2);
  int a = f.find_ray(IntVec{1, 0});
  int b = f.find_ray(IntVec{0, 1});
  Fan g = stellar_subdivide_2cone(f, Cone({a, b}));
  REQUIRE(g.rays().size() == 5);
  REQUIRE(g.find_ray(IntVec{1, 1}) != -1);
  REQUIRE(g.maximal_cones().size() == 5);
  REQUIRE(is_smooth(g));
  REQUIRE(is_complete(g));
  REQUIRE(is_valid_fan(g));
}

TEST_CASE("stellar subdivision splits the octant") {
  Fan f = octant3();
  int e1 = f.find_ray(IntVec{1, 0, 0});
  int e3 = f.find_ray(IntVec{0, 0, 1});
  Fan g = stellar_subdivide_2cone(f, Cone({e1, e3}));
  REQUIRE(g.maximal_cones().size() == 2);
  int w = g.find_ray(IntVec{1, 0, 1});
  REQUIRE(w != -1);
  std::set<std::vector<IntVec>> got;
  for (const auto& m : g.maximal_cones()) {
    auto rs = g.cone_rays(m);
    std::sort(rs.begin(), rs.end(), vec_less);
    got.insert(rs);
  }
  std::vector<IntVec> c1 = {{Int(0), Int(1), Int(0)}, {Int(1), Int(0), Int(0)},
                            {Int(1), Int(0), Int(1)}};
  std::vector<IntVec> c2 = {{Int(0), Int(0), Int(1)}, {Int(0), Int(1), Int(0)},
                            {Int(1), Int(0), Int(1)}};
  REQUIRE(got.count(c1) == 1);
  REQUIRE(got.count(c2) == 1);
}

TEST_CASE("stellar subdivision rejects non-2-faces") {
  Fan f = octant3();
  REQUIRE_THROWS_AS(stellar_subdivide_2cone(f, Cone({0, 1, 2})), NotATwoFaceError);
  Fan q = make_orthant_fan(2);
  int a = q.find_ray(IntVec{1, 0});
  int na = q.find_ray(IntVec{-1, 0});
  REQUIRE_THROWS_AS(stellar_subdivide_2cone(q, Cone({a, na})), NotATwoFaceError);
}

TEST_CASE("stellar subdivision properties on random moves") {
  tu::Rng rng(5150);
  for (int t = 0; t < 12; ++t) {
    std::uniform_int_distribution<std::size_t> dim(2, 3);
    Fan f = tu::rnd_subdivided_orthant(rng, dim(rng), 2);
    auto twos = two_dim_cones(f);
    std::uniform_int_distribution<std::size_t> pick(0, twos.size() - 1);
    Cone sigma = twos[pick(rng)];
    std::size_t containing = 0;
    for (const auto& m : f.maximal_cones())
      if (sigma.is_face_of(m)) ++containing;
    Fan g = stellar_subdivide_2cone(f, sigma);
    REQUIRE(is_smooth(g));
    REQUIRE(g.maximal_cones().size() == f.maximal_cones().size() + containing);
    REQUIRE(is_complete(g));
    REQUIRE(is_valid_fan(g));
    // Support preservation, certified point by point.
    for (const auto& m : f.maximal_cones()) {
      bool ok = false;
      tu::check_support_covered(rng, f, m, g, 20, &ok);
      REQUIRE(ok);
    }
  }
}

TEST_CASE("orbit closure fans") {
  Fan f2 = make_orthant_fan(2);
  int e1 = f2.find_ray(IntVec{1, 0});
  Fan p1 = orbit_closure_fan(f2, Cone({e1}));
  REQUIRE(p1.rank() == 1);
  REQUIRE(p1.maximal_cones().size() == 2);
  REQUIRE(is_complete(p1));
  REQUIRE(is_smooth(p1));

  Fan f3 = make_orthant_fan(3);
  int a = f3.find_ray(IntVec{1, 0, 0});
  int b = f3.find_ray(IntVec{0, 1, 0});
  Fan q = orbit_closure_fan(f3, Cone({a, b}));
  REQUIRE(q.rank() == 1);
  REQUIRE(q.maximal_cones().size() == 2);

  REQUIRE(orbit_closure_fan(f2, Cone{}) == f2);

  int na = f2.find_ray(IntVec{-1, 0});
  REQUIRE_THROWS_AS(orbit_closure_fan(f2, Cone({e1, na})), ConeNotInFanError);
}

TEST_CASE("Weyl fans of type A") {
  Fan w1 = make_weyl_fan_A(1);
  REQUIRE(w1.maximal_cones().size() == 2);

  Fan w2 = make_weyl_fan_A(2);
  REQUIRE(w2.maximal_cones().size() == 6);
  REQUIRE(is_complete(w2));
  REQUIRE(is_smooth(w2));
  REQUIRE(is_valid_fan(w2));

  Fan w3 = make_weyl_fan_A(3);
  REQUIRE(w3.maximal_cones().size() == 24);
  REQUIRE(is_complete(w3));
  REQUIRE(is_smooth(w3));
}

TEST_CASE("fan construction rejects malformed data") {
  REQUIRE_THROWS_AS(Fan::from_data(2, {{Int(2), Int(0)}}, {{0}}), ParseError);
  REQUIRE_THROWS_AS(Fan::from_data(2, {{Int(0), Int(0)}}, {{0}}), ParseError);
  REQUIRE_THROWS_AS(Fan::from_data(2, {{Int(1), Int(0)}}, {{0, 1}}), ParseError);
  REQUIRE_THROWS_AS(
      Fan::from_data(2, {{Int(1), Int(0)}, {Int(-1), Int(0)}}, {{0, 1}}), ParseError);
}

TEST_CASE("pairwise face condition detects broken fans") {
  // Two quadrants overlapping in a half plane, not a common face.
  Fan broken = Fan::from_data(
      2, {{Int(1), Int(0)}, {Int(0), Int(1)}, {Int(1), Int(1)}, {Int(-1), Int(0)}},
      {{0, 1}, {2, 3}});
  REQUIRE_FALSE(is_valid_fan(broken));
}
