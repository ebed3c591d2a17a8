#include <catch2/catch_amalgamated.hpp>

#include "testutil.hpp"

using namespace torfan;

TEST_CASE("d-vector fixtures") {
  auto d2 = d_vector(make_orthant_fan(2));
  REQUIRE(d2 == std::vector<Int>{1, 4, 4});

  auto d3 = d_vector(make_orthant_fan(3));
  REQUIRE(d3 == std::vector<Int>{1, 6, 12, 8});

  Fan fig4 = resolve_all(make_orthant_fan(2), {IntVec{1, 0}, IntVec{1, 2}}).first;
  REQUIRE(d_vector(fig4) == std::vector<Int>{1, 8, 8});

  Fan oct = Fan::from_data(
      3, {{Int(1), Int(0), Int(0)}, {Int(0), Int(1), Int(0)}, {Int(0), Int(0), Int(1)}},
      {{0, 1, 2}});
  REQUIRE_THROWS_AS(d_vector(oct), NotCompleteError);
}

TEST_CASE("betti number fixtures") {
  PoincarePolynomial p2 = betti_numbers(make_orthant_fan(2));
  REQUIRE(p2.coeffs == std::vector<Int>{1, 2, 1});

  PoincarePolynomial p3 = betti_numbers(make_orthant_fan(3));
  REQUIRE(p3.coeffs == std::vector<Int>{1, 3, 3, 1});

  Fan fig4 = resolve_all(make_orthant_fan(2), {IntVec{1, 0}, IntVec{1, 2}}).first;
  PoincarePolynomial pf = betti_numbers(fig4);
  REQUIRE(pf.coeffs == std::vector<Int>{1, 6, 1});
  REQUIRE(pf.euler_characteristic() == 8);
}

TEST_CASE("betti symmetry and total on random complete fans") {
  tu::Rng rng(1234);
  for (int t = 0; t < 10; ++t) {
    std::uniform_int_distribution<std::size_t> dim(2, 3);
    std::uniform_int_distribution<int> nmoves(0, 4);
    Fan f = tu::rnd_subdivided_orthant(rng, dim(rng), nmoves(rng));
    PoincarePolynomial p = betti_numbers(f);
    const std::size_t n = f.rank();
    for (std::size_t k = 0; k <= n; ++k) REQUIRE(p.coeffs[k] == p.coeffs[n - k]);
    REQUIRE(p.euler_characteristic() == Int(f.maximal_cones().size()));
  }
}

TEST_CASE("blowup update fixtures") {
  PoincarePolynomial surface{{Int(1), Int(2), Int(1)}};
  PoincarePolynomial point{{Int(1)}};
  REQUIRE(blowup_update(surface, point).coeffs == std::vector<Int>{1, 3, 1});

  PoincarePolynomial zero{};
  REQUIRE(blowup_update(surface, zero) == surface);

  PoincarePolynomial threefold{{Int(1), Int(3), Int(3), Int(1)}};
  PoincarePolynomial line{{Int(1), Int(1)}};
  REQUIRE(blowup_update(threefold, line).coeffs == std::vector<Int>{1, 4, 4, 1});

  // Cross-check against a stellar move on the three-dimensional orthant fan.
  Fan f = make_orthant_fan(3);
  Cone sigma = two_dim_cones(f)[0];
  Fan g = stellar_subdivide_2cone(f, sigma);
  REQUIRE(betti_numbers(g).coeffs == std::vector<Int>{1, 4, 4, 1});

  REQUIRE_THROWS_AS(blowup_update(surface, PoincarePolynomial{{Int(1), Int(1)}}),
                    DimensionMismatchError);
}

TEST_CASE("blowup identity on random stellar moves") {
  tu::Rng rng(98765);
  for (int t = 0; t < 8; ++t) {
    std::uniform_int_distribution<int> nmoves(0, 3);
    Fan f = tu::rnd_subdivided_orthant(rng, 3, nmoves(rng));
    auto twos = two_dim_cones(f);
    std::uniform_int_distribution<std::size_t> pick(0, twos.size() - 1);
    Cone sigma = twos[pick(rng)];
    Fan g = stellar_subdivide_2cone(f, sigma);
    PoincarePolynomial before = betti_numbers(f);
    PoincarePolynomial center = betti_numbers(orbit_closure_fan(f, sigma));
    REQUIRE(betti_numbers(g) == blowup_update(before, center));
  }
}
