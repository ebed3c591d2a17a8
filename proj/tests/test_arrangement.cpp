#include <catch2/catch_amalgamated.hpp>

#include "testutil.hpp"

using namespace torfan;

namespace {

Layer divisor(std::size_t n, const IntVec& chi, const TorusValue& v) {
  return Layer(n, v.generic.size(), Sublattice::from_rows(n, {chi}), {v});
}

TorusValue torsion(int p, int q) { return TorusValue(Rat(p, q), {}); }

}  // namespace

TEST_CASE("value group arithmetic") {
  TorusValue half = torsion(1, 2);
  REQUIRE(value_mul(half, half).is_one());
  REQUIRE(value_pow(half, Int(2)).is_one());

  TorusValue v(Rat(1, 3), {Rat(2), Rat(-1, 2)});
  REQUIRE(value_pow(v, Int(1)) == v);

  TorusValue sqrt_t1(Rat(0), {Rat(1, 2)});
  TorusValue t1 = value_mul(sqrt_t1, sqrt_t1);
  REQUIRE(t1.generic == RatVec{Rat(1)});
  REQUIRE(t1.torsion == 0);

  TorusValue other_params(Rat(0), {Rat(1), Rat(2)});
  REQUIRE_THROWS_AS(value_mul(sqrt_t1, other_params), DimensionMismatchError);
}

TEST_CASE("xi of an arrangement") {
  Arrangement a(3, 0);
  a.add_layer(divisor(3, IntVec{3, 0, -2}, torsion(0, 1)));
  a.add_layer(divisor(3, IntVec{2, 1, -1}, torsion(0, 1)));
  auto xi = xi_of(a);
  REQUIRE(xi == std::vector<IntVec>{{Int(3), Int(0), Int(-2)}, {Int(2), Int(1), Int(-1)}});

  REQUIRE(xi_of(Arrangement(2, 0)).empty());

  Arrangement b(2, 0);
  b.add_layer(divisor(2, IntVec{1, 0}, torsion(0, 1)));
  b.add_layer(divisor(2, IntVec{-1, 0}, torsion(1, 2)));
  REQUIRE(xi_of(b).size() == 1);
}

TEST_CASE("transversal axes meet in one point") {
  Layer lx = divisor(2, IntVec{1, 0}, torsion(0, 1));
  Layer ly = divisor(2, IntVec{0, 1}, torsion(0, 1));
  auto comps = intersect_layers(lx, ly);
  REQUIRE(comps.size() == 1);
  const Layer& p = comps[0];
  REQUIRE(p.gamma.rank() == 2);
  REQUIRE(is_split_summand(p.gamma));
  REQUIRE(layer_value_at(p, IntVec{1, 0})->is_one());
  REQUIRE(layer_value_at(p, IntVec{0, 1})->is_one());
}

TEST_CASE("index two intersection has two components") {
  Layer l1 = divisor(2, IntVec{1, 1}, torsion(0, 1));
  Layer l2 = divisor(2, IntVec{1, -1}, torsion(0, 1));
  auto comps = intersect_layers(l1, l2);
  REQUIRE(comps.size() == 2);
  // Solutions of xy = 1, x/y = 1 are (1,1) and (-1,-1).
  std::set<std::pair<Rat, Rat>> got;
  for (const auto& c : comps) {
    REQUIRE(is_split_summand(c.gamma));
    REQUIRE(layer_contains(l1, c));
    REQUIRE(layer_contains(l2, c));
    got.insert({layer_value_at(c, IntVec{1, 0})->torsion, layer_value_at(c, IntVec{0, 1})->torsion});
  }
  std::set<std::pair<Rat, Rat>> expected = {{Rat(0), Rat(0)}, {Rat(1, 2), Rat(1, 2)}};
  REQUIRE(got == expected);
}

TEST_CASE("incompatible parallel layers are disjoint") {
  Layer l1 = divisor(2, IntVec{1, 0}, torsion(0, 1));
  Layer l2 = divisor(2, IntVec{1, 0}, torsion(1, 2));
  REQUIRE(intersect_layers(l1, l2).empty());
  REQUIRE(intersect_layers(l1, l1).size() == 1);
  REQUIRE(layer_eq(intersect_layers(l1, l1)[0], l1));
}

TEST_CASE("intersection is symmetric and restricts correctly") {
  tu::Rng rng(2718);
  for (int t = 0; t < 40; ++t) {
    std::uniform_int_distribution<std::size_t> dim(2, 3);
    std::size_t n = dim(rng);
    Layer l1 = tu::rnd_torsion_layer(rng, n, 6);
    Layer l2 = tu::rnd_torsion_layer(rng, n, 6);
    auto ab = intersect_layers(l1, l2);
    auto ba = intersect_layers(l2, l1);
    REQUIRE(ab.size() == ba.size());
    for (const auto& c : ab) {
      bool matched = false;
      for (const auto& d : ba)
        if (layer_eq(c, d)) matched = true;
      REQUIRE(matched);
      REQUIRE(is_split_summand(c.gamma));
      REQUIRE(layer_contains(l1, c));
      REQUIRE(layer_contains(l2, c));
    }
    // Component count equals the index of the sum in its saturation.
    if (!ab.empty()) {
      std::vector<IntVec> stacked = l1.gamma.basis.to_rows();
      for (const auto& r : l2.gamma.basis.to_rows()) stacked.push_back(r);
      IntMat m = IntMat::from_rows(stacked);
      Int expected = 1;
      for (const auto& f : invariant_factors(smith_normal_form(m))) expected *= f;
      REQUIRE(Int(ab.size()) == expected);
    }
  }
}

TEST_CASE("intersection components match the torsion grid oracle") {
  tu::Rng rng(60902);
  int done = 0;
  while (done < 15) {
    std::uniform_int_distribution<std::size_t> dim(2, 3);
    std::size_t n = dim(rng);
    Layer l1 = tu::rnd_torsion_layer(rng, n, 6);
    Layer l2 = tu::rnd_torsion_layer(rng, n, 6);
    auto comps = intersect_layers(l1, l2);

    // Grid fine enough to hit every component: common torsion denominator
    // of all input and output values times the lattice data.
    Int m_grid = 1;
    auto fold = [&](const Rat& r) { m_grid = boost::multiprecision::lcm(m_grid, denominator(r)); };
    for (const Layer* l : {&l1, &l2})
      for (const auto& v : l->values) fold(v.torsion);
    for (const auto& c : comps)
      for (const auto& v : c.values) fold(v.torsion);
    std::vector<IntVec> stacked = l1.gamma.basis.to_rows();
    for (const auto& r : l2.gamma.basis.to_rows()) stacked.push_back(r);
    Int idx = 1;
    for (const auto& f : invariant_factors(smith_normal_form(IntMat::from_rows(stacked))))
      idx *= f;
    m_grid = boost::multiprecision::lcm(m_grid, idx);
    if (m_grid > 90) continue;  // keep the brute force tractable

    IntMat claimed = comps.empty() ? IntMat(0, n) : comps[0].gamma.basis;
    auto oracle = tu::torsion_grid_components(l1, l2, claimed, static_cast<long>(m_grid));
    if (!oracle) continue;
    REQUIRE(oracle->size() == comps.size());
    std::set<std::vector<long>> impl;
    for (const auto& c : comps) {
      std::vector<long> tuple;
      for (const auto& v : c.values) {
        Rat scaled = v.torsion * m_grid;
        REQUIRE(denominator(scaled) == 1);
        Int num = numerator(scaled) % m_grid;
        if (num < 0) num += m_grid;
        tuple.push_back(static_cast<long>(num));
      }
      impl.insert(std::move(tuple));
    }
    REQUIRE(impl == *oracle);
    ++done;
  }
}

TEST_CASE("A-layer poset fixtures") {
  Arrangement single(2, 0);
  single.add_layer(divisor(2, IntVec{1, 0}, torsion(0, 1)));
  LayerPoset p1 = all_A_layers(single);
  REQUIRE(p1.elements.size() == 2);

  Arrangement two(2, 0);
  two.add_layer(divisor(2, IntVec{1, 1}, torsion(0, 1)));
  two.add_layer(divisor(2, IntVec{1, -1}, torsion(0, 1)));
  LayerPoset p2 = all_A_layers(two);
  REQUIRE(p2.elements.size() == 5);  // top, two divisors, two points

  REQUIRE(all_A_layers(Arrangement(3, 0)).elements.size() == 1);
}

TEST_CASE("A-layer poset is intersection closed") {
  tu::Rng rng(1123);
  for (int t = 0; t < 8; ++t) {
    Arrangement a(2, 0);
    a.add_layer(tu::rnd_torsion_layer(rng, 2, 4));
    a.add_layer(tu::rnd_torsion_layer(rng, 2, 4));
    LayerPoset p = all_A_layers(a);
    for (std::size_t i = 0; i < p.elements.size(); ++i)
      for (std::size_t j = 0; j < p.elements.size(); ++j)
        for (const auto& c : intersect_layers(p.elements[i], p.elements[j])) {
          bool present = false;
          for (const auto& e : p.elements)
            if (e.gamma.rank() == c.gamma.rank() && layer_eq(e, c)) present = true;
          REQUIRE(present);
        }
  }
}

TEST_CASE("digraph arrangements") {
  Arrangement a1 = from_digraph(2, {{0, 1}}, {torsion(0, 1)});
  REQUIRE(a1.rank == 1);
  REQUIRE(a1.layers.size() == 1);
  REQUIRE(a1.layers[0].gamma.basis.row(0) == IntVec{1});

  Arrangement a2 = from_digraph(3, {{0, 1}, {1, 2}, {0, 2}},
                                {torsion(0, 1), torsion(0, 1), torsion(0, 1)});
  REQUIRE(a2.rank == 2);
  REQUIRE(a2.layers[0].gamma.basis.row(0) == IntVec{1, 0});
  REQUIRE(a2.layers[1].gamma.basis.row(0) == IntVec{0, 1});
  REQUIRE(a2.layers[2].gamma.basis.row(0) == IntVec{1, 1});

  REQUIRE(from_digraph(3, {}, {}).layers.empty());
  REQUIRE_THROWS_AS(from_digraph(3, {{1, 1}}, {torsion(0, 1)}), Error);
}

TEST_CASE("span reduction") {
  Arrangement a(2, 0);
  a.add_layer(divisor(2, IntVec{1, 0}, torsion(1, 3)));
  auto [reduced, basis] = reduce_span(a);
  REQUIRE(reduced.rank == 1);
  REQUIRE(reduced.layers.size() == 1);
  REQUIRE(reduced.layers[0].gamma.basis.row(0) == IntVec{1});
  REQUIRE(reduced.layers[0].values[0].torsion == Rat(1, 3));
  Int d = det(basis);
  REQUIRE((d == 1 || d == -1));

  Arrangement full(2, 0);
  full.add_layer(divisor(2, IntVec{1, 0}, torsion(0, 1)));
  full.add_layer(divisor(2, IntVec{0, 1}, torsion(0, 1)));
  auto [same, id] = reduce_span(full);
  REQUIRE(same.rank == 2);
  REQUIRE(id == IntMat::identity(2));

  // A non-primitive character first normalizes into components, then
  // reduces to a rank-one arrangement with a primitive character.
  Arrangement c(2, 0);
  for (const auto& comp :
       normalize_layer(2, 0, IntMat::from_rows({{Int(2), Int(2)}}), {torsion(0, 1)}))
    c.add_layer(comp);
  REQUIRE(c.layers.size() == 2);
  auto [rc, cb] = reduce_span(c);
  REQUIRE(rc.rank == 1);
  for (const auto& l : rc.layers) {
    REQUIRE(l.gamma.rank() == 1);
    REQUIRE(is_primitive(l.gamma.basis.row(0)));
  }
}

TEST_CASE("normalizing a non-split layer splits it") {
  auto comps = normalize_layer(2, 0, IntMat::from_rows({{Int(2), Int(0)}}), {torsion(1, 2)});
  REQUIRE(comps.size() == 2);
  std::set<Rat> torsions;
  for (const auto& c : comps) {
    REQUIRE(lattice_eq(c.gamma, Sublattice::from_rows(2, {{Int(1), Int(0)}})));
    torsions.insert(layer_value_at(c, IntVec{1, 0})->torsion);
    // Each component restricts back to the original value on (2,0).
    REQUIRE(layer_value_at(c, IntVec{2, 0})->torsion == Rat(1, 2));
  }
  REQUIRE(torsions == std::set<Rat>{Rat(1, 4), Rat(3, 4)});
}
