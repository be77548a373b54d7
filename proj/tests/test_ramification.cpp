#include <doctest.h>

#include <map>
#include <random>

#include "herbrand/enumerate.hpp"
#include "herbrand/ramification.hpp"
#include "oracles.hpp"

using namespace herbrand;
using oracle::frac;

namespace {

Filtration f_2_11() { return Filtration{3, {2, 11}, {9, 3, 1}, false}; }

bool has_violation(const std::vector<Violation>& v, const std::string& name) {
  for (const auto& x : v)
    if (x.constraint == name) return true;
  return false;
}

// phi compared against the unit-cell integral at every half-integer up to `upto`.
void check_phi_against_cells(const Filtration& f, std::int64_t upto) {
  const PLFunction phi = phi_of(f);
  for (std::int64_t twice = 0; twice <= 2 * upto; ++twice) {
    const Rational x = frac(twice, 2);
    CHECK(phi(x) == oracle::phi_by_cells(f.breaks, f.orders, x));
  }
}

}  // namespace

TEST_CASE("filtration validation") {
  CHECK(filtration_violations(f_2_11()).empty());
  CHECK(has_violation(filtration_violations(Filtration{4, {1}, {4, 1}, false}), "residue_char"));
  CHECK(has_violation(filtration_violations(Filtration{3, {2, 1}, {9, 3, 1}, false}), "breaks"));
  CHECK(has_violation(filtration_violations(Filtration{3, {2}, {6, 1}, false}), "orders"));
  CHECK(has_violation(filtration_violations(Filtration{3, {2}, {9, 3}, false}), "orders"));
  CHECK(has_violation(filtration_violations(Filtration{3, {2, 11}, {9, 1}, false}), "shape"));
  // phi(3) = 2 + 1/3 is not integral.
  CHECK(has_violation(filtration_violations(Filtration{3, {2, 3}, {9, 3, 1}, true}), "hasse_arf"));
  CHECK_THROWS_AS(check_filtration(Filtration{3, {2, 3}, {9, 3, 1}, true}), InvalidSpec);
}

TEST_CASE("phi_of") {
  CHECK(phi_of(Filtration{}) == PLFunction::identity());
  const PLFunction phi = phi_of(f_2_11());
  CHECK(phi == PLFunction::from_slopes({0, 2, 11}, {Rational(1), frac(1, 3), frac(1, 9)}));
  check_phi_against_cells(f_2_11(), 30);
  CHECK(phi_of(Filtration{3, {1}, {3, 1}, false}) == PLFunction::from_slopes({0, 1}, {Rational(1), frac(1, 3)}));
}

TEST_CASE("psi_of") {
  CHECK(psi_of(Filtration{}) == PLFunction::identity());
  const PLFunction psi = psi_of(f_2_11());
  CHECK(psi == PLFunction::from_slopes({0, 2, 5}, {Rational(1), Rational(3), Rational(9)}));
  CHECK(psi(5) == 11);
  for (std::int64_t y = 0; y <= 20; ++y) CHECK(psi(y) == oracle::psi_by_search({2, 11}, {9, 3, 1}, y));
  // Large-argument law.
  for (std::int64_t x = 5; x < 40; ++x) CHECK(psi(x) == 9 * x - wild_exponent(f_2_11()));
}

TEST_CASE("cyclic_psi") {
  CHECK(cyclic_psi({3, 1, 2, {2}}) == PLFunction({{0, 0}, {2, 2}}, 3));
  CHECK(cyclic_psi({3, 1, 2, {2}})(10) == 3 * 10 - 4);

  const CyclicWildSpec s11{3, 2, 1, {1, 1}};
  const PLFunction psi = cyclic_psi(s11);
  CHECK(psi(1) == 1);
  CHECK(psi(frac(3, 2)) == 3 * frac(3, 2) - 2);
  CHECK(psi(7) == 9 * 7 - 14);
  CHECK(psi == psi_of(Filtration{3, {1, 4}, {9, 3, 1}, false}));

  const CyclicWildSpec s23{3, 2, 3, {2, 3}};
  CHECK(jumps(cyclic_psi(s23)) == std::vector<Rational>{2, 5});
  CHECK(cyclic_psi(s23)(100) == 900 - 34);
  CHECK_THROWS_AS(cyclic_psi({3, 2, 3, {2, 2}}), InvalidSpec);
}

TEST_CASE("cyclic_phi") {
  const PLFunction phi1 = cyclic_phi({3, 1, 2, {2}});
  CHECK(phi1 == PLFunction::from_slopes({0, 2}, {Rational(1), frac(1, 3)}));
  CHECK(phi1(7) == frac(7 + 4, 3));
  const CyclicWildSpec s23{3, 2, 3, {2, 3}};
  CHECK(cyclic_phi(s23)(40) == frac(40 + 34, 9));
  CHECK(cyclic_phi(s23) == invert(cyclic_psi(s23)));
  for (std::int64_t x = 0; x <= 2; ++x) CHECK(cyclic_phi(s23)(x) == x);
}

TEST_CASE("wild_exponent") {
  CHECK(wild_exponent(Filtration{}) == 0);
  CHECK(wild_exponent(f_2_11()) == 2 * (9 - 3) + 11 * (3 - 1));
  CHECK(wild_exponent(Filtration{5, {3}, {5, 1}, false}) == 12);
}

TEST_CASE("upper_jumps") {
  CHECK(upper_jumps(f_2_11()) == std::vector<Rational>{2, 5});
  CHECK(upper_jumps(CyclicWildSpec{3, 2, 3, {2, 3}}) == std::vector<std::int64_t>{2, 5});
  CHECK(upper_jumps(CyclicWildSpec{5, 3, 4, {2, 4, 4}}) == std::vector<std::int64_t>{2, 6, 10});
  CHECK(upper_jumps(Filtration{5, {3}, {5, 1}, false}) == std::vector<Rational>{3});
}

TEST_CASE("lower jumps of cyclic data") {
  CHECK(lower_jumps(CyclicWildSpec{3, 2, 3, {2, 3}}) == std::vector<std::int64_t>{2, 11});
  CHECK(lower_jumps(CyclicWildSpec{3, 2, 1, {1, 1}}) == std::vector<std::int64_t>{1, 4});
}

TEST_CASE("compose_tower_phi") {
  CHECK(compose_tower_phi(TowerSpec{{TameLayer{3}}}) == PLFunction::linear(frac(1, 3)));
  CHECK(compose_tower_phi(TowerSpec{}) == PLFunction::identity());
  const TowerSpec t{{TameLayer{2}, f_2_11()}};
  CHECK(compose_tower_phi(t)(11) == frac(5, 2));
  CHECK(compose_tower_psi(t) == invert(compose_tower_phi(t)));
  CHECK_THROWS_AS(compose_tower_phi(TowerSpec{{TameLayer{3}, Filtration{3, {1}, {3, 1}, false}, TameLayer{6}}}),
                  InvalidSpec);
}

TEST_CASE("tame scaling through towers") {
  // Restriction multiplies by e, induction divides: phi of a tame layer is x/e.
  for (std::int64_t e : {2, 4, 5}) {
    const TowerSpec t{{TameLayer{e}, f_2_11()}};
    for (std::int64_t x = 0; x < 30; ++x)
      CHECK(compose_tower_phi(t)(x) * e == phi_of(f_2_11())(Rational(x)));
  }
}

TEST_CASE("psi_relative") {
  const PLFunction base = compose_tower_psi(TowerSpec{{TameLayer{2}, f_2_11()}});
  CHECK(psi_relative(PLFunction::identity(), base) == base);
  CHECK(psi_relative(base, base) == PLFunction::identity());
  // psi of the tame step F'/F is 2x; the wild step over it is recovered.
  const PLFunction mid = PLFunction::linear(2);
  CHECK(compose(psi_of(f_2_11()), mid) == base);
  CHECK(psi_relative(mid, compose(mid, psi_of(f_2_11()))) == psi_of(f_2_11()));
}

TEST_CASE("validate_cyclic") {
  CHECK(validate_cyclic({3, 2, 3, {2, 3}}).empty());
  const auto v = validate_cyclic({3, 2, 3, {2, 2}});
  CHECK(has_violation(v, "fontaine_viennot_case1"));
  CHECK(has_violation(validate_cyclic({3, 1, 1, {100}}), "first_jump_bound"));
  CHECK(has_violation(validate_cyclic({4, 1, 1, {1}}), "residue_char"));
  CHECK(has_violation(validate_cyclic({3, 2, 1, {1}}), "shape"));
  // e_F = 2: l_1 = 1 >= 2/2 puts us in Case 1, forcing l_2 = 1 + 3*2.
  CHECK(validate_cyclic({3, 2, 2, {1, 2}}).empty());
  CHECK(has_violation(validate_cyclic({3, 2, 2, {1, 1}}), "fontaine_viennot_case1"));
}

TEST_CASE("validate_cyclic agrees with the independent admissibility oracle") {
  for (std::int64_t p : {3, 5, 7})
    for (std::int64_t e : {1, 2, 3, 4, 6})
      for (std::int64_t a = 1; a <= 12; ++a)
        for (std::int64_t b = 1; b <= 12; ++b) {
          const std::vector<std::int64_t> inc{a, b};
          CHECK(validate_cyclic({p, 2, e, inc}).empty() == oracle::admissible(p, e, inc));
        }
}

TEST_CASE("element_classes") {
  CHECK(element_classes(f_2_11()) == std::vector<ElementClass>{{2, 6}, {11, 2}});
  CHECK(element_classes(f_2_11(), 2) == std::vector<ElementClass>{{0, 9}, {2, 6}, {11, 2}});
  const auto single = element_classes(Filtration{5, {3}, {5, 1}, false});
  CHECK(single.front().delta == 3);
  // Against explicit elements of Z/9.
  std::map<std::int64_t, std::int64_t> by_delta;
  for (auto d : oracle::cyclic_element_deltas(3, {2, 11})) ++by_delta[d];
  CHECK(by_delta == std::map<std::int64_t, std::int64_t>{{2, 6}, {11, 2}});
}

TEST_CASE("smallest_nonzero_jump") {
  CHECK(smallest_nonzero_jump(TowerSpec{{f_2_11()}}) == 2);
  CHECK(smallest_nonzero_jump(TowerSpec{{TameLayer{4}, f_2_11()}}) == 2);
  CHECK(smallest_nonzero_jump(TowerSpec{{Filtration{3, {1, 4}, {9, 3, 1}, false}}}) == 1);
  CHECK_THROWS_WITH_AS(smallest_nonzero_jump(TowerSpec{{TameLayer{4}}}), "tower is tame", InvalidSpec);
}

TEST_CASE("tower_wild_classes lifts lower layers through psi") {
  // Z/9 with jumps (1, 4) split as a tower: bottom Z/3 quotient (jump 1),
  // top Z/3 subgroup (jump 4). The lift must reproduce the full group's classes.
  const Filtration full{3, {1, 4}, {9, 3, 1}, false};
  const auto [sub, quo] = split_at_break(full, 1);
  const auto classes = tower_wild_classes(TowerSpec{{quo, sub}});
  CHECK(classes == element_classes(full));
  CHECK(tower_wild_order(TowerSpec{{quo, sub}}) == 9);
  CHECK(tower_tame_degree(TowerSpec{{TameLayer{2}, quo, TameLayer{4}, sub}}) == 8);
}

TEST_CASE("decompose_psi") {
  const auto steps = decompose_psi(f_2_11());
  REQUIRE(steps.size() == 2);
  CHECK(steps[0].jump == 2);
  CHECK(steps[0].degree == 3);
  CHECK(steps[0].wild_exp == 4);
  CHECK(steps[1].jump == 5);
  CHECK(steps[1].degree == 3);
  CHECK(steps[1].wild_exp == 34);
  const auto one = decompose_psi(Filtration{5, {3}, {5, 1}, false});
  REQUIRE(one.size() == 1);
  CHECK(one[0].degree == 5);
  for (const auto& s : steps) CHECK(jump_ratio(psi_of(f_2_11()), s.jump) == s.degree);
}

TEST_CASE("split_at_break") {
  const Filtration g{3, {2, 11, 20}, {27, 9, 3, 1}, false};
  for (std::size_t k = 1; k < g.breaks.size(); ++k) {
    const auto [sub, quo] = split_at_break(g, k);
    CHECK(filtration_violations(sub).empty());
    CHECK(filtration_violations(quo).empty());
    CHECK(sub.degree() * quo.degree() == g.degree());
    CHECK(compose(psi_of(sub), psi_of(quo)) == psi_of(g));
    CHECK(sub.breaks.front() >= g.breaks.front());
    CHECK(Rational(quo.breaks.front()) >= phi_of(sub)(Rational(g.breaks.front())));
  }
  CHECK_THROWS_AS(split_at_break(g, 0), InvalidSpec);
  CHECK_THROWS_AS(split_at_break(g, 3), InvalidSpec);
}

TEST_CASE("property: Herbrand identities on enumerated cyclic specs") {
  std::int64_t n = 0;
  for (std::int64_t p : {3, 5, 7})
    for (std::int64_t r = 1; r <= 3; ++r)
      for (std::int64_t e = 1; e <= 4; ++e)
        for (const auto& s : enum_cyclic(p, r, e, 60)) {
          ++n;
          const Filtration f = to_filtration(s);
          const auto l = lower_jumps(s);
          const auto j = upper_jumps(s);
          CHECK(phi_of(f) == cyclic_phi(s));
          CHECK(psi_of(f) == cyclic_psi(s));
          CHECK(invert(phi_of(f)) == psi_of(f));
          CHECK(compose(phi_of(f), psi_of(f)) == PLFunction::identity());
          std::vector<Rational> jr(j.begin(), j.end());
          CHECK(jumps(psi_of(f)) == jr);
          CHECK(upper_jumps(f) == jr);
          for (const auto& x : jr) CHECK(jump_ratio(psi_of(f), x) == p);
          std::int64_t w_elements = 0;
          for (auto d : oracle::cyclic_element_deltas(p, l)) w_elements += d;
          CHECK(wild_exponent(f) == w_elements);
          CHECK(psi_of(f)(Rational(j.back())) == f.degree() * j.back() - w_elements);
          if (r >= 2) CHECK(l.back() - l.front() >= j.back());
          for (std::int64_t x = 0; x <= l.back() + 2; ++x)
            CHECK(phi_of(f)(Rational(x)) == oracle::phi_by_cells(f.breaks, f.orders, Rational(x)));
        }
  CHECK(n > 50);
}

TEST_CASE("property: round trip on random general filtrations") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    const std::int64_t p = std::vector<std::int64_t>{3, 5, 7}[rng() % 3];
    const Filtration f = random_filtration(rng, p);
    REQUIRE(filtration_violations(f).empty());
    CHECK(compose(phi_of(f), psi_of(f)) == PLFunction::identity());
    CHECK(jumps(psi_of(f)) == upper_jumps(f));
    for (const auto& u : upper_jumps(f)) CHECK(jump_ratio(psi_of(f), u) > 1);
    for (std::int64_t x = 0; x <= f.breaks.back() + 1; ++x)
      CHECK(phi_of(f)(Rational(x)) == oracle::phi_by_cells(f.breaks, f.orders, Rational(x)));
  }
}
