#include <doctest.h>

#include <random>

#include "herbrand/json_io.hpp"
#include "oracles.hpp"

using namespace herbrand;

TEST_CASE("rational encodings") {
  CHECK(to_json(oracle::frac(-6, 4)) == Json::array({-3, 2}));
  CHECK(rational_from_json(Json::array({4, -6})) == oracle::frac(-2, 3));
  CHECK(rational_from_json(Json(7)) == 7);
  CHECK(rational_from_json(Json("10/4")) == oracle::frac(5, 2));
  CHECK_THROWS_AS(rational_from_json(Json::array({1, 0})), InvalidSpec);
  CHECK_THROWS_AS(rational_from_json(Json(1.5)), InvalidSpec);

  const Integer big = ipow(3, 60);
  CHECK(to_json(big) == Json(big.get_str()));
  CHECK(rational_from_json(to_json(Rational(big, 7))) == Rational(big, 7));
}

TEST_CASE("property: PLFunction round trip") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    const PLFunction f = oracle::random_pl(rng);
    const PLFunction g = plfunction_from_json(parse_json_text(to_json(f).dump()));
    CHECK(g.breakpoints() == f.breakpoints());
    CHECK(g.final_slope() == f.final_slope());
  }
}

TEST_CASE("filtration and cyclic round trip") {
  const Filtration f{3, {2, 11}, {9, 3, 1}, true};
  CHECK(filtration_from_json(to_json(f)) == f);
  const CyclicWildSpec s{5, 2, 3, {2, 3}};
  CHECK(cyclic_from_json(to_json(s)) == s);
  // orders default to a drop by p at each break
  CHECK(filtration_from_json(Json{{"p", 3}, {"breaks", {2, 11}}}).orders == std::vector<std::int64_t>{9, 3, 1});
}

TEST_CASE("tower and Carayol round trip") {
  TowerSpec t;
  t.layers = {TameLayer{2}, Filtration{3, {1, 4}, {9, 3, 1}, false}};
  CHECK(to_json(tower_from_json(to_json(t))) == to_json(t));

  CarayolSpec c;
  c.tame_top = 2;
  c.core_wild = Filtration{3, {2, 11}, {9, 3, 1}, false};
  c.character.slope = 12;
  CHECK(to_json(carayol_from_json(to_json(c))) == to_json(c));

  // A cyclic core given by increments is converted.
  const CarayolSpec from_cyclic = carayol_from_json(
      Json{{"core_wild", {{"p", 3}, {"e_F", 3}, {"increments", {2, 3}}}}, {"character", 12}});
  CHECK(from_cyclic.core_wild.breaks == std::vector<std::int64_t>{2, 11});
}

TEST_CASE("parse errors name the field") {
  auto message = [](auto&& fn) -> std::string {
    try {
      fn();
    } catch (const InvalidSpec& e) {
      return e.what();
    }
    return {};
  };
  CHECK(message([] { filtration_from_json(Json{{"breaks", {1}}}); }).find("'p'") != std::string::npos);
  CHECK(message([] { filtration_from_json(Json{{"p", 3}, {"breaks", "x"}}); }).find("'breaks'") != std::string::npos);
  CHECK(message([] { sweep_config_from_json(Json{{"l_maxx", 3}}); }).find("'l_maxx'") != std::string::npos);
  CHECK(message([] { tower_from_json(Json{{"layers", {{{"weird", 1}}}}}); }).find("'layers'") != std::string::npos);
  CHECK_THROWS_AS(parse_json_text("{"), InvalidSpec);
  CHECK_THROWS_AS(cyclic_from_json(Json{{"p", 3}, {"e_F", 1}, {"increments", {1.5}}}), InvalidSpec);
}

TEST_CASE("sweep config round trip") {
  SweepConfig c;
  c.primes = {5, 7};
  c.r_range = {1, 3};
  c.checks = {checks::kJumpGap, checks::kHasseArf};
  c.seed = 99;
  CHECK(to_json(sweep_config_from_json(to_json(c))) == to_json(c));
  CHECK(sweep_config_from_json(Json{{"r_range", 2}}).r_range == std::pair<std::int64_t, std::int64_t>{2, 2});
  CHECK_THROWS_AS(sweep_config_from_json(Json{{"seed", -1}}), InvalidSpec);
  CHECK_THROWS_AS(sweep_config_from_json(Json{{"primes", {4}}}), InvalidSpec);
}

TEST_CASE("slope report shape") {
  const Json j = to_json(SlopeReport{9, 46, oracle::frac(46, 9), true}, AdjointDomain::WildInduced);
  CHECK(j.dump() == R"({"dim":9,"swan":[46],"slope":[46,9],"carayol":true,"domain":"WildInduced"})");
  CHECK(to_json(SlopeReport{1, 0, 0, true}, std::nullopt)["domain"].is_null());
}
