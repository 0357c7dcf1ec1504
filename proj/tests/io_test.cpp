#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qpsym/gen.hpp"
#include "qpsym/io.hpp"

using namespace qpsym;

TEST_CASE("operator files round-trip byte-identically") {
  for (std::uint64_t t = 0; t < 25; ++t) {
    Rng rng(trial_seed(127, t));
    GenConfig cfg;
    cfg.n = (t % 2 == 0) ? 2 : 3;
    DiffOp op = gen_diffop(rng, cfg, OpConstraint::Any);
    json j = diffop_to_json(op);
    DiffOp back = diffop_from_json(j);
    CHECK(back == op);
    CHECK(dump_json(diffop_to_json(back)) == dump_json(j));
  }
}

TEST_CASE("symbol files round-trip") {
  for (std::uint64_t t = 0; t < 25; ++t) {
    Rng rng(trial_seed(131, t));
    SymbolElem s = gen_symbol(rng, 2, 2, rng.range(0, 3), 2, 4);
    json j = symbol_to_json(s);
    CHECK(symbol_from_json(j) == s);
    CHECK(dump_json(symbol_to_json(symbol_from_json(j))) == dump_json(j));
  }
}

TEST_CASE("connection files round-trip and recompute the metric flag") {
  Rng rng(trial_seed(137, 0));
  Connection c = gen_connection(rng, 2, 2, 2, 4, true);
  json j = connection_to_json(c);
  CHECK_FALSE(j.contains("metric"));  // computed, not stored
  Connection back = connection_from_json(j);
  CHECK(back.metric());
  for (int i = 0; i < c.m(); ++i) CHECK(back.gamma(i) == c.gamma(i));
}

TEST_CASE("section and vector-field files") {
  Section s(2, 2);
  s.components[0] = Poly::parse("x1 - 1/2", 2);
  CHECK(section_from_json(section_to_json(s)) == s);

  VectField x(2);
  x.components[1] = Poly::parse("x1 x2", 2);
  CHECK(vectfield_from_json(vectfield_to_json(x)) == x);

  SplitPair p{x, traceless_project(MatPoly::unit(2, 2, 1, 1))};
  SplitPair back = splitpair_from_json(splitpair_to_json(p, 2));
  CHECK(back == p);
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS(diffop_from_json(json::parse(R"({"m":2,"n":2})")), std::invalid_argument);
  CHECK_THROWS_AS(diffop_from_json(json::parse(R"({"m":2,"n":1,"terms":[]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      diffop_from_json(json::parse(
          R"({"m":2,"n":2,"terms":[{"alpha":[1],"coeff":[["1","0"],["0","1"]]}]})")),
      std::invalid_argument);
  CHECK_THROWS_AS(
      diffop_from_json(json::parse(
          R"({"m":2,"n":2,"terms":[{"alpha":[1,0],"coeff":[["x9","0"],["0","0"]]}]})")),
      std::invalid_argument);
  CHECK_THROWS_AS(load_json("/nonexistent/qpsym.json"), std::invalid_argument);
}
