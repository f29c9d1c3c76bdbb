#include "capgrp/capability.hpp"

#include "capgrp/oracle.hpp"
#include "doctest.h"

using namespace capgrp;

namespace {

const char* kExtraSpecialP5 =
    "p 3\n"
    "n 4\n"
    "rel [3,1]\n"
    "rel [4,1]\n"
    "rel [3,2]\n"
    "rel [4,2]\n"
    "rel [2,1] - [4,3]\n";

}  // namespace

TEST_CASE("parser accepts the documented syntax") {
  Presentation pres = parse_presentation("p 5\nn 4\nrel [2,1] - [4,3]\n");
  CHECK(pres.p == 5);
  CHECK(pres.n == 4);
  REQUIRE(pres.relators.size() == 1);
  REQUIRE(pres.relators[0].size() == 2);
  CHECK(pres.relators[0][0].j == 2);
  CHECK(pres.relators[0][0].i == 1);
  CHECK(pres.relators[0][0].coef == 1);
  CHECK(pres.relators[0][1].j == 4);
  CHECK(pres.relators[0][1].i == 3);
  CHECK(pres.relators[0][1].coef == 4);  // -1 mod 5

  Presentation coef = parse_presentation("# header\np 7\nn 3 # trailing\nrel 2*[3,1] + [2,1]\n");
  CHECK(coef.relators[0][0].coef == 2);
  Presentation neg = parse_presentation("p 3\nn 2\nrel - [2,1]\n");
  CHECK(neg.relators[0][0].coef == 2);
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(parse_presentation("p 2\nn 2\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("p 9\nn 2\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("p 3\nn 2\nrel [1,2]\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("p 3\nn 2\nrel [3,1]\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("p 3\nn 2\nrel [2,2]\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("p 3\nn 2\nrel 0*[2,1]\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("p 3\nn 2\nrel 3*[2,1]\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("p 3\nn 2\nrel [2,1] +\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("p 3\nn 2\nrel [2,1] [3,1]\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("rel [2,1]\np 3\nn 2\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("p 3\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("n 2\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("p 3\nn 0\n"), ParseError);
  CHECK_THROWS_AS(parse_presentation("p 3\nn 2\nfrob x\n"), ParseError);
  try {
    parse_presentation("p 3\nn 2\nrel [1,2]\n");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("to_subspace") {
  auto [ctx0, x0] = to_subspace(parse_presentation("p 3\nn 3\n"));
  CHECK(x0.dim() == 0);
  auto [ctx1, x1] = to_subspace(parse_presentation(kExtraSpecialP5));
  CHECK(x1.dim() == 5);
  auto [ctx2, x2] =
      to_subspace(parse_presentation("p 3\nn 2\nrel [2,1]\nrel 2*[2,1]\n"));
  CHECK(x2 == Subspace::full(3, ctx2.dim_v));
}

TEST_CASE("end-to-end verdicts") {
  // free class-2 exponent-p groups are capable
  for (const char* text : {"p 3\nn 2\n", "p 3\nn 3\n", "p 3\nn 4\n"}) {
    Verdict v = decide(parse_presentation(text));
    CHECK(v.capable);
  }
  // cyclic group of order p is not capable
  Verdict cyc = decide(parse_presentation("p 3\nn 1\n"));
  CHECK_FALSE(cyc.capable);
  CHECK(cyc.reason == Reason::cyclic_noncapable);
  // elementary abelian of rank >= 2 (X = V) is capable
  Verdict ab = decide(parse_presentation("p 3\nn 3\nrel [2,1]\nrel [3,1]\nrel [3,2]\n"));
  CHECK(ab.capable);
  // extra-special p^5 is not capable
  Verdict es = decide(parse_presentation(kExtraSpecialP5));
  CHECK_FALSE(es.capable);
  CHECK(es.reason == Reason::n4_classification);
  CHECK(es.dim_x == 5);
  CHECK(es.dim_x_closure == 6);
  REQUIRE(es.witness.has_value());
}

TEST_CASE("direct sum with C_p preserves the verdict") {
  // relators [2,1],[3,1],[4,1] make x_1 central: verdict equals the n=3
  // presentation on generators 2,3,4.
  struct Case { const char* big; const char* small; };
  for (Case c : {Case{"p 3\nn 4\nrel [2,1]\nrel [3,1]\nrel [4,1]\nrel [3,2] - [4,3]\n",
                      "p 3\nn 3\nrel [2,1] - [3,2]\n"},
                 Case{"p 3\nn 4\nrel [2,1]\nrel [3,1]\nrel [4,1]\nrel [4,2]\nrel [4,3]\n",
                      "p 3\nn 3\nrel [3,1]\nrel [3,2]\n"}}) {
    Verdict vb = decide(parse_presentation(c.big));
    Verdict vs = decide(parse_presentation(c.small));
    CHECK(vb.capable == vs.capable);
  }
}

TEST_CASE("four generator classification") {
  CHECK(classify_4gen(parse_presentation("p 3\nn 1\n")) == FourGenClass::cyclic_nontrivial);
  CHECK(classify_4gen(parse_presentation(kExtraSpecialP5)) == FourGenClass::extra_special_p5);
  CHECK(classify_4gen(parse_presentation("p 3\nn 3\nrel [2,1]\n")) == FourGenClass::capable);
  CHECK(classify_4gen(parse_presentation("p 3\nn 2\n")) == FourGenClass::capable);
  CHECK_THROWS_AS(classify_4gen(parse_presentation("p 3\nn 5\n")), std::invalid_argument);
}

TEST_CASE("every 2- or 3-generated group is capable") {
  SpaceContext ctx = make_context(3, 3);
  for (std::size_t k = 0; k <= ctx.dim_v; ++k)
    enumerate_subspaces(3, ctx.dim_v, k, [&](const Subspace& x) {
      CHECK(decide_subspace(ctx, x).capable);
      return true;
    });
}

TEST_CASE("pipeline agrees with direct closure on all of V(3)") {
  SpaceContext ctx = make_context(3, 3);
  for (std::size_t k = 0; k <= ctx.dim_v; ++k)
    enumerate_subspaces(3, ctx.dim_v, k, [&](const Subspace& x) {
      CHECK(decide_subspace(ctx, x).capable == is_closed(ctx, x));
      return true;
    });
}

TEST_CASE("verdict json shape") {
  Verdict v = decide(parse_presentation(kExtraSpecialP5));
  nlohmann::ordered_json j = verdict_json(v);
  CHECK(j["capable"] == false);
  CHECK(j["reason"] == "n4-classification");
  CHECK(j["n"] == 4);
  CHECK(j["p"] == 3);
  CHECK(j["dim_X"] == 5);
  CHECK(j["dim_X_closure"] == 6);
  CHECK(j["trace"].is_array());
  CHECK_FALSE(j["trace"].empty());
  for (const auto& step : j["trace"]) {
    CHECK(step.contains("kind"));
    CHECK(step.contains("detail"));
  }
  CHECK(j["witness"].is_array());
  Verdict cap = decide(parse_presentation("p 3\nn 2\n"));
  CHECK(verdict_json(cap)["witness"].is_null());
}
