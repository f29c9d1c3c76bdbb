#include "capgrp/closure.hpp"

#include "capgrp/oracle.hpp"
#include "doctest.h"

using namespace capgrp;

namespace {

Subspace span_pairs(const SpaceContext& ctx,
                    const std::vector<std::vector<std::pair<std::pair<int, int>, Fp>>>& gens) {
  std::vector<std::vector<Fp>> rows;
  for (const auto& g : gens) {
    std::vector<Fp> v(ctx.dim_v, 0);
    for (const auto& [ji, c] : g) v[ctx.v_pos(ji.first, ji.second)] = c;
    rows.push_back(std::move(v));
  }
  return Subspace::span(ctx.p, ctx.dim_v, rows);
}

}  // namespace

TEST_CASE("trivial closures at n=2") {
  SpaceContext ctx = make_context(3, 2);
  CHECK(is_closed(ctx, Subspace::zero(3, ctx.dim_v)));
  ClosureResult cl = closure(ctx, Subspace::full(3, ctx.dim_v));
  CHECK(cl.closed);
  CHECK(cl.x_star.dim() == 2);  // w_211, w_212
  CHECK_FALSE(cl.witness.has_value());
}

TEST_CASE("interior of a single w coordinate at n=2 is zero") {
  SpaceContext ctx = make_context(3, 2);
  Subspace y = Subspace::span(3, ctx.dim_w, {ctx.w_unit(2, 1, 1)});
  CHECK(interior(ctx, y) == Subspace::zero(3, ctx.dim_w));
  CHECK(star_down(ctx, y) == Subspace::zero(3, ctx.dim_v));
}

TEST_CASE("single-line closure at n=4") {
  SpaceContext ctx = make_context(3, 4);
  Subspace x = span_pairs(ctx, {{{{2, 1}, 1}, {{4, 3}, 2}}});  // <v_21 - v_43>
  ClosureResult cl = closure(ctx, x);
  CHECK(x.dim() == 1);
  CHECK(cl.x_star.dim() == 4);
  CHECK(cl.x_closure == x);
  CHECK(cl.closed);
}

TEST_CASE("extra-special subspace is not closed") {
  SpaceContext ctx = make_context(3, 4);
  Subspace x = span_pairs(ctx, {{{{3, 1}, 1}},
                                {{{4, 1}, 1}},
                                {{{3, 2}, 1}},
                                {{{4, 2}, 1}},
                                {{{2, 1}, 1}, {{4, 3}, 2}}});
  REQUIRE(x.dim() == 5);
  ClosureResult cl = closure(ctx, x);
  CHECK_FALSE(cl.closed);
  CHECK(cl.x_star.dim() == 20);
  CHECK(cl.x_closure == Subspace::full(3, ctx.dim_v));
  REQUIRE(cl.witness.has_value());
  CHECK(cl.x_closure.contains(*cl.witness));
  CHECK_FALSE(x.contains(*cl.witness));
}

TEST_CASE("a closed five-dimensional subspace at n=4") {
  SpaceContext ctx = make_context(3, 4);
  Subspace x = span_pairs(ctx, {{{{2, 1}, 1}},
                                {{{3, 1}, 1}},
                                {{{4, 1}, 1}},
                                {{{3, 2}, 1}},
                                {{{4, 2}, 1}, {{4, 3}, 1}}});
  REQUIRE(x.dim() == 5);
  CHECK(is_closed(ctx, x));
}

TEST_CASE("preimage of the other phi images under phi_1") {
  SpaceContext ctx = make_context(3, 4);
  Subspace others = Subspace::zero(3, ctx.dim_w);
  for (int k = 2; k <= 4; ++k) others = sum(others, ctx.phi_image_of_v(k));
  Subspace pre = ctx.phi[0].preimage(others);
  Subspace expect = span_pairs(ctx, {{{{3, 2}, 1}}, {{{4, 2}, 1}}, {{{4, 3}, 1}}});
  CHECK(pre == expect);
}

TEST_CASE("closure operator laws on sampled subspaces") {
  SpaceContext ctx = make_context(3, 3);
  std::mt19937_64 rng(11);
  for (int it = 0; it < 50; ++it) {
    Subspace x = sample_subspace_any(rng, 3, ctx.dim_v);
    ClosureResult cl = closure(ctx, x);
    CHECK(cl.x_closure.contains(x));
    CHECK(closure(ctx, cl.x_closure).x_closure == cl.x_closure);
    CHECK(star_up(ctx, cl.x_closure) == cl.x_star);  // X* = X***
    CHECK(cl.closed == (cl.x_closure == x));
    if (!cl.closed) {
      REQUIRE(cl.witness.has_value());
      CHECK_FALSE(x.contains(*cl.witness));
      CHECK(cl.x_closure.contains(*cl.witness));
    }
  }
}

TEST_CASE("phi subfamily star operators") {
  SpaceContext ctx = make_context(3, 4);
  std::vector<LinearMap> fam = phi_subfamily(ctx, {1, 2});
  REQUIRE(fam.size() == 2);
  CHECK(fam[0].mat == ctx.phi[0].mat);
  CHECK(fam[1].mat == ctx.phi[1].mat);
  Subspace x = span_pairs(ctx, {{{{2, 1}, 1}}});
  // <v_21> is closed for the subfamily as well
  CHECK(closure(fam, x).closed);
}
