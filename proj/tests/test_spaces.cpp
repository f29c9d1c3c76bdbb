#include "capgrp/spaces.hpp"

#include <stdexcept>

#include "doctest.h"

using namespace capgrp;

TEST_CASE("graded dimensions") {
  // dim W = 2C(n,2) + 2C(n,3) = 2C(n+1,3)
  struct Row { std::uint32_t n; std::size_t v, w; };
  for (Row r : {Row{2, 1, 2}, Row{3, 3, 8}, Row{4, 6, 20}, Row{5, 10, 40}}) {
    SpaceContext ctx = make_context(3, r.n);
    CHECK(ctx.dim_u == r.n);
    CHECK(ctx.dim_v == r.v);
    CHECK(ctx.dim_w == r.w);
    CHECK(ctx.psi.size() == r.n);
    CHECK(ctx.phi.size() == r.n);
  }
  CHECK_THROWS_AS(make_context(4, 3), std::invalid_argument);
  CHECK_THROWS_AS(make_context(3, 1), std::invalid_argument);
}

TEST_CASE("v index ordering is a prefix across n") {
  SpaceContext c4 = make_context(3, 4);
  SpaceContext c3 = make_context(3, 3);
  for (std::size_t c = 0; c < c3.dim_v; ++c) CHECK(c4.v_index[c] == c3.v_index[c]);
  CHECK(c4.v_pos(2, 1) == 0);
  CHECK(c4.v_index[c4.v_pos(4, 3)] == std::pair<int, int>(4, 3));
}

TEST_CASE("psi entries") {
  SpaceContext ctx = make_context(3, 3);
  // psi_3(x_2) = -v_32
  std::vector<Fp> x2(3, 0);
  x2[1] = 1;
  std::vector<Fp> img = ctx.psi[2].apply(x2);
  for (std::size_t c = 0; c < ctx.dim_v; ++c)
    CHECK(img[c] == (c == ctx.v_pos(3, 2) ? 2u : 0u));
  // psi_1(x_2) = v_21
  img = ctx.psi[0].apply(x2);
  for (std::size_t c = 0; c < ctx.dim_v; ++c)
    CHECK(img[c] == (c == ctx.v_pos(2, 1) ? 1u : 0u));
  // psi_2(x_2) = 0
  img = ctx.psi[1].apply(x2);
  for (Fp v : img) CHECK(v == 0);
}

TEST_CASE("phi entries") {
  SpaceContext c2 = make_context(3, 2);
  // phi_1(v_21) = w_211
  std::vector<Fp> img = c2.phi[0].apply({1});
  CHECK(img == c2.w_unit(2, 1, 1));

  SpaceContext c3 = make_context(3, 3);
  // k >= i branch: phi_3(v_21) = w_213
  img = c3.phi[2].apply(c3.v_unit(2, 1));
  CHECK(img == c3.w_unit(2, 1, 3));
  // k < i branch: phi_1(v_32) = w_312 - w_213
  img = c3.phi[0].apply(c3.v_unit(3, 2));
  for (std::size_t c = 0; c < c3.dim_w; ++c) {
    Fp expect = 0;
    if (c == c3.w_pos(3, 1, 2)) expect = 1;
    if (c == c3.w_pos(2, 1, 3)) expect = 2;
    CHECK(img[c] == expect);
  }
}

TEST_CASE("phi maps are injective") {
  for (std::uint32_t n : {2u, 3u, 4u}) {
    SpaceContext ctx = make_context(3, n);
    for (const LinearMap& phi : ctx.phi) {
      CHECK(phi.kernel().dim() == 0);
      CHECK(phi.image(Subspace::full(3, ctx.dim_v)).dim() == ctx.dim_v);
    }
  }
}

TEST_CASE("Jacobi relation between the phi images") {
  // phi_k(v_ji) - phi_j(v_ki) + phi_i(v_kj) = 0 for i < j < k
  for (std::uint32_t n : {3u, 4u, 5u}) {
    SpaceContext ctx = make_context(3, n);
    for (int k = 3; k <= static_cast<int>(n); ++k)
      for (int j = 2; j < k; ++j)
        for (int i = 1; i < j; ++i) {
          std::vector<Fp> a = ctx.phi[static_cast<std::size_t>(k) - 1].apply(ctx.v_unit(j, i));
          std::vector<Fp> b = ctx.phi[static_cast<std::size_t>(j) - 1].apply(ctx.v_unit(k, i));
          std::vector<Fp> c = ctx.phi[static_cast<std::size_t>(i) - 1].apply(ctx.v_unit(k, j));
          for (std::size_t t = 0; t < ctx.dim_w; ++t)
            CHECK(fp_add(3, fp_sub(3, a[t], b[t]), c[t]) == 0);
        }
  }
}

TEST_CASE("u_star") {
  SpaceContext ctx = make_context(3, 3);
  // u = x_2 + x_3: <u>* = <v_21 + v_31, v_32>
  Subspace s = u_star(ctx, {0, 1, 1});
  std::vector<Fp> gen1(ctx.dim_v, 0);
  gen1[ctx.v_pos(2, 1)] = 1;
  gen1[ctx.v_pos(3, 1)] = 1;
  CHECK(s == Subspace::span(3, ctx.dim_v, {gen1, ctx.v_unit(3, 2)}));
  CHECK_THROWS_AS(u_star(ctx, {0, 0, 0}), std::invalid_argument);
}

TEST_CASE("u_star has dimension n-1 for every nonzero u") {
  for (std::uint32_t n : {2u, 3u, 4u}) {
    SpaceContext ctx = make_context(3, n);
    std::vector<Fp> u(n, 0);
    for (;;) {
      std::size_t i = 0;
      while (i < n) {
        if (++u[i] < 3) break;
        u[i] = 0;
        ++i;
      }
      if (i == n) break;
      CHECK(u_star(ctx, u).dim() == n - 1);
    }
  }
}

TEST_CASE("induced basis change on a transposition") {
  SpaceContext ctx = make_context(3, 3);
  // swap x_1 <-> x_2: v_21 -> -v_21, v_31 -> v_32, v_32 -> v_31
  MatrixFp a = MatrixFp::from_rows(3, 3, {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
  LinearMap lam = induced_basis_change(ctx, a);
  std::vector<Fp> img = lam.apply(ctx.v_unit(2, 1));
  CHECK(img[ctx.v_pos(2, 1)] == 2);
  CHECK(lam.apply(ctx.v_unit(3, 1)) == ctx.v_unit(3, 2));
  CHECK(lam.apply(ctx.v_unit(3, 2)) == ctx.v_unit(3, 1));
}

TEST_CASE("induced basis change is functorial") {
  SpaceContext ctx = make_context(5, 4);
  MatrixFp a = MatrixFp::from_rows(5, 4, {{1, 2, 0, 3}, {0, 1, 4, 0}, {0, 0, 1, 1}, {2, 0, 0, 1}});
  MatrixFp b = MatrixFp::from_rows(5, 4, {{1, 0, 0, 1}, {3, 1, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 1}});
  REQUIRE(a.rank() == 4);
  REQUIRE(b.rank() == 4);
  LinearMap lab = induced_basis_change(ctx, a * b);
  LinearMap composed = induced_basis_change(ctx, a).compose(induced_basis_change(ctx, b));
  CHECK(lab.mat == composed.mat);
  CHECK(induced_basis_change(ctx, MatrixFp::identity(5, 4)).mat == MatrixFp::identity(5, ctx.dim_v));
  MatrixFp sing = MatrixFp::from_rows(5, 4, {{1, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  CHECK_THROWS_AS(induced_basis_change(ctx, sing), std::invalid_argument);
}
