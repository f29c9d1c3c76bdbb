#include "capgrp/spaces.hpp"

#include <stdexcept>
#include <string>

namespace capgrp {

std::size_t SpaceContext::v_pos(int j, int i) const {
  if (!(1 <= i && i < j && j <= static_cast<int>(n)))
    throw std::out_of_range("v_pos: bad index pair");
  return v_lookup_[static_cast<std::size_t>(j) * (n + 1) + static_cast<std::size_t>(i)];
}

std::size_t SpaceContext::w_pos(int j, int i, int k) const {
  if (!(1 <= i && i < j && j <= static_cast<int>(n) && i <= k && k <= static_cast<int>(n)))
    throw std::out_of_range("w_pos: bad index triple");
  std::size_t stride = n + 1;
  return w_lookup_[(static_cast<std::size_t>(j) * stride + static_cast<std::size_t>(i)) * stride +
                   static_cast<std::size_t>(k)];
}

std::vector<Fp> SpaceContext::v_unit(int j, int i) const {
  std::vector<Fp> v(dim_v, 0);
  v[v_pos(j, i)] = 1;
  return v;
}

std::vector<Fp> SpaceContext::w_unit(int j, int i, int k) const {
  std::vector<Fp> v(dim_w, 0);
  v[w_pos(j, i, k)] = 1;
  return v;
}

const Subspace& SpaceContext::phi_image_of_v(int k) const {
  if (k < 1 || k > static_cast<int>(n)) throw std::out_of_range("phi_image_of_v: bad index");
  return phi_images_[static_cast<std::size_t>(k) - 1];
}

SpaceContext make_context(std::uint32_t p, std::uint32_t n) {
  require_odd_prime(p);
  if (n < 2) throw std::invalid_argument("make_context: n must be at least 2");

  SpaceContext ctx;
  ctx.p = p;
  ctx.n = n;
  ctx.dim_u = n;

  std::size_t stride = n + 1;
  ctx.v_lookup_.assign(stride * stride, static_cast<std::size_t>(-1));
  ctx.w_lookup_.assign(stride * stride * stride, static_cast<std::size_t>(-1));

  for (int j = 2; j <= static_cast<int>(n); ++j)
    for (int i = 1; i < j; ++i) {
      ctx.v_lookup_[static_cast<std::size_t>(j) * stride + static_cast<std::size_t>(i)] =
          ctx.v_index.size();
      ctx.v_index.emplace_back(j, i);
    }
  ctx.dim_v = ctx.v_index.size();

  for (int j = 2; j <= static_cast<int>(n); ++j)
    for (int i = 1; i < j; ++i)
      for (int k = i; k <= static_cast<int>(n); ++k) {
        ctx.w_lookup_[(static_cast<std::size_t>(j) * stride + static_cast<std::size_t>(i)) *
                          stride +
                      static_cast<std::size_t>(k)] = ctx.w_index.size();
        ctx.w_index.push_back({j, i, k});
      }
  ctx.dim_w = ctx.w_index.size();

  for (int i = 1; i <= static_cast<int>(n); ++i) {
    MatrixFp m(p, ctx.dim_v, ctx.dim_u);
    for (int j = 1; j <= static_cast<int>(n); ++j) {
      if (i < j)
        m.set(ctx.v_pos(j, i), static_cast<std::size_t>(j) - 1, 1);
      else if (i > j)
        m.set(ctx.v_pos(i, j), static_cast<std::size_t>(j) - 1, p - 1);
    }
    ctx.psi.push_back(LinearMap{std::move(m)});
  }

  for (int k = 1; k <= static_cast<int>(n); ++k) {
    MatrixFp m(p, ctx.dim_w, ctx.dim_v);
    for (std::size_t col = 0; col < ctx.dim_v; ++col) {
      auto [j, i] = ctx.v_index[col];
      if (k >= i) {
        m.set(ctx.w_pos(j, i, k), col, 1);
      } else {
        m.set(ctx.w_pos(j, k, i), col, 1);
        m.set(ctx.w_pos(i, k, j), col, p - 1);
      }
    }
    ctx.phi.push_back(LinearMap{std::move(m)});
  }

  ctx.phi_images_.reserve(n);
  Subspace full_v = Subspace::full(p, ctx.dim_v);
  for (std::uint32_t k = 0; k < n; ++k) ctx.phi_images_.push_back(ctx.phi[k].image(full_v));

  return ctx;
}

Subspace u_star(const SpaceContext& ctx, const std::vector<Fp>& u) {
  if (u.size() != ctx.dim_u) throw std::invalid_argument("u_star: vector not in U");
  bool nonzero = false;
  for (Fp x : u)
    if (x != 0) nonzero = true;
  if (!nonzero) throw std::invalid_argument("u_star: u must be nonzero");
  std::vector<std::vector<Fp>> rows;
  rows.reserve(ctx.n);
  for (const LinearMap& psi : ctx.psi) rows.push_back(psi.apply(u));
  return Subspace::span(ctx.p, ctx.dim_v, rows);
}

LinearMap induced_basis_change(const SpaceContext& ctx, const MatrixFp& a) {
  if (a.rows() != ctx.n || a.cols() != ctx.n || a.p() != ctx.p)
    throw std::invalid_argument("induced_basis_change: A must be n x n over F_p");
  if (a.rank() != ctx.n) throw std::invalid_argument("induced_basis_change: A is singular");

  MatrixFp m(ctx.p, ctx.dim_v, ctx.dim_v);
  for (std::size_t col = 0; col < ctx.dim_v; ++col) {
    auto [j, i] = ctx.v_index[col];
    // (A x_j) ^ (A x_i): coefficient of v_{ts} is A[t][j] A[s][i] - A[s][j] A[t][i].
    for (std::size_t t = 1; t < ctx.n; ++t)
      for (std::size_t s = 0; s < t; ++s) {
        Fp c = fp_sub(ctx.p,
                      fp_mul(ctx.p, a.at(t, static_cast<std::size_t>(j) - 1),
                             a.at(s, static_cast<std::size_t>(i) - 1)),
                      fp_mul(ctx.p, a.at(s, static_cast<std::size_t>(j) - 1),
                             a.at(t, static_cast<std::size_t>(i) - 1)));
        if (c != 0)
          m.set(ctx.v_pos(static_cast<int>(t) + 1, static_cast<int>(s) + 1), col, c);
      }
  }
  return LinearMap{std::move(m)};
}

}  // namespace capgrp
