#include "capgrp/reduce.hpp"

#include <algorithm>
#include <stdexcept>

namespace capgrp {

const char* step_kind_name(StepKind k) {
  switch (k) {
    case StepKind::central_cancellation: return "central-cancellation";
    case StepKind::block_split: return "block-split";
    case StepKind::dimension_sufficient: return "dimension-sufficient";
    case StepKind::dimension_necessary_fail: return "dimension-necessary-fail";
    case StepKind::n4_dim5_rule: return "n4-dim5-rule";
    case StepKind::direct_closure: return "direct-closure";
  }
  return "?";
}

Subspace replay(const ReductionTrace& trace, const SpaceContext& ctx, const Subspace& x) {
  SpaceContext cur_ctx = ctx;
  Subspace cur = x;
  for (const TraceStep& step : trace.steps) {
    if (step.kind != StepKind::central_cancellation) continue;  // others leave x untouched
    CancelResult res = cancel_central(cur_ctx, cur, step.u);
    cur_ctx = std::move(res.ctx);
    cur = std::move(res.x);
  }
  return cur;
}

Subspace central_lines(const SpaceContext& ctx, const Subspace& x) {
  if (x.ambient_dim() != ctx.dim_v)
    throw std::invalid_argument("central_lines: x not a subspace of V");
  Subspace acc = ctx.psi.front().preimage(x);
  for (std::size_t i = 1; i < ctx.psi.size(); ++i)
    acc = intersect(acc, ctx.psi[i].preimage(x));
  return acc;
}

CancelResult cancel_central(const SpaceContext& ctx, const Subspace& x,
                            const std::vector<Fp>& u) {
  if (ctx.n < 3)
    throw std::invalid_argument("cancel_central: needs n >= 3");
  if (!x.contains(u_star(ctx, u)))
    throw std::invalid_argument("cancel_central: u is not central for x");

  const std::uint32_t n = ctx.n;
  // Complete u to a basis b_1..b_{n-1}, u using the first standard vectors
  // that keep the set independent; B has u as its last column, A = B^{-1}
  // sends u to x_n.
  std::vector<std::vector<Fp>> cols;
  cols.push_back(u);
  for (std::uint32_t e = 0; e < n && cols.size() < n; ++e) {
    std::vector<Fp> unit(n, 0);
    unit[e] = 1;
    cols.push_back(unit);
    if (Subspace::span(ctx.p, n, cols).dim() != cols.size()) cols.pop_back();
  }
  MatrixFp b(ctx.p, n, n);
  for (std::uint32_t c = 0; c + 1 < n; ++c)
    for (std::uint32_t r = 0; r < n; ++r) b.set(r, c, cols[c + 1][r]);
  for (std::uint32_t r = 0; r < n; ++r) b.set(r, n - 1, u[r]);
  MatrixFp a = b.inverse();

  LinearMap change = induced_basis_change(ctx, a);
  Subspace moved = change.image(x);

  SpaceContext sub = make_context(ctx.p, n - 1);

  // In the new coordinates x = X~ + <v_{ni} : i < n>; the RREF basis splits
  // into rows supported on the V(n-1) prefix and unit rows in the tail.
  std::vector<std::vector<Fp>> prefix_rows;
  std::size_t tail_rows = 0;
  for (std::size_t r = 0; r < moved.dim(); ++r) {
    std::vector<Fp> row = moved.basis_row(r);
    bool tail_only = true;
    for (std::size_t c = 0; c < sub.dim_v; ++c)
      if (row[c] != 0) {
        tail_only = false;
        break;
      }
    if (tail_only) {
      ++tail_rows;
      continue;
    }
    bool prefix_only = true;
    for (std::size_t c = sub.dim_v; c < ctx.dim_v; ++c)
      if (row[c] != 0) {
        prefix_only = false;
        break;
      }
    if (!prefix_only)
      throw std::logic_error("cancel_central: block form violated");
    row.resize(sub.dim_v);
    prefix_rows.push_back(std::move(row));
  }
  if (tail_rows != n - 1)
    throw std::logic_error("cancel_central: <v_{ni}> block missing after basis change");

  return CancelResult{std::move(sub), Subspace::span(ctx.p, sub.dim_v, prefix_rows)};
}

Subspace mixed_block(const SpaceContext& ctx, const std::vector<int>& left) {
  std::vector<bool> in_left(ctx.n + 1, false);
  for (int i : left) in_left[static_cast<std::size_t>(i)] = true;
  std::vector<std::vector<Fp>> rows;
  for (std::size_t c = 0; c < ctx.dim_v; ++c) {
    auto [j, i] = ctx.v_index[c];
    if (in_left[static_cast<std::size_t>(j)] != in_left[static_cast<std::size_t>(i)])
      rows.push_back(ctx.v_unit(j, i));
  }
  return Subspace::span(ctx.p, ctx.dim_v, rows);
}

namespace {

Subspace pure_block(const SpaceContext& ctx, const std::vector<bool>& members) {
  std::vector<std::vector<Fp>> rows;
  for (std::size_t c = 0; c < ctx.dim_v; ++c) {
    auto [j, i] = ctx.v_index[c];
    if (members[static_cast<std::size_t>(j)] && members[static_cast<std::size_t>(i)])
      rows.push_back(ctx.v_unit(j, i));
  }
  return Subspace::span(ctx.p, ctx.dim_v, rows);
}

}  // namespace

std::optional<BlockSplit> block_split(const SpaceContext& ctx, const Subspace& x) {
  if (x.ambient_dim() != ctx.dim_v)
    throw std::invalid_argument("block_split: x not a subspace of V");
  const std::uint32_t n = ctx.n;
  // Each unordered partition is visited once via the side containing 1;
  // candidates ordered by increasing |I|, lexicographic within a size.
  std::vector<std::vector<int>> candidates;
  for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
    std::vector<int> left{1};
    for (std::uint32_t b = 0; b < n - 1; ++b)
      if (mask & (1u << b)) left.push_back(static_cast<int>(b) + 2);
    if (left.size() == n) continue;
    candidates.push_back(std::move(left));
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto& a, const auto& b) {
                     if (a.size() != b.size()) return a.size() < b.size();
                     return a < b;
                   });

  for (const std::vector<int>& left : candidates) {
    std::vector<bool> in_left(n + 1, false);
    for (int i : left) in_left[static_cast<std::size_t>(i)] = true;
    Subspace mixed = mixed_block(ctx, left);
    if (!x.contains(mixed)) continue;
    std::vector<bool> in_right(n + 1, false);
    std::vector<int> right;
    for (int i = 1; i <= static_cast<int>(n); ++i)
      if (!in_left[static_cast<std::size_t>(i)]) {
        in_right[static_cast<std::size_t>(i)] = true;
        right.push_back(i);
      }
    Subspace x_left = intersect(x, pure_block(ctx, in_left));
    Subspace x_right = intersect(x, pure_block(ctx, in_right));
    if (x_left.dim() + x_right.dim() + mixed.dim() == x.dim())
      return BlockSplit{left, right, std::move(x_left), std::move(x_right)};
  }
  return std::nullopt;
}

DimensionTests dimension_tests(const SpaceContext& ctx, const Subspace& x) {
  const std::uint64_t k = x.dim();
  const std::uint64_t n = ctx.n;
  const std::uint64_t central = central_lines(ctx, x).dim();
  const std::uint64_t n_eff = n > central ? n - central : 0;
  const std::uint64_t ell = ctx.dim_v - x.dim();
  DimensionTests t{};
  t.sufficient_closed = k * k < 4 * n;
  t.necessary_capable = 2 * ell + ell * (ell - (ell ? 1 : 0)) / 2 >= n_eff;
  return t;
}

bool n4_dim5_rule(const SpaceContext& ctx, const Subspace& x) {
  if (ctx.n != 4 || x.dim() != 5)
    throw std::invalid_argument("n4_dim5_rule: requires n = 4 and dim(x) = 5");
  return central_lines(ctx, x).dim() > 0;
}

}  // namespace capgrp
