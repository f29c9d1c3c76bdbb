#include "capgrp/closure.hpp"

#include <stdexcept>

namespace capgrp {

Subspace star_up(const std::vector<LinearMap>& family, const Subspace& x) {
  if (family.empty()) throw std::invalid_argument("star_up: empty family");
  if (x.ambient_dim() != family.front().domain_dim())
    throw std::invalid_argument("star_up: ambient mismatch");
  std::vector<std::vector<Fp>> rows;
  rows.reserve(family.size() * x.dim());
  for (const LinearMap& f : family)
    for (std::size_t r = 0; r < x.dim(); ++r) rows.push_back(f.apply(x.basis_row(r)));
  return Subspace::span(x.p(), family.front().codomain_dim(), rows);
}

Subspace star_down(const std::vector<LinearMap>& family, const Subspace& y) {
  if (family.empty()) throw std::invalid_argument("star_down: empty family");
  if (y.ambient_dim() != family.front().codomain_dim())
    throw std::invalid_argument("star_down: ambient mismatch");
  Subspace acc = family.front().preimage(y);
  for (std::size_t i = 1; i < family.size(); ++i)
    acc = intersect(acc, family[i].preimage(y));
  return acc;
}

ClosureResult closure(const std::vector<LinearMap>& family, const Subspace& x) {
  ClosureResult res{x, star_up(family, x), x, false, std::nullopt};
  res.x_closure = star_down(family, res.x_star);
  res.closed = (res.x_closure == x);
  if (!res.closed) {
    for (std::size_t r = 0; r < res.x_closure.dim(); ++r) {
      std::vector<Fp> v = res.x_closure.basis_row(r);
      if (!x.contains(v)) {
        res.witness = std::move(v);
        break;
      }
    }
  }
  return res;
}

Subspace star_up(const SpaceContext& ctx, const Subspace& x) { return star_up(ctx.phi, x); }

Subspace star_down(const SpaceContext& ctx, const Subspace& y) { return star_down(ctx.phi, y); }

ClosureResult closure(const SpaceContext& ctx, const Subspace& x) { return closure(ctx.phi, x); }

bool is_closed(const SpaceContext& ctx, const Subspace& x) { return closure(ctx, x).closed; }

Subspace interior(const SpaceContext& ctx, const Subspace& y) {
  return star_up(ctx, star_down(ctx, y));
}

std::vector<LinearMap> phi_subfamily(const SpaceContext& ctx, const std::vector<int>& indices) {
  std::vector<LinearMap> fam;
  fam.reserve(indices.size());
  for (int i : indices) {
    if (i < 1 || i > static_cast<int>(ctx.n))
      throw std::out_of_range("phi_subfamily: index out of range");
    fam.push_back(ctx.phi[static_cast<std::size_t>(i) - 1]);
  }
  return fam;
}

}  // namespace capgrp
