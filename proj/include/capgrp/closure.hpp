#pragma once

#include <optional>
#include <vector>

#include "capgrp/spaces.hpp"

namespace capgrp {

/// Star operators for an arbitrary nonempty family of maps sharing domain
/// and codomain. Used with the full phi family, with sub-families indexed
/// by a subset of {1..n}, and with the psi family.
Subspace star_up(const std::vector<LinearMap>& family, const Subspace& x);
Subspace star_down(const std::vector<LinearMap>& family, const Subspace& y);

struct ClosureResult {
  Subspace x;
  Subspace x_star;     // up-star, lives in the codomain
  Subspace x_closure;  // down-star of x_star, back in the domain
  bool closed = false;
  std::optional<std::vector<Fp>> witness;  // in x_closure but not in x
};

/// One round of down-star(up-star(x)); no iteration is needed since
/// x* = x***. The witness, when present, is the first RREF basis vector of
/// the closure not contained in x.
ClosureResult closure(const std::vector<LinearMap>& family, const Subspace& x);

// Convenience wrappers over ctx.phi.
Subspace star_up(const SpaceContext& ctx, const Subspace& x);
Subspace star_down(const SpaceContext& ctx, const Subspace& y);
ClosureResult closure(const SpaceContext& ctx, const Subspace& x);
bool is_closed(const SpaceContext& ctx, const Subspace& x);

/// Dual operator on subspaces of W: up-star(down-star(y)); decreasing,
/// isotone, idempotent.
Subspace interior(const SpaceContext& ctx, const Subspace& y);

/// {phi_i : i in indices}, 1-based indices.
std::vector<LinearMap> phi_subfamily(const SpaceContext& ctx, const std::vector<int>& indices);

}  // namespace capgrp
