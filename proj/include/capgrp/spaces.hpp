#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "capgrp/subspace.hpp"

namespace capgrp {

/// The three graded pieces of the free class-3 setup for n generators over
/// F_p, with their distinguished bases and the two operator families:
///
///   U = <x_1..x_n>                                   dim n
///   V = <v_{ji} : 1 <= i < j <= n>                   dim C(n,2)
///   W = <w_{jik} : 1 <= i < j <= n, i <= k <= n>     dim 2C(n,2) + 2C(n,3)
///
///   psi_i : U -> V   x_j |-> v_{ji} (i<j), -v_{ij} (i>j), 0 (i=j)
///   phi_k : V -> W   v_{ji} |-> w_{jik} (k>=i), w_{jki} - w_{ikj} (k<i)
///
/// v-coordinates are ordered by (j,i) lexicographic, w-coordinates by
/// (j,i,k) lexicographic; with this order the v-coordinates of a smaller
/// generator count form a prefix.
struct SpaceContext {
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::size_t dim_u = 0;
  std::size_t dim_v = 0;
  std::size_t dim_w = 0;

  std::vector<std::pair<int, int>> v_index;      // (j,i), j > i
  std::vector<std::array<int, 3>> w_index;       // (j,i,k)

  std::vector<LinearMap> psi;  // psi[i-1] : U -> V
  std::vector<LinearMap> phi;  // phi[k-1] : V -> W

  std::size_t v_pos(int j, int i) const;
  std::size_t w_pos(int j, int i, int k) const;

  std::vector<Fp> v_unit(int j, int i) const;
  std::vector<Fp> w_unit(int j, int i, int k) const;

  /// phi_k(V), cached at construction; dim C(n,2) since phi_k is injective.
  const Subspace& phi_image_of_v(int k) const;

 private:
  friend SpaceContext make_context(std::uint32_t, std::uint32_t);
  std::vector<std::size_t> v_lookup_;
  std::vector<std::size_t> w_lookup_;
  std::vector<Subspace> phi_images_;
};

/// Builds the full context; throws on p not an odd prime or n < 2.
SpaceContext make_context(std::uint32_t p, std::uint32_t n);

/// span{psi_1(u), ..., psi_n(u)}; dimension n-1 for u != 0. Throws on u = 0.
Subspace u_star(const SpaceContext& ctx, const std::vector<Fp>& u);

/// Exterior-square action of an invertible change of basis A on U:
/// v_{ji} |-> (A x_j) ^ (A x_i) expanded in the v basis. Throws if A is
/// singular.
LinearMap induced_basis_change(const SpaceContext& ctx, const MatrixFp& a);

}  // namespace capgrp
