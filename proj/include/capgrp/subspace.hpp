#pragma once

#include <cstddef>
#include <vector>

#include "capgrp/gf.hpp"

namespace capgrp {

/// Subspace of F_p^m, held as an RREF basis with strictly increasing pivot
/// columns and no zero rows. The representation is canonical: two subspaces
/// are equal iff their bases are entry-identical.
class Subspace {
 public:
  /// Canonicalizes the generators (RREF, zero rows dropped).
  explicit Subspace(const MatrixFp& generators);

  static Subspace zero(std::uint32_t p, std::size_t ambient_dim);
  static Subspace full(std::uint32_t p, std::size_t ambient_dim);
  static Subspace span(std::uint32_t p, std::size_t ambient_dim,
                       const std::vector<std::vector<Fp>>& vectors);

  std::uint32_t p() const { return basis_.p(); }
  std::size_t ambient_dim() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  const MatrixFp& basis() const { return basis_; }
  std::vector<Fp> basis_row(std::size_t r) const { return basis_.row(r); }

  bool contains(const std::vector<Fp>& v) const;
  bool contains(const Subspace& other) const;

  bool operator==(const Subspace& rhs) const = default;

 private:
  MatrixFp basis_;
};

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);

/// Linear map F_p^d -> F_p^c stored as a c x d matrix.
struct LinearMap {
  MatrixFp mat;

  std::size_t domain_dim() const { return mat.cols(); }
  std::size_t codomain_dim() const { return mat.rows(); }

  std::vector<Fp> apply(const std::vector<Fp>& v) const { return mat_vec(mat, v); }

  /// Image subspace of x under this map.
  Subspace image(const Subspace& x) const;

  /// Full inverse image {v : map(v) in y}; always contains the kernel.
  Subspace preimage(const Subspace& y) const;

  Subspace kernel() const;

  /// this after rhs (i.e. x -> this(rhs(x))).
  LinearMap compose(const LinearMap& rhs) const { return LinearMap{mat * rhs.mat}; }
};

}  // namespace capgrp
