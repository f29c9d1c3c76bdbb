#include "capgrp/subspace.hpp"

#include <stdexcept>

namespace capgrp {

namespace {

MatrixFp canonicalize(const MatrixFp& generators) {
  MatrixFp red = generators.rref();
  std::vector<std::vector<Fp>> rows;
  for (std::size_t r = 0; r < red.rows(); ++r) {
    bool zero = true;
    for (std::size_t c = 0; c < red.cols(); ++c)
      if (red.at(r, c) != 0) {
        zero = false;
        break;
      }
    if (!zero) rows.push_back(red.row(r));
  }
  return MatrixFp::from_rows(red.p(), red.cols(), rows);
}

}  // namespace

Subspace::Subspace(const MatrixFp& generators) : basis_(canonicalize(generators)) {}

Subspace Subspace::zero(std::uint32_t p, std::size_t ambient_dim) {
  return Subspace(MatrixFp(p, 0, ambient_dim));
}

Subspace Subspace::full(std::uint32_t p, std::size_t ambient_dim) {
  return Subspace(MatrixFp::identity(p, ambient_dim));
}

Subspace Subspace::span(std::uint32_t p, std::size_t ambient_dim,
                        const std::vector<std::vector<Fp>>& vectors) {
  return Subspace(MatrixFp::from_rows(p, ambient_dim, vectors));
}

bool Subspace::contains(const std::vector<Fp>& v) const {
  if (v.size() != ambient_dim())
    throw std::invalid_argument("Subspace::contains: dimension mismatch");
  std::vector<Fp> w = v;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ambient_dim() && r < dim(); ++c) {
    if (basis_.at(r, c) == 0) continue;  // pivot of row r is further right
    if (w[c] != 0) {
      Fp f = w[c];
      for (std::size_t j = c; j < ambient_dim(); ++j)
        w[j] = fp_sub(p(), w[j], fp_mul(p(), f, basis_.at(r, j)));
    }
    ++r;
  }
  for (Fp x : w)
    if (x != 0) return false;
  return true;
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_dim() != ambient_dim())
    throw std::invalid_argument("Subspace::contains: ambient mismatch");
  for (std::size_t r = 0; r < other.dim(); ++r)
    if (!contains(other.basis_row(r))) return false;
  return true;
}

Subspace sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim() || a.p() != b.p())
    throw std::invalid_argument("sum: ambient mismatch");
  return Subspace(vstack(a.basis(), b.basis()));
}

// Zassenhaus: RREF of [A A; B 0]; rows whose left block vanishes carry the
// intersection in the right block.
Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim() || a.p() != b.p())
    throw std::invalid_argument("intersect: ambient mismatch");
  const std::size_t m = a.ambient_dim();
  const std::uint32_t p = a.p();
  MatrixFp big(p, a.dim() + b.dim(), 2 * m);
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < m; ++c) {
      big.set(r, c, a.basis().at(r, c));
      big.set(r, m + c, a.basis().at(r, c));
    }
  for (std::size_t r = 0; r < b.dim(); ++r)
    for (std::size_t c = 0; c < m; ++c) big.set(a.dim() + r, c, b.basis().at(r, c));
  MatrixFp red = big.rref();
  std::vector<std::vector<Fp>> rows;
  for (std::size_t r = 0; r < red.rows(); ++r) {
    bool left_zero = true;
    for (std::size_t c = 0; c < m; ++c)
      if (red.at(r, c) != 0) {
        left_zero = false;
        break;
      }
    if (!left_zero) continue;
    std::vector<Fp> v(m);
    for (std::size_t c = 0; c < m; ++c) v[c] = red.at(r, m + c);
    rows.push_back(std::move(v));
  }
  return Subspace::span(p, m, rows);
}

Subspace LinearMap::image(const Subspace& x) const {
  if (x.ambient_dim() != domain_dim())
    throw std::invalid_argument("LinearMap::image: dimension mismatch");
  std::vector<std::vector<Fp>> rows;
  rows.reserve(x.dim());
  for (std::size_t r = 0; r < x.dim(); ++r) rows.push_back(apply(x.basis_row(r)));
  return Subspace::span(mat.p(), codomain_dim(), rows);
}

Subspace LinearMap::preimage(const Subspace& y) const {
  if (y.ambient_dim() != codomain_dim())
    throw std::invalid_argument("LinearMap::preimage: dimension mismatch");
  // Equations cutting out y, composed with the map.
  MatrixFp ann = y.basis().kernel();
  if (ann.rows() == 0) return Subspace::full(mat.p(), domain_dim());
  return Subspace((ann * mat).kernel());
}

Subspace LinearMap::kernel() const { return Subspace(mat.kernel()); }

}  // namespace capgrp
