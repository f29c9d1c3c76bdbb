#include "capgrp/gf.hpp"

#include <stdexcept>
#include <string>

namespace capgrp {

bool is_odd_prime(std::uint32_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (std::uint64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

void require_odd_prime(std::uint32_t p) {
  if (!is_odd_prime(p))
    throw std::invalid_argument("p must be an odd prime, got " + std::to_string(p));
}

Fp fp_inv(std::uint32_t p, Fp a) {
  if (a == 0) throw std::invalid_argument("fp_inv: zero is not invertible");
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  return fp_norm(p, t);
}

MatrixFp::MatrixFp(std::uint32_t p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

MatrixFp MatrixFp::identity(std::uint32_t p, std::size_t n) {
  MatrixFp m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

MatrixFp MatrixFp::from_rows(std::uint32_t p, std::size_t cols,
                             const std::vector<std::vector<Fp>>& rows) {
  MatrixFp m(p, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols)
      throw std::invalid_argument("from_rows: row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) {
      if (rows[r][c] >= p) throw std::invalid_argument("from_rows: entry not reduced mod p");
      m.set(r, c, rows[r][c]);
    }
  }
  return m;
}

std::vector<Fp> MatrixFp::row(std::size_t r) const {
  return std::vector<Fp>(a_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                         a_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

MatrixFp MatrixFp::transpose() const {
  MatrixFp m(p_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m.set(c, r, at(r, c));
  return m;
}

MatrixFp MatrixFp::operator*(const MatrixFp& rhs) const {
  if (p_ != rhs.p_ || cols_ != rhs.rows_)
    throw std::invalid_argument("matrix multiply: shape/modulus mismatch");
  MatrixFp m(p_, rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      Fp a = at(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c)
        m.set(r, c, fp_add(p_, m.at(r, c), fp_mul(p_, a, rhs.at(k, c))));
    }
  return m;
}

MatrixFp MatrixFp::rref() const {
  MatrixFp m = *this;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < cols_ && lead < rows_; ++c) {
    std::size_t piv = lead;
    while (piv < rows_ && m.at(piv, c) == 0) ++piv;
    if (piv == rows_) continue;
    if (piv != lead)
      for (std::size_t j = 0; j < cols_; ++j) {
        Fp t = m.at(piv, j);
        m.set(piv, j, m.at(lead, j));
        m.set(lead, j, t);
      }
    Fp inv = fp_inv(p_, m.at(lead, c));
    for (std::size_t j = c; j < cols_; ++j) m.set(lead, j, fp_mul(p_, m.at(lead, j), inv));
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == lead) continue;
      Fp f = m.at(r, c);
      if (f == 0) continue;
      for (std::size_t j = c; j < cols_; ++j)
        m.set(r, j, fp_sub(p_, m.at(r, j), fp_mul(p_, f, m.at(lead, j))));
    }
    ++lead;
  }
  return m;
}

std::size_t MatrixFp::rank() const {
  MatrixFp m = rref();
  std::size_t rk = 0;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (m.at(r, c) != 0) {
        ++rk;
        break;
      }
  return rk;
}

MatrixFp MatrixFp::kernel() const {
  MatrixFp m = rref();
  std::vector<std::size_t> pivot_of_col(cols_, static_cast<std::size_t>(-1));
  std::vector<bool> is_pivot(cols_, false);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c)
    if (m.at(r, c) != 0) {
      is_pivot[c] = true;
      pivot_of_col[c] = r;
      ++r;
    }
  std::vector<std::vector<Fp>> basis;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Fp> v(cols_, 0);
    v[f] = 1;
    for (std::size_t c = 0; c < cols_; ++c)
      if (is_pivot[c]) v[c] = fp_neg(p_, m.at(pivot_of_col[c], f));
    basis.push_back(std::move(v));
  }
  return MatrixFp::from_rows(p_, cols_, basis);
}

MatrixFp MatrixFp::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("inverse: matrix not square");
  std::size_t n = rows_;
  MatrixFp aug(p_, n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.set(r, c, at(r, c));
    aug.set(r, n + r, 1);
  }
  MatrixFp red = aug.rref();
  for (std::size_t i = 0; i < n; ++i)
    if (red.at(i, i) != 1) throw std::invalid_argument("inverse: matrix is singular");
  MatrixFp inv(p_, n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv.set(r, c, red.at(r, n + c));
  return inv;
}

std::vector<Fp> mat_vec(const MatrixFp& m, const std::vector<Fp>& v) {
  if (v.size() != m.cols()) throw std::invalid_argument("mat_vec: length mismatch");
  std::vector<Fp> out(m.rows(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < m.cols(); ++c)
      acc += static_cast<std::uint64_t>(m.at(r, c)) * v[c];
    out[r] = static_cast<Fp>(acc % m.p());
  }
  return out;
}

MatrixFp vstack(const MatrixFp& a, const MatrixFp& b) {
  if (a.p() != b.p() || a.cols() != b.cols())
    throw std::invalid_argument("vstack: shape/modulus mismatch");
  MatrixFp m(a.p(), a.rows() + b.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m.set(r, c, a.at(r, c));
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) m.set(a.rows() + r, c, b.at(r, c));
  return m;
}

}  // namespace capgrp
