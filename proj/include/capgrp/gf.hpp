#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace capgrp {

/// Residue mod p, always kept in [0, p).
using Fp = std::uint32_t;

bool is_odd_prime(std::uint32_t p);

/// Throws std::invalid_argument unless p is an odd prime.
void require_odd_prime(std::uint32_t p);

inline Fp fp_norm(std::uint32_t p, std::int64_t a) {
  std::int64_t r = a % static_cast<std::int64_t>(p);
  if (r < 0) r += static_cast<std::int64_t>(p);
  return static_cast<Fp>(r);
}

inline Fp fp_add(std::uint32_t p, Fp a, Fp b) {
  Fp s = a + b;
  return s >= p ? s - p : s;
}

inline Fp fp_sub(std::uint32_t p, Fp a, Fp b) { return a >= b ? a - b : a + p - b; }

inline Fp fp_mul(std::uint32_t p, Fp a, Fp b) {
  return static_cast<Fp>(static_cast<std::uint64_t>(a) * b % p);
}

inline Fp fp_neg(std::uint32_t p, Fp a) { return a == 0 ? 0 : p - a; }

/// Multiplicative inverse via extended Euclid; throws on a == 0.
Fp fp_inv(std::uint32_t p, Fp a);

/// Dense row-major matrix over F_p. Immutable-by-convention once built:
/// all algorithms return fresh matrices.
class MatrixFp {
 public:
  MatrixFp() = default;
  MatrixFp(std::uint32_t p, std::size_t rows, std::size_t cols);

  static MatrixFp identity(std::uint32_t p, std::size_t n);
  static MatrixFp from_rows(std::uint32_t p, std::size_t cols,
                            const std::vector<std::vector<Fp>>& rows);

  std::uint32_t p() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Fp at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Fp v) { a_[r * cols_ + c] = v; }

  std::vector<Fp> row(std::size_t r) const;

  MatrixFp transpose() const;
  MatrixFp operator*(const MatrixFp& rhs) const;

  /// Unique reduced row-echelon form (row space preserved).
  MatrixFp rref() const;

  std::size_t rank() const;

  /// Basis of {x : M x = 0}, one vector per row (not canonicalized).
  MatrixFp kernel() const;

  /// Gauss-Jordan inverse; throws std::invalid_argument if singular.
  MatrixFp inverse() const;

  bool operator==(const MatrixFp& rhs) const = default;

 private:
  std::uint32_t p_ = 0;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Fp> a_;
};

/// M v for a column vector v of length M.cols().
std::vector<Fp> mat_vec(const MatrixFp& m, const std::vector<Fp>& v);

/// Rows of a stacked on top of rows of b (equal p and cols required).
MatrixFp vstack(const MatrixFp& a, const MatrixFp& b);

}  // namespace capgrp
