#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mscr/field.hpp"

namespace mscr {

/// Dense row-major matrix of field elements. Storage only; arithmetic lives
/// in the free functions below, which take the field explicitly.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Symbol operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Symbol& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const Symbol> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<Symbol> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Symbol> data_;
};

/// m x cols matrix with entry (i, j) = points[i]^j. Points must be distinct
/// and nonzero; any square slice of such a matrix is invertible.
Matrix vandermonde(const PrimeField& f, std::span<const Symbol> points, std::size_t cols);

Matrix mat_mul(const PrimeField& f, const Matrix& a, const Matrix& b);
Matrix mat_add(const PrimeField& f, const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);

Symbol dot(const PrimeField& f, std::span<const Symbol> a, std::span<const Symbol> b);

/// row vector x * matrix a.
std::vector<Symbol> vec_mat(const PrimeField& f, std::span<const Symbol> x, const Matrix& a);

/// matrix a * column vector x.
std::vector<Symbol> mat_vec(const PrimeField& f, const Matrix& a, std::span<const Symbol> x);

/// Solves A*X = B exactly by Gauss-Jordan elimination, taking the first
/// nonzero pivot in each column for determinism. Throws RankError naming the
/// first dependent row when A is singular.
Matrix solve_system(const PrimeField& f, const Matrix& a, const Matrix& b);

Matrix invert(const PrimeField& f, const Matrix& a);

Symbol determinant(const PrimeField& f, Matrix a);

/// Symmetric matrix packed as its upper triangle (row-major, diagonal
/// included). Entry (i, j) with i > j reads the mirrored slot.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;

  /// Packs dim*(dim+1)/2 symbols; rejects any other length.
  static SymmetricMatrix pack(std::size_t dim, std::span<const Symbol> symbols);

  /// Inverse of pack: the upper triangle in row-major order.
  std::vector<Symbol> unpack() const { return upper_; }

  std::size_t dim() const { return dim_; }

  Symbol at(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return upper_[index(i, j)];
  }

  Symbol& at(std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return upper_[index(i, j)];
  }

  Matrix dense() const;

  bool operator==(const SymmetricMatrix&) const = default;

 private:
  std::size_t index(std::size_t i, std::size_t j) const {
    // Offset of row i's slice: rows above contribute dim, dim-1, ...
    return i * dim_ - i * (i - 1) / 2 + (j - i);
  }

  std::size_t dim_ = 0;
  std::vector<Symbol> upper_;
};

}  // namespace mscr
