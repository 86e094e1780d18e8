#include "mscr/matrix.hpp"

#include <string>

namespace mscr {

Matrix vandermonde(const PrimeField& f, std::span<const Symbol> points, std::size_t cols) {
  if (cols < 1) throw LinalgError("vandermonde needs at least one column");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i] == 0) throw LinalgError("vandermonde point must be nonzero");
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i] == points[j]) {
        throw LinalgError("duplicate vandermonde point " + std::to_string(points[i]));
      }
    }
  }
  Matrix m(points.size(), cols);
  for (std::size_t i = 0; i < points.size(); ++i) {
    Symbol v = 1;
    for (std::size_t j = 0; j < cols; ++j) {
      m(i, j) = v;
      v = f.mul(v, points[i]);
    }
  }
  return m;
}

Matrix mat_mul(const PrimeField& f, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw LinalgError("mat_mul shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Symbol av = a(i, l);
      if (av == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        out(i, j) = f.add(out(i, j), f.mul(av, b(l, j)));
      }
    }
  }
  return out;
}

Matrix mat_add(const PrimeField& f, const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw LinalgError("mat_add shape mismatch");
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = f.add(a(i, j), b(i, j));
  }
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  }
  return out;
}

Symbol dot(const PrimeField& f, std::span<const Symbol> a, std::span<const Symbol> b) {
  if (a.size() != b.size()) throw LinalgError("dot length mismatch");
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += static_cast<std::uint64_t>(a[i]) * b[i] % f.modulus();
  }
  return f.reduce(acc);
}

std::vector<Symbol> vec_mat(const PrimeField& f, std::span<const Symbol> x, const Matrix& a) {
  if (x.size() != a.rows()) throw LinalgError("vec_mat length mismatch");
  std::vector<Symbol> out(a.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const Symbol xv = x[i];
    if (xv == 0) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out[j] = f.add(out[j], f.mul(xv, a(i, j)));
    }
  }
  return out;
}

std::vector<Symbol> mat_vec(const PrimeField& f, const Matrix& a, std::span<const Symbol> x) {
  if (x.size() != a.cols()) throw LinalgError("mat_vec length mismatch");
  std::vector<Symbol> out(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) out[i] = dot(f, a.row(i), x);
  return out;
}

Matrix solve_system(const PrimeField& f, const Matrix& a, const Matrix& b) {
  const std::size_t m = a.rows();
  if (a.cols() != m) throw LinalgError("solve_system needs a square coefficient matrix");
  if (b.rows() != m) throw LinalgError("solve_system right-hand side has wrong row count");

  Matrix lhs = a;
  Matrix rhs = b;
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    while (pivot < m && lhs(pivot, col) == 0) ++pivot;
    if (pivot == m) {
      throw RankError("singular system: row " + std::to_string(col) +
                          " is linearly dependent on the rows above it",
                      col);
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < m; ++j) std::swap(lhs(col, j), lhs(pivot, j));
      for (std::size_t j = 0; j < rhs.cols(); ++j) std::swap(rhs(col, j), rhs(pivot, j));
    }
    const Symbol scale = f.inv(lhs(col, col));
    for (std::size_t j = col; j < m; ++j) lhs(col, j) = f.mul(lhs(col, j), scale);
    for (std::size_t j = 0; j < rhs.cols(); ++j) rhs(col, j) = f.mul(rhs(col, j), scale);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col) continue;
      const Symbol factor = lhs(r, col);
      if (factor == 0) continue;
      for (std::size_t j = col; j < m; ++j) {
        lhs(r, j) = f.sub(lhs(r, j), f.mul(factor, lhs(col, j)));
      }
      for (std::size_t j = 0; j < rhs.cols(); ++j) {
        rhs(r, j) = f.sub(rhs(r, j), f.mul(factor, rhs(col, j)));
      }
    }
  }
  return rhs;
}

Matrix invert(const PrimeField& f, const Matrix& a) {
  return solve_system(f, a, Matrix::identity(a.rows()));
}

Symbol determinant(const PrimeField& f, Matrix a) {
  const std::size_t m = a.rows();
  if (a.cols() != m) throw LinalgError("determinant needs a square matrix");
  Symbol det = 1;
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    while (pivot < m && a(pivot, col) == 0) ++pivot;
    if (pivot == m) return 0;
    if (pivot != col) {
      for (std::size_t j = 0; j < m; ++j) std::swap(a(col, j), a(pivot, j));
      det = f.neg(det);
    }
    det = f.mul(det, a(col, col));
    const Symbol scale = f.inv(a(col, col));
    for (std::size_t r = col + 1; r < m; ++r) {
      const Symbol factor = f.mul(a(r, col), scale);
      if (factor == 0) continue;
      for (std::size_t j = col; j < m; ++j) {
        a(r, j) = f.sub(a(r, j), f.mul(factor, a(col, j)));
      }
    }
  }
  return det;
}

SymmetricMatrix SymmetricMatrix::pack(std::size_t dim, std::span<const Symbol> symbols) {
  const std::size_t expected = dim * (dim + 1) / 2;
  if (symbols.size() != expected) {
    throw LinalgError("symmetric pack of dim " + std::to_string(dim) + " needs " +
                      std::to_string(expected) + " symbols, got " + std::to_string(symbols.size()));
  }
  SymmetricMatrix s;
  s.dim_ = dim;
  s.upper_.assign(symbols.begin(), symbols.end());
  return s;
}

Matrix SymmetricMatrix::dense() const {
  Matrix m(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) m(i, j) = at(i, j);
  }
  return m;
}

}  // namespace mscr
