#pragma once

#include "svpcp/field.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace svpcp {

// Dense row-major matrix over a binary field.
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<FieldElement> a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = FieldElement(1);
    return m;
  }

  FieldElement& operator()(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  FieldElement operator()(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

inline Matrix mat_mul(const Field& f, const Matrix& x, const Matrix& y) {
  if (x.cols != y.rows) throw std::invalid_argument("mat_mul: shape mismatch");
  Matrix r(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      FieldElement v = x(i, k);
      if (v.value == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) r(i, j) += f.mul(v, y(k, j));
    }
  return r;
}

inline std::vector<FieldElement> mat_vec(const Field& f, const Matrix& m,
                                         std::span<const FieldElement> v) {
  if (m.cols != v.size()) throw std::invalid_argument("mat_vec: shape mismatch");
  std::vector<FieldElement> r(m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) r[i] += f.mul(m(i, j), v[j]);
  return r;
}

inline Matrix transpose(const Matrix& m) {
  Matrix r(m.cols, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) r(j, i) = m(i, j);
  return r;
}

// Gauss-Jordan inverse; nullopt when singular.
inline std::optional<Matrix> mat_inverse(const Field& f, Matrix m) {
  if (m.rows != m.cols) throw std::invalid_argument("mat_inverse: not square");
  const std::size_t n = m.rows;
  Matrix inv = Matrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m(piv, col).value == 0) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(piv, j), m(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    FieldElement s = f.inv(m(col, col));
    for (std::size_t j = 0; j < n; ++j) {
      m(col, j) = f.mul(m(col, j), s);
      inv(col, j) = f.mul(inv(col, j), s);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      FieldElement c = m(r, col);
      if (c.value == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        m(r, j) += f.mul(c, m(col, j));
        inv(r, j) += f.mul(c, inv(col, j));
      }
    }
  }
  return inv;
}

inline std::size_t mat_rank(const Field& f, Matrix m) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
    std::size_t piv = rank;
    while (piv < m.rows && m(piv, col).value == 0) ++piv;
    if (piv == m.rows) continue;
    for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(rank, j));
    FieldElement s = f.inv(m(rank, col));
    for (std::size_t r = rank + 1; r < m.rows; ++r) {
      FieldElement c = f.mul(m(r, col), s);
      if (c.value == 0) continue;
      for (std::size_t j = col; j < m.cols; ++j) m(r, j) += f.mul(c, m(rank, j));
    }
    ++rank;
  }
  return rank;
}

// Incremental row-echelon basis used by greedy rank tests.
class EchelonBasis {
 public:
  EchelonBasis(const Field& f, std::size_t width) : f_(f), width_(width) {}

  // Adds v if it is independent of the rows so far; returns whether it was added.
  bool insert(std::vector<FieldElement> v) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      FieldElement c = v[pivots_[i]];
      if (c.value == 0) continue;
      const auto& row = rows_[i];
      for (std::size_t j = pivots_[i]; j < width_; ++j) v[j] += f_.mul(c, row[j]);
    }
    std::size_t p = 0;
    while (p < width_ && v[p].value == 0) ++p;
    if (p == width_) return false;
    FieldElement s = f_.inv(v[p]);
    for (std::size_t j = p; j < width_; ++j) v[j] = f_.mul(v[j], s);
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  Field f_;
  std::size_t width_;
  std::vector<std::vector<FieldElement>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace svpcp
