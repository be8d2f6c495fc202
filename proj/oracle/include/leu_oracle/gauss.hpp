#pragma once

// Textbook Gaussian elimination with pivoting, used as an independent check
// on the recursive decomposition. Only the scalar and matrix containers are
// shared with the library; no multiplication kernel or permutation code is.

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "leu/errors.hpp"
#include "leu/matrix.hpp"

namespace leu::oracle {

/// Reduced row echelon form in place; returns the pivot columns.
template <ExactField F>
std::vector<std::size_t> rref_in_place(Matrix<F>& m) {
  const F& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && f.is_zero(m(sel, col))) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(row, j));
    const auto scale = f.inv(m(row, col));
    for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) = f.mul(m(row, j), scale);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || f.is_zero(m(i, col))) continue;
      const auto factor = m(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

/// Elimination with full pivoting: the pivot at each step is the first nonzero
/// entry of the remaining submatrix, moved into place by a row and a column swap.
template <ExactField F>
std::size_t gauss_rank(Matrix<F> m) {
  const F& f = m.field();
  const std::size_t steps = std::min(m.rows(), m.cols());
  for (std::size_t k = 0; k < steps; ++k) {
    std::size_t pr = m.rows(), pc = m.cols();
    for (std::size_t i = k; i < m.rows() && pr == m.rows(); ++i)
      for (std::size_t j = k; j < m.cols(); ++j)
        if (!f.is_zero(m(i, j))) {
          pr = i;
          pc = j;
          break;
        }
    if (pr == m.rows()) return k;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(k, j), m(pr, j));
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, k), m(i, pc));
    const auto pivot_inv = f.inv(m(k, k));
    for (std::size_t i = k + 1; i < m.rows(); ++i) {
      if (f.is_zero(m(i, k))) continue;
      const auto factor = f.mul(m(i, k), pivot_inv);
      for (std::size_t j = k; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(k, j)));
    }
  }
  return steps;
}

template <ExactField F>
typename F::Element gauss_determinant(Matrix<F> m) {
  if (!m.is_square()) throw DimensionError("gauss_determinant needs a square matrix");
  const F& f = m.field();
  auto det = f.one();
  const std::size_t n = m.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && f.is_zero(m(sel, col))) ++sel;
    if (sel == n) return f.zero();
    if (sel != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(sel, j), m(col, j));
      det = f.neg(det);
    }
    det = f.mul(det, m(col, col));
    const auto pivot_inv = f.inv(m(col, col));
    for (std::size_t i = col + 1; i < n; ++i) {
      if (f.is_zero(m(i, col))) continue;
      const auto factor = f.mul(m(i, col), pivot_inv);
      for (std::size_t j = col; j < n; ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(col, j)));
    }
  }
  return det;
}

/// Gauss-Jordan on [A | 1]. Throws SingularError with the rank of A.
template <ExactField F>
Matrix<F> gauss_inverse(const Matrix<F>& a) {
  if (!a.is_square()) throw DimensionError("gauss_inverse needs a square matrix");
  const std::size_t n = a.rows();
  Matrix<F> aug(a.field(), n, 2 * n);
  aug.set_block(0, 0, a);
  aug.set_block(0, n, Matrix<F>::identity(a.field(), n));
  rref_in_place(aug);
  if (!(aug.block(0, 0, n, n) == Matrix<F>::identity(a.field(), n))) throw SingularError(gauss_rank(a));
  return aug.block(0, n, n, n);
}

/// Right kernel basis from the free variables of the RREF, one column per vector.
template <ExactField F>
Matrix<F> gauss_kernel(const Matrix<F>& a) {
  const F& f = a.field();
  Matrix<F> r = a;
  const auto pivots = rref_in_place(r);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;

  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (!is_pivot[j]) free_cols.push_back(j);

  Matrix<F> k(f, a.cols(), free_cols.size());
  for (std::size_t v = 0; v < free_cols.size(); ++v) {
    const auto fc = free_cols[v];
    k(fc, v) = f.one();
    for (std::size_t pi = 0; pi < pivots.size(); ++pi) k(pivots[pi], v) = f.neg(r(pi, fc));
  }
  return k;
}

/// Plain triple-loop product, independent of the library kernels.
template <ExactField F>
Matrix<F> naive_product(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.cols() != b.rows()) throw DimensionError("naive_product: inner dimensions differ");
  const F& f = a.field();
  Matrix<F> out(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      auto acc = f.zero();
      for (std::size_t k = 0; k < a.cols(); ++k) acc = f.add(acc, f.mul(a(i, k), b(k, j)));
      out(i, j) = acc;
    }
  return out;
}

}  // namespace leu::oracle
