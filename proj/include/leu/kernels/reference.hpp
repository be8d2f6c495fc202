#pragma once

// Serial textbook kernels. Kept as the reference the optimised and OpenMP
// kernels are tested against; nothing on the production path calls them.

#include "leu/matrix.hpp"

namespace leu::kernels::reference {

/// C = A * B by the i-j-k triple loop, one field operation at a time.
template <ExactField F>
Matrix<F> gemm(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.cols() != b.rows()) throw DimensionError("reference gemm: inner dimensions differ");
  const F& f = a.field();
  Matrix<F> c(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      auto acc = f.zero();
      for (std::size_t k = 0; k < a.cols(); ++k) acc = f.add(acc, f.mul(a(i, k), b(k, j)));
      c(i, j) = std::move(acc);
    }
  }
  return c;
}

template <ExactField F>
Matrix<F> add(const Matrix<F>& a, const Matrix<F>& b) {
  const F& f = a.field();
  Matrix<F> c(f, a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = f.add(a(i, j), b(i, j));
  return c;
}

}  // namespace leu::kernels::reference
