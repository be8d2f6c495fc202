#pragma once

// Inverses of triangular matrices by block recursion:
//   [L11 0; L21 L22]^-1 = [X11 0; -X22 L21 X11, X22],  Xii = Lii^-1
// and the mirrored formula for upper unitriangular U. Two dense products per
// level, so the cost follows the multiplication policy.

#include <stdexcept>

#include "leu/matrix.hpp"
#include "leu/multiply.hpp"

namespace leu {

namespace detail {

template <ExactField F>
Matrix<F> invert_lower_rec(const Matrix<F>& l, MulCounter& counter, const MulPolicy& policy) {
  const std::size_t n = l.rows();
  const F& f = l.field();
  if (n == 1) {
    ++counter.scalar_invs;
    Matrix<F> out(f, 1, 1);
    out(0, 0) = f.inv(l(0, 0));
    return out;
  }
  const std::size_t h = n / 2;
  const auto x11 = invert_lower_rec(l.block(0, 0, h, h), counter, policy);
  const auto x22 = invert_lower_rec(l.block(h, h, n - h, n - h), counter, policy);
  const auto x21 = mat_neg(multiply(multiply(x22, l.block(h, 0, n - h, h), counter, policy), x11, counter, policy));
  Matrix<F> out(f, n, n);
  out.set_block(0, 0, x11);
  out.set_block(h, 0, x21);
  out.set_block(h, h, x22);
  return out;
}

template <ExactField F>
Matrix<F> invert_upper_unit_rec(const Matrix<F>& u, MulCounter& counter, const MulPolicy& policy) {
  const std::size_t n = u.rows();
  if (n == 1) return Matrix<F>::identity(u.field(), 1);
  const std::size_t h = n / 2;
  const auto y11 = invert_upper_unit_rec(u.block(0, 0, h, h), counter, policy);
  const auto y22 = invert_upper_unit_rec(u.block(h, h, n - h, n - h), counter, policy);
  const auto y12 = mat_neg(multiply(multiply(y11, u.block(0, h, h, n - h), counter, policy), y22, counter, policy));
  Matrix<F> out(u.field(), n, n);
  out.set_block(0, 0, y11);
  out.set_block(0, h, y12);
  out.set_block(h, h, y22);
  return out;
}

}  // namespace detail

/// Inverse of a lower triangular matrix with nonzero diagonal.
/// Throws SingularError on a zero diagonal entry.
template <ExactField F>
Matrix<F> invert_lower_triangular(const Matrix<F>& l, MulCounter& counter, const MulPolicy& policy = {}) {
  if (!is_lower_triangular(l)) throw std::invalid_argument("invert_lower_triangular: input is not lower triangular");
  if (l.rows() == 0) return l;
  if (!has_nonzero_diagonal(l)) throw SingularError("invert_lower_triangular: zero on the diagonal");
  return detail::invert_lower_rec(l, counter, policy);
}

/// Inverse of an upper unitriangular matrix; the result is upper unitriangular.
template <ExactField F>
Matrix<F> invert_upper_unitriangular(const Matrix<F>& u, MulCounter& counter, const MulPolicy& policy = {}) {
  if (!is_upper_triangular(u) || !has_unit_diagonal(u)) {
    throw std::invalid_argument("invert_upper_unitriangular: input is not upper unitriangular");
  }
  if (u.rows() == 0) return u;
  return detail::invert_upper_unit_rec(u, counter, policy);
}

}  // namespace leu
