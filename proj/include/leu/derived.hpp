#pragma once

// Results that follow from one LEU decomposition L A U = E:
//
//   A = L^-1 E U^-1                            (every A)
//   A^-1 = U E^T L                             (rank n)
//   rank A = number of ones in E
//   A (U e_j) = L^-1 E e_j = 0                 (every zero column j of E)
//   Bruhat: reversal(A) = V1 w V2 with V1, V2 upper triangular, w a permutation

#include <cstddef>
#include <vector>

#include "leu/leu.hpp"

namespace leu {

template <ExactField F>
struct BruhatResult {
  Matrix<F> V1;
  TruncPerm w;  // full permutation
  Matrix<F> V2;
};

/// M = V1 w V2, V1 and V2 upper triangular (singular when M is), w a permutation.
///
/// With R the reversal permutation and (L, E, U) = LEU(R M):
///   V1 = R (L^-1 - (1 - I_E)) R,  w = R (E + complement(E)),  V2 = U^-1 - (1 - J_E)
/// Decomposing R M instead of M makes the triple reproduce M itself.
template <ExactField F>
BruhatResult<F> bruhat_decompose(const Matrix<F>& m, MulCounter& counter, const LeuOptions& opt = {}) {
  if (!m.is_square() || m.rows() == 0) throw DimensionError("bruhat_decompose needs a nonempty square matrix");
  const std::size_t s = m.rows();
  const auto reversal = reversal_perm(s);
  const auto r = leu_decompose(tp_apply_left(reversal, m), counter, opt);

  const auto l_inv = invert_lower_triangular(r.L, counter, opt.mul);
  const auto u_inv = invert_upper_unitriangular(r.U, counter, opt.mul);
  const auto free_rows = diag_complement(tp_row_support(r.E));
  const auto free_cols = diag_complement(tp_col_support(r.E));

  auto v1 = tp_apply_right(tp_apply_left(reversal, sub_diag(l_inv, free_rows)), reversal);
  auto w = tp_product(reversal, tp_disjoint_sum(r.E, tp_complement(r.E)));
  auto v2 = sub_diag(u_inv, free_cols);
  return {std::move(v1), std::move(w), std::move(v2)};
}

/// A^-1 = U E^T L. Throws SingularError carrying the rank when A is singular.
template <ExactField F>
Matrix<F> mat_inverse(const Matrix<F>& a, MulCounter& counter, const LeuOptions& opt = {}) {
  const auto r = leu_decompose(a, counter, opt);
  if (r.rank() < a.rows()) throw SingularError(r.rank());
  return multiply(r.U, tp_apply_left_transposed(r.E, r.L), counter, opt.mul);
}

/// Rank as the number of ones in E. Rectangular inputs are zero-padded to square.
template <ExactField F>
std::size_t mat_rank(const Matrix<F>& a, MulCounter& counter, const LeuOptions& opt = {}) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  return leu_decompose(pad_to_square(a), counter, opt).rank();
}

template <ExactField F>
std::size_t mat_rank(const Matrix<F>& a, const LeuOptions& opt = {}) {
  MulCounter scratch;
  return mat_rank(a, scratch, opt);
}

/// Basis of the right kernel, one column per basis vector (cols x nullity).
///
/// From A = L^-1 E U^-1: for a zero column j of E, A U e_j = L^-1 E e_j = 0.
/// The U e_j are columns of an invertible matrix, hence independent, and there
/// are n - rank of them. Rectangular inputs are zero-padded to square; vectors
/// supported only on padded coordinates belong to the padding and are dropped.
template <ExactField F>
Matrix<F> kernel_basis(const Matrix<F>& a, MulCounter& counter, const LeuOptions& opt = {}) {
  const F& f = a.field();
  const std::size_t c = a.cols();
  if (a.rows() == 0) return Matrix<F>::identity(f, c);
  if (c == 0) return Matrix<F>(f, 0, 0);

  const auto padded = pad_to_square(a);
  const auto r = leu_decompose(padded, counter, opt);
  const auto used_cols = tp_col_support(r.E);

  std::vector<std::size_t> picked;
  for (std::size_t j = 0; j < padded.cols(); ++j) {
    if (used_cols[j]) continue;
    bool real_support = false;
    for (std::size_t i = 0; i < c && !real_support; ++i) real_support = !f.is_zero(r.U(i, j));
    if (real_support) picked.push_back(j);
  }

  Matrix<F> k(f, c, picked.size());
  for (std::size_t col = 0; col < picked.size(); ++col)
    for (std::size_t i = 0; i < c; ++i) k(i, col) = r.U(i, picked[col]);

  if (opt.debug_checks) {
    MulCounter scratch;
    if (!mat_mul_classical(a, k, scratch).is_zero()) throw ContractViolation("kernel_basis: A K != 0");
  }
  return k;
}

struct BlockIndices {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};

/// Row and column index sets of a nonsingular rank(A) x rank(A) submatrix:
/// the rows and columns holding the ones of E.
///
/// A[R, C] = L^-1[R, R] E[R, C] U^-1[C, C] with L^-1[R, R] and U^-1[C, C]
/// principal submatrices of triangular matrices with nonzero diagonal and
/// E[R, C] a full permutation, so the block is invertible.
template <ExactField F>
BlockIndices largest_nonsingular_block(const Matrix<F>& a, MulCounter& counter, const LeuOptions& opt = {}) {
  const auto r = leu_decompose(a, counter, opt);
  return {tp_row_support(r.E).indices(), tp_col_support(r.E).indices()};
}

/// The submatrix A[rows, cols].
template <ExactField F>
Matrix<F> submatrix(const Matrix<F>& a, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  Matrix<F> out(a.field(), rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = a(rows[i], cols[j]);
  return out;
}

}  // namespace leu
