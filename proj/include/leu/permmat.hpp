#pragma once

// Truncated permutation matrices (at most one 1 per row and per column) and
// diagonal 0/1 matrices, with sparse application to dense matrices. None of
// these products are dense multiplications; they select, move and zero rows
// or columns and never touch a MulCounter.

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "leu/matrix.hpp"

namespace leu {

struct Position {
  std::size_t row;
  std::size_t col;
  friend auto operator<=>(const Position&, const Position&) = default;
};

/// Diagonal idempotent: diag(mask). n x n.
class DiagIdem {
 public:
  explicit DiagIdem(std::size_t n, bool value = false) : mask_(n, value) {}
  explicit DiagIdem(std::vector<bool> mask) : mask_(std::move(mask)) {}

  static DiagIdem identity(std::size_t n) { return DiagIdem(n, true); }
  static DiagIdem zero(std::size_t n) { return DiagIdem(n, false); }

  std::size_t size() const { return mask_.size(); }
  bool operator[](std::size_t i) const { return mask_[i]; }
  void set(std::size_t i, bool v) { mask_[i] = v; }
  std::size_t count() const;
  std::vector<std::size_t> indices() const;

  /// Upper / lower half of the diagonal, for block recursion.
  DiagIdem head(std::size_t k) const;
  DiagIdem tail(std::size_t k) const;

  friend bool operator==(const DiagIdem&, const DiagIdem&) = default;

 private:
  std::vector<bool> mask_;
};

DiagIdem diag_complement(const DiagIdem& d);
/// Product of two diagonal idempotents (mask intersection).
DiagIdem diag_meet(const DiagIdem& a, const DiagIdem& b);
/// Partial order I <= J, i.e. J - I is again a diagonal idempotent.
bool diag_leq(const DiagIdem& a, const DiagIdem& b);

/// Truncated permutation of size n: ones sorted by row, with a column index
/// kept alongside so lookups in either direction are logarithmic.
class TruncPerm {
 public:
  TruncPerm() = default;
  /// The zero element of size n.
  explicit TruncPerm(std::size_t n) : n_(n) {}
  /// Throws std::invalid_argument on out-of-range positions or a repeated row/column.
  TruncPerm(std::size_t n, std::vector<Position> ones);

  static TruncPerm identity(std::size_t n);

  std::size_t size() const { return n_; }
  std::size_t rank() const { return ones_.size(); }
  bool is_full() const { return ones_.size() == n_; }
  std::span<const Position> ones() const { return ones_; }

  std::optional<std::size_t> col_of_row(std::size_t row) const;
  std::optional<std::size_t> row_of_col(std::size_t col) const;

  friend bool operator==(const TruncPerm& a, const TruncPerm& b) { return a.n_ == b.n_ && a.ones_ == b.ones_; }

 private:
  std::size_t n_ = 0;
  std::vector<Position> ones_;        // sorted by row
  std::vector<std::size_t> by_col_;   // indices into ones_, sorted by column
};

/// Anti-diagonal permutation W(1,n) + W(2,n-1) + ... + W(n,1).
TruncPerm reversal_perm(std::size_t n);
TruncPerm tp_transpose(const TruncPerm& e);
/// Pairs the zero rows of E with its zero columns, both ascending.
TruncPerm tp_complement(const TruncPerm& e);
/// I_E = E E^T: rows that hold a one.
DiagIdem tp_row_support(const TruncPerm& e);
/// J_E = E^T E: columns that hold a one.
DiagIdem tp_col_support(const TruncPerm& e);
/// Sum of two truncated permutations with disjoint rows and columns.
TruncPerm tp_disjoint_sum(const TruncPerm& a, const TruncPerm& b);
/// Semigroup product P*Q.
TruncPerm tp_product(const TruncPerm& p, const TruncPerm& q);
/// Block assembly [[e11, e12], [e21, e22]] of four h x h pieces.
TruncPerm tp_assemble4(const TruncPerm& e11, const TruncPerm& e12, const TruncPerm& e21, const TruncPerm& e22);
/// Upper-left k x k corner; throws ContractViolation if a one lies outside it.
TruncPerm tp_truncate(const TruncPerm& e, std::size_t k);

/// `perm n=<n> ones=(i,j);(i,j);...`, 0-based, sorted by row.
std::string format_perm(const TruncPerm& e);
TruncPerm parse_perm(std::string_view text);

template <ExactField F>
Matrix<F> tp_to_dense(const TruncPerm& e, const F& field) {
  Matrix<F> out(field, e.size(), e.size());
  for (const auto& p : e.ones()) out(p.row, p.col) = field.one();
  return out;
}

/// Inverse of tp_to_dense. Throws std::invalid_argument unless the matrix is
/// a square 0/1 matrix with at most one 1 per row and column.
template <ExactField F>
TruncPerm tp_from_dense(const Matrix<F>& m) {
  if (!m.is_square()) throw DimensionError("tp_from_dense: matrix is not square");
  std::vector<Position> ones;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m.field().is_zero(m(i, j))) continue;
      if (!(m(i, j) == m.field().one())) throw std::invalid_argument("tp_from_dense: entry other than 0/1");
      ones.push_back({i, j});
    }
  }
  return TruncPerm(m.rows(), std::move(ones));
}

template <ExactField F>
Matrix<F> diag_to_dense(const DiagIdem& d, const F& field) {
  Matrix<F> out(field, d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i]) out(i, i) = field.one();
  return out;
}

namespace detail {
inline void require_conformal(std::size_t expected, std::size_t actual, const char* op) {
  if (expected != actual) {
    throw DimensionError(std::string(op) + ": dimension " + std::to_string(expected) + " vs " +
                         std::to_string(actual));
  }
}
}  // namespace detail

/// E * A: row i of the result is row j of A when (i, j) is a one of E, else zero.
template <ExactField F>
Matrix<F> tp_apply_left(const TruncPerm& e, const Matrix<F>& a) {
  detail::require_conformal(e.size(), a.rows(), "tp_apply_left");
  Matrix<F> out(a.field(), e.size(), a.cols());
  for (const auto& p : e.ones()) {
    auto src = a.row(p.col);
    std::copy(src.begin(), src.end(), out.row(p.row).begin());
  }
  return out;
}

/// A * E: column j of the result is column i of A when (i, j) is a one of E, else zero.
template <ExactField F>
Matrix<F> tp_apply_right(const Matrix<F>& a, const TruncPerm& e) {
  detail::require_conformal(a.cols(), e.size(), "tp_apply_right");
  Matrix<F> out(a.field(), a.rows(), e.size());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (const auto& p : e.ones()) out(r, p.col) = a(r, p.row);
  }
  return out;
}

/// E^T * A without materialising E^T.
template <ExactField F>
Matrix<F> tp_apply_left_transposed(const TruncPerm& e, const Matrix<F>& a) {
  detail::require_conformal(e.size(), a.rows(), "tp_apply_left_transposed");
  Matrix<F> out(a.field(), e.size(), a.cols());
  for (const auto& p : e.ones()) {
    auto src = a.row(p.row);
    std::copy(src.begin(), src.end(), out.row(p.col).begin());
  }
  return out;
}

/// A * E^T without materialising E^T.
template <ExactField F>
Matrix<F> tp_apply_right_transposed(const Matrix<F>& a, const TruncPerm& e) {
  detail::require_conformal(a.cols(), e.size(), "tp_apply_right_transposed");
  Matrix<F> out(a.field(), a.rows(), e.size());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (const auto& p : e.ones()) out(r, p.row) = a(r, p.col);
  }
  return out;
}

/// I * A: zero the rows outside the mask.
template <ExactField F>
Matrix<F> diag_apply_left(const DiagIdem& d, const Matrix<F>& a) {
  detail::require_conformal(d.size(), a.rows(), "diag_apply_left");
  Matrix<F> out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (d[i]) continue;
    for (auto& x : out.row(i)) x = a.field().zero();
  }
  return out;
}

/// A * I: zero the columns outside the mask.
template <ExactField F>
Matrix<F> diag_apply_right(const Matrix<F>& a, const DiagIdem& d) {
  detail::require_conformal(a.cols(), d.size(), "diag_apply_right");
  Matrix<F> out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!d[j]) out(i, j) = a.field().zero();
  }
  return out;
}

/// A + I for a diagonal idempotent I.
template <ExactField F>
Matrix<F> add_diag(const Matrix<F>& a, const DiagIdem& d) {
  detail::require_conformal(a.rows(), d.size(), "add_diag");
  detail::require_conformal(a.cols(), d.size(), "add_diag");
  Matrix<F> out = a;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i]) out(i, i) = a.field().add(out(i, i), a.field().one());
  return out;
}

/// A - I for a diagonal idempotent I.
template <ExactField F>
Matrix<F> sub_diag(const Matrix<F>& a, const DiagIdem& d) {
  detail::require_conformal(a.rows(), d.size(), "sub_diag");
  detail::require_conformal(a.cols(), d.size(), "sub_diag");
  Matrix<F> out = a;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i]) out(i, i) = a.field().sub(out(i, i), a.field().one());
  return out;
}

}  // namespace leu
