#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "leu/errors.hpp"
#include "leu/scalars.hpp"

namespace leu {

/// Scalar multiplicative work done by an operation. Passed by reference through
/// every routine that multiplies; permutation and diagonal products never touch it.
struct MulCounter {
  std::uint64_t scalar_mults = 0;
  std::uint64_t scalar_invs = 0;

  std::uint64_t total() const { return scalar_mults + scalar_invs; }

  MulCounter& operator+=(const MulCounter& o) {
    scalar_mults += o.scalar_mults;
    scalar_invs += o.scalar_invs;
    return *this;
  }
  friend MulCounter operator-(MulCounter a, const MulCounter& b) {
    a.scalar_mults -= b.scalar_mults;
    a.scalar_invs -= b.scalar_invs;
    return a;
  }
  friend bool operator==(const MulCounter&, const MulCounter&) = default;
};

/// Dense row-major matrix over an exact field.
template <ExactField F>
class Matrix {
 public:
  using Field = F;
  using Element = typename F::Element;

  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  Matrix(F field, std::size_t rows, std::size_t cols, std::vector<Element> data)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw DimensionError("matrix data length does not match shape");
  }

  /// Small literal matrices, mostly for tests: entries are mapped through from_int.
  static Matrix from_ints(F field, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    Matrix m(std::move(field), r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw DimensionError("ragged matrix literal");
      std::size_t j = 0;
      for (auto v : row) m(i, j++) = m.field_.from_int(v);
      ++i;
    }
    return m;
  }

  static Matrix identity(F field, std::size_t n) {
    Matrix m(std::move(field), n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = m.field_.one();
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Element& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Element& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Element> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Element> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<Element> data() { return data_; }
  std::span<const Element> data() const { return data_; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [&](const Element& x) { return field_.is_zero(x); });
  }

  /// Copy of the nr x nc block whose top-left corner is (r0, c0).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
    Matrix out(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i) {
      std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>((r0 + i) * cols_ + c0), nc,
                  out.data_.begin() + static_cast<std::ptrdiff_t>(i * nc));
    }
    return out;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& src) {
    if (r0 + src.rows_ > rows_ || c0 + src.cols_ > cols_) throw DimensionError("block out of range");
    for (std::size_t i = 0; i < src.rows_; ++i) {
      std::copy_n(src.data_.begin() + static_cast<std::ptrdiff_t>(i * src.cols_), src.cols_,
                  data_.begin() + static_cast<std::ptrdiff_t>((r0 + i) * cols_ + c0));
    }
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  F field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Element> data_;
};

namespace detail {

template <ExactField F>
void require_same_field(const Matrix<F>& a, const Matrix<F>& b) {
  if (!(a.field() == b.field())) {
    throw FieldMismatch("matrices over " + a.field().spec().to_string() + " and " +
                        b.field().spec().to_string());
  }
}

template <ExactField F>
void require_same_shape(const Matrix<F>& a, const Matrix<F>& b, const char* op) {
  require_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
}

template <ExactField F, class Op>
Matrix<F> entrywise(const Matrix<F>& a, const Matrix<F>& b, const char* name, Op op) {
  require_same_shape(a, b, name);
  Matrix<F> out(a.field(), a.rows(), a.cols());
  auto x = a.data();
  auto y = b.data();
  auto z = out.data();
  for (std::size_t k = 0; k < z.size(); ++k) z[k] = op(x[k], y[k]);
  return out;
}

}  // namespace detail

template <ExactField F>
Matrix<F> mat_add(const Matrix<F>& a, const Matrix<F>& b) {
  const F& f = a.field();
  return detail::entrywise(a, b, "mat_add", [&](const auto& x, const auto& y) { return f.add(x, y); });
}

template <ExactField F>
Matrix<F> mat_sub(const Matrix<F>& a, const Matrix<F>& b) {
  const F& f = a.field();
  return detail::entrywise(a, b, "mat_sub", [&](const auto& x, const auto& y) { return f.sub(x, y); });
}

template <ExactField F>
Matrix<F> mat_neg(const Matrix<F>& a) {
  Matrix<F> out(a.field(), a.rows(), a.cols());
  auto x = a.data();
  auto z = out.data();
  for (std::size_t k = 0; k < z.size(); ++k) z[k] = a.field().neg(x[k]);
  return out;
}

template <ExactField F>
struct Quadrants {
  Matrix<F> a11, a12, a21, a22;
};

/// Split an even square matrix into four equal blocks.
template <ExactField F>
Quadrants<F> split4(const Matrix<F>& a) {
  if (!a.is_square() || a.rows() % 2 != 0) {
    throw DimensionError("split4 needs an even square matrix, got " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()));
  }
  const std::size_t h = a.rows() / 2;
  return {a.block(0, 0, h, h), a.block(0, h, h, h), a.block(h, 0, h, h), a.block(h, h, h, h)};
}

template <ExactField F>
Matrix<F> join4(const Matrix<F>& a11, const Matrix<F>& a12, const Matrix<F>& a21, const Matrix<F>& a22) {
  if (a11.rows() != a12.rows() || a21.rows() != a22.rows() || a11.cols() != a21.cols() ||
      a12.cols() != a22.cols()) {
    throw DimensionError("join4: quadrants are not conformal");
  }
  detail::require_same_field(a11, a12);
  detail::require_same_field(a11, a21);
  detail::require_same_field(a11, a22);
  Matrix<F> out(a11.field(), a11.rows() + a21.rows(), a11.cols() + a12.cols());
  out.set_block(0, 0, a11);
  out.set_block(0, a11.cols(), a12);
  out.set_block(a11.rows(), 0, a21);
  out.set_block(a11.rows(), a11.cols(), a22);
  return out;
}

inline std::size_t next_pow2(std::size_t s) {
  std::size_t n = 1;
  while (n < s) n <<= 1;
  return n;
}

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// Embed A in the upper-left corner of a zero 2^k x 2^k matrix, 2^k the
/// smallest power of two covering both dimensions.
template <ExactField F>
Matrix<F> pad_to_pow2(const Matrix<F>& a) {
  const std::size_t n = next_pow2(std::max({a.rows(), a.cols(), std::size_t{1}}));
  if (n == a.rows() && n == a.cols()) return a;
  Matrix<F> out(a.field(), n, n);
  out.set_block(0, 0, a);
  return out;
}

/// Embed A in the upper-left corner of a zero max(r,c) square matrix.
template <ExactField F>
Matrix<F> pad_to_square(const Matrix<F>& a) {
  const std::size_t n = std::max(a.rows(), a.cols());
  if (a.is_square()) return a;
  Matrix<F> out(a.field(), n, n);
  out.set_block(0, 0, a);
  return out;
}

template <ExactField F>
bool is_lower_triangular(const Matrix<F>& m) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (!m.field().is_zero(m(i, j))) return false;
  return true;
}

template <ExactField F>
bool is_upper_triangular(const Matrix<F>& m) {
  if (!m.is_square()) return false;
  for (std::size_t i = 1; i < m.rows(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (!m.field().is_zero(m(i, j))) return false;
  return true;
}

template <ExactField F>
bool has_nonzero_diagonal(const Matrix<F>& m) {
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i)
    if (m.field().is_zero(m(i, i))) return false;
  return true;
}

template <ExactField F>
bool has_unit_diagonal(const Matrix<F>& m) {
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i)
    if (!(m(i, i) == m.field().one())) return false;
  return true;
}

}  // namespace leu
