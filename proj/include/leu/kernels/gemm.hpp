#pragma once

// Row-block matrix product kernels. Every output row is produced by exactly
// one call to gemm_rows, so the serial and OpenMP drivers give bitwise
// identical results.

#include <cstdint>
#include <limits>
#include <type_traits>
#include <vector>

#include <omp.h>

#include "leu/matrix.hpp"

namespace leu {

enum class Execution { Serial, Parallel };

namespace kernels {

/// Rows below this count are not worth distributing.
inline constexpr std::size_t kParallelMinRows = 32;

namespace detail {

// GF(p) with p < 2^32: accumulate unreduced 64-bit products, reducing only
// when the next batch could overflow.
inline void gemm_rows_small_prime(const Matrix<PrimeField>& a, const Matrix<PrimeField>& b,
                                  Matrix<PrimeField>& c, std::size_t row_begin, std::size_t row_end) {
  const std::uint64_t p = a.field().modulus();
  const std::uint64_t max_prod = (p - 1) * (p - 1);
  // A reduced slot holds at most p - 1, leaving room for `batch` more products.
  const auto batch = static_cast<std::size_t>((std::numeric_limits<std::uint64_t>::max() - (p - 1)) / max_prod);
  const std::size_t inner = a.cols();
  const std::size_t width = b.cols();
  std::vector<std::uint64_t> acc(width);
  for (std::size_t i = row_begin; i < row_end; ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    std::size_t pending = 0;
    for (std::size_t k = 0; k < inner; ++k) {
      const std::uint64_t aik = a(i, k);
      if (aik == 0) continue;
      if (pending == batch) {
        for (auto& x : acc) x %= p;
        pending = 0;
      }
      auto brow = b.row(k);
      for (std::size_t j = 0; j < width; ++j) acc[j] += aik * brow[j];
      ++pending;
    }
    auto crow = c.row(i);
    for (std::size_t j = 0; j < width; ++j) crow[j] = acc[j] % p;
  }
}

inline void gemm_rows_rational(const Matrix<RationalField>& a, const Matrix<RationalField>& b,
                               Matrix<RationalField>& c, std::size_t row_begin, std::size_t row_end) {
  mpq_class term;
  for (std::size_t i = row_begin; i < row_end; ++i) {
    auto crow = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const mpq_class& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (sgn(brow[j]) == 0) continue;
        mpq_mul(term.get_mpq_t(), aik.get_mpq_t(), brow[j].get_mpq_t());
        mpq_add(crow[j].get_mpq_t(), crow[j].get_mpq_t(), term.get_mpq_t());
      }
    }
  }
}

template <ExactField F>
void gemm_rows_generic(const Matrix<F>& a, const Matrix<F>& b, Matrix<F>& c, std::size_t row_begin,
                       std::size_t row_end) {
  const F& f = a.field();
  for (std::size_t i = row_begin; i < row_end; ++i) {
    auto crow = c.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto& aik = a(i, k);
      if (f.is_zero(aik)) continue;
      auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) crow[j] = f.add(crow[j], f.mul(aik, brow[j]));
    }
  }
}

}  // namespace detail

/// c[row_begin:row_end, :] = a[row_begin:row_end, :] * b, c zero on entry.
template <ExactField F>
void gemm_rows(const Matrix<F>& a, const Matrix<F>& b, Matrix<F>& c, std::size_t row_begin,
               std::size_t row_end) {
  if constexpr (std::is_same_v<F, PrimeField>) {
    if (a.field().small_modulus()) {
      detail::gemm_rows_small_prime(a, b, c, row_begin, row_end);
      return;
    }
    detail::gemm_rows_generic(a, b, c, row_begin, row_end);
  } else if constexpr (std::is_same_v<F, RationalField>) {
    detail::gemm_rows_rational(a, b, c, row_begin, row_end);
  } else {
    detail::gemm_rows_generic(a, b, c, row_begin, row_end);
  }
}

/// Classical product. Parallel execution splits output rows across threads:
/// a worksharing loop at top level, a taskloop when already inside a region.
template <ExactField F>
Matrix<F> gemm(const Matrix<F>& a, const Matrix<F>& b, Execution exec) {
  Matrix<F> c(a.field(), a.rows(), b.cols());
  const std::size_t m = a.rows();
  if (exec == Execution::Serial || m < kParallelMinRows) {
    gemm_rows(a, b, c, 0, m);
    return c;
  }
  const auto rows = static_cast<std::int64_t>(m);
  if (omp_in_parallel()) {
#pragma omp taskloop grainsize(4) shared(a, b, c)
    for (std::int64_t i = 0; i < rows; ++i) {
      gemm_rows(a, b, c, static_cast<std::size_t>(i), static_cast<std::size_t>(i) + 1);
    }
  } else {
#pragma omp parallel for schedule(static) shared(a, b, c)
    for (std::int64_t i = 0; i < rows; ++i) {
      gemm_rows(a, b, c, static_cast<std::size_t>(i), static_cast<std::size_t>(i) + 1);
    }
  }
  return c;
}

}  // namespace kernels
}  // namespace leu
