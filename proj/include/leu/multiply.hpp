#pragma once

#include <array>
#include <cstddef>
#include <exception>
#include <optional>
#include <string>

#include "leu/kernels/gemm.hpp"
#include "leu/matrix.hpp"
#include "leu/parallel.hpp"

namespace leu {

enum class MulMode { Classical, Strassen };

/// How dense products are computed. Strassen applies only to square
/// power-of-two operands; anything else falls back to the classical kernel.
struct MulPolicy {
  MulMode mode = MulMode::Classical;
  std::size_t cutoff = 32;
  Execution exec = Execution::Serial;
};

/// Strassen levels at or above this size spawn their seven products as tasks.
inline constexpr std::size_t kStrassenTaskMin = 64;

template <ExactField F>
Matrix<F> mat_mul_classical(const Matrix<F>& a, const Matrix<F>& b, MulCounter& counter,
                            Execution exec = Execution::Serial) {
  detail::require_same_field(a, b);
  if (a.cols() != b.rows()) {
    throw DimensionError("mat_mul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
                         std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  counter.scalar_mults += static_cast<std::uint64_t>(a.rows()) * a.cols() * b.cols();
  return kernels::gemm(a, b, exec);
}

namespace detail {

// 2x2 Strassen on scalars, used when recursing all the way to 1x1 blocks.
template <ExactField F>
Matrix<F> strassen_2x2(const Matrix<F>& a, const Matrix<F>& b, MulCounter& counter) {
  const F& f = a.field();
  const auto m1 = f.mul(f.add(a(0, 0), a(1, 1)), f.add(b(0, 0), b(1, 1)));
  const auto m2 = f.mul(f.add(a(1, 0), a(1, 1)), b(0, 0));
  const auto m3 = f.mul(a(0, 0), f.sub(b(0, 1), b(1, 1)));
  const auto m4 = f.mul(a(1, 1), f.sub(b(1, 0), b(0, 0)));
  const auto m5 = f.mul(f.add(a(0, 0), a(0, 1)), b(1, 1));
  const auto m6 = f.mul(f.sub(a(1, 0), a(0, 0)), f.add(b(0, 0), b(0, 1)));
  const auto m7 = f.mul(f.sub(a(0, 1), a(1, 1)), f.add(b(1, 0), b(1, 1)));
  counter.scalar_mults += 7;
  Matrix<F> c(f, 2, 2);
  c(0, 0) = f.add(f.sub(f.add(m1, m4), m5), m7);
  c(0, 1) = f.add(m3, m5);
  c(1, 0) = f.add(m2, m4);
  c(1, 1) = f.add(f.add(f.sub(m1, m2), m3), m6);
  return c;
}

template <ExactField F>
Matrix<F> strassen_rec(const Matrix<F>& a, const Matrix<F>& b, std::size_t cutoff, MulCounter& counter,
                       Execution exec) {
  const std::size_t n = a.rows();
  if (n <= cutoff) return mat_mul_classical(a, b, counter, exec);
  if (n == 2) return strassen_2x2(a, b, counter);

  const auto [a11, a12, a21, a22] = split4(a);
  const auto [b11, b12, b21, b22] = split4(b);

  // operand pairs of the seven products
  const std::array<Matrix<F>, 7> lhs = {mat_add(a11, a22), mat_add(a21, a22), a11, a22,
                                        mat_add(a11, a12), mat_sub(a21, a11), mat_sub(a12, a22)};
  const std::array<Matrix<F>, 7> rhs = {mat_add(b11, b22), b11, mat_sub(b12, b22), mat_sub(b21, b11),
                                        b22, mat_add(b11, b12), mat_add(b21, b22)};

  std::array<std::optional<Matrix<F>>, 7> m;
  std::array<MulCounter, 7> counts{};
  if (exec == Execution::Parallel && n >= kStrassenTaskMin) {
    std::exception_ptr error;
    parallel::with_task_region([&] {
      for (std::size_t k = 0; k < 7; ++k) {
#pragma omp task shared(m, counts, lhs, rhs, error) firstprivate(k)
        {
          try {
            m[k] = strassen_rec(lhs[k], rhs[k], cutoff, counts[k], exec);
          } catch (...) {
#pragma omp critical(leu_strassen_error)
            error = std::current_exception();
          }
        }
      }
#pragma omp taskwait
    });
    if (error) std::rethrow_exception(error);
  } else {
    for (std::size_t k = 0; k < 7; ++k) m[k] = strassen_rec(lhs[k], rhs[k], cutoff, counts[k], exec);
  }
  for (const auto& c : counts) counter += c;

  auto c11 = mat_add(mat_sub(mat_add(*m[0], *m[3]), *m[4]), *m[6]);
  auto c12 = mat_add(*m[2], *m[4]);
  auto c21 = mat_add(*m[1], *m[3]);
  auto c22 = mat_add(mat_add(mat_sub(*m[0], *m[1]), *m[2]), *m[5]);
  return join4(c11, c12, c21, c22);
}

}  // namespace detail

/// Seven-product Strassen recursion down to `cutoff`, classical below it.
/// Operands must be square, of equal power-of-two size.
template <ExactField F>
Matrix<F> mat_mul_strassen(const Matrix<F>& a, const Matrix<F>& b, std::size_t cutoff, MulCounter& counter,
                           Execution exec = Execution::Serial) {
  detail::require_same_field(a, b);
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows() || !is_pow2(a.rows())) {
    throw DimensionError("mat_mul_strassen needs equal square power-of-two operands");
  }
  if (cutoff < 1) throw std::invalid_argument("strassen cutoff must be at least 1");
  return detail::strassen_rec(a, b, cutoff, counter, exec);
}

/// Dense product under a policy.
template <ExactField F>
Matrix<F> multiply(const Matrix<F>& a, const Matrix<F>& b, MulCounter& counter, const MulPolicy& policy) {
  if (policy.mode == MulMode::Strassen && a.is_square() && b.is_square() && a.rows() == b.rows() &&
      is_pow2(a.rows())) {
    return mat_mul_strassen(a, b, policy.cutoff, counter, policy.exec);
  }
  return mat_mul_classical(a, b, counter, policy.exec);
}

}  // namespace leu
