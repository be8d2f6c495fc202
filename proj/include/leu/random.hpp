#pragma once

// Seeded test-matrix generation. The generator is SplitMix64, so a seed gives
// the same matrices on every platform:
//
//   state += 0x9e3779b97f4a7c15
//   z = state
//   z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//   z = (z ^ (z >> 27)) * 0x94d049bb133111eb
//   return z ^ (z >> 31)
//
// A GF(p) entry is next() % p. A rational entry is (next() % 19 - 9) / (1 + next() % 3).

#include <cstdint>
#include <type_traits>

#include "leu/kernels/gemm.hpp"
#include "leu/matrix.hpp"

namespace leu {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform-ish integer in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

template <ExactField F>
typename F::Element random_element(const F& field, SplitMix64& rng) {
  if constexpr (std::is_same_v<F, PrimeField>) {
    return rng.next() % field.modulus();
  } else {
    const auto num = static_cast<std::int64_t>(rng.below(19)) - 9;
    const auto den = static_cast<std::int64_t>(rng.below(3)) + 1;
    return field.mul(field.from_int(num), field.inv(field.from_int(den)));
  }
}

template <ExactField F>
Matrix<F> random_matrix(const F& field, std::size_t rows, std::size_t cols, SplitMix64& rng) {
  Matrix<F> m(field, rows, cols);
  for (auto& x : m.data()) x = random_element(field, rng);
  return m;
}

/// Product of random n x r and r x n factors: rank at most r, and equal to r
/// with high probability over large fields.
template <ExactField F>
Matrix<F> random_rank_matrix(const F& field, std::size_t n, std::size_t r, SplitMix64& rng) {
  if (r == 0) return Matrix<F>(field, n, n);
  const auto left = random_matrix(field, n, r, rng);
  const auto right = random_matrix(field, r, n, rng);
  return kernels::gemm(left, right, Execution::Serial);
}

/// Random upper triangular matrix with ones on the diagonal.
template <ExactField F>
Matrix<F> random_upper_unitriangular(const F& field, std::size_t n, SplitMix64& rng) {
  Matrix<F> m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = field.one();
    for (std::size_t j = i + 1; j < n; ++j) m(i, j) = random_element(field, rng);
  }
  return m;
}

/// Random lower triangular matrix with a nonzero diagonal.
template <ExactField F>
Matrix<F> random_lower_invertible(const F& field, std::size_t n, SplitMix64& rng) {
  Matrix<F> m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    do {
      m(i, i) = random_element(field, rng);
    } while (field.is_zero(m(i, i)));
    for (std::size_t j = 0; j < i; ++j) m(i, j) = random_element(field, rng);
  }
  return m;
}

}  // namespace leu
