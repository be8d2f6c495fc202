#include <doctest.h>

#include "helpers.hpp"
#include "leu/random.hpp"
#include "leu/triangular.hpp"
#include "leu_oracle/gauss.hpp"

using namespace leu;
using leu::test::gf65521;
using leu::test::gf7;
using leu::test::mat;
using leu::test::qq;

TEST_CASE("lower triangular inverse") {
  MulCounter c;
  CHECK(invert_lower_triangular(Matrix<RationalField>::identity(qq, 3), c) == Matrix<RationalField>::identity(qq, 3));

  // 5x = 1 gives x = 3; 2*3 + 4y = 0 gives y = 2 (mod 7).
  const auto l = mat(gf7, {{5, 0}, {2, 4}});
  const auto inv = invert_lower_triangular(l, c);
  CHECK(inv == mat(gf7, {{3, 0}, {2, 2}}));
  CHECK(oracle::naive_product(l, inv) == Matrix<PrimeField>::identity(gf7, 2));

  CHECK_THROWS_AS(invert_lower_triangular(mat(qq, {{1, 0}, {0, 0}}), c), SingularError);
  CHECK_THROWS_AS(invert_lower_triangular(mat(qq, {{1, 1}, {0, 1}}), c), std::invalid_argument);
}

TEST_CASE("upper unitriangular inverse") {
  MulCounter c;
  CHECK(invert_upper_unitriangular(Matrix<RationalField>::identity(qq, 4), c) ==
        Matrix<RationalField>::identity(qq, 4));
  CHECK(invert_upper_unitriangular(mat(qq, {{1, 2}, {0, 1}}), c) == mat(qq, {{1, -2}, {0, 1}}));
  CHECK_THROWS_AS(invert_upper_unitriangular(mat(qq, {{2, 0}, {0, 1}}), c), std::invalid_argument);
  CHECK_THROWS_AS(invert_upper_unitriangular(mat(qq, {{1, 0}, {1, 1}}), c), std::invalid_argument);
}

TEST_CASE("random triangular inverses are exact") {
  SplitMix64 rng(21);
  for (std::size_t n : {1, 2, 3, 5, 8, 13, 16, 31}) {
    MulCounter c;
    const auto u = random_upper_unitriangular(qq, n, rng);
    const auto ui = invert_upper_unitriangular(u, c);
    CHECK(oracle::naive_product(u, ui) == Matrix<RationalField>::identity(qq, n));
    CHECK(is_upper_triangular(ui));
    CHECK(has_unit_diagonal(ui));

    const auto l = random_lower_invertible(gf65521, n, rng);
    const auto li = invert_lower_triangular(l, c, MulPolicy{MulMode::Strassen, 1, Execution::Parallel});
    CHECK(oracle::naive_product(l, li) == Matrix<PrimeField>::identity(gf65521, n));
    CHECK(is_lower_triangular(li));
  }
}
