#pragma once

#include <doctest.h>

#include <string>

#include "leu/matrix.hpp"
#include "leu/text_format.hpp"

namespace leu::test {

inline const PrimeField gf7{7};
inline const PrimeField gf65521{65521};
inline const RationalField qq{};

template <ExactField F>
Matrix<F> mat(const F& f, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  return Matrix<F>::from_ints(f, rows);
}

}  // namespace leu::test

namespace doctest {
template <leu::ExactField F>
struct StringMaker<leu::Matrix<F>> {
  static String convert(const leu::Matrix<F>& m) { return ("\n" + leu::format_matrix(m)).c_str(); }
};
}  // namespace doctest
