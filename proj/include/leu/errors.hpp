#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace leu {

/// Operands belong to different fields (different moduli, or GF(p) mixed with Q).
class FieldMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Inversion of the zero element.
class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero") {}
};

/// Shape or conformality violation.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed scalar, matrix or permutation text.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix that had to be invertible is not. Carries the rank when it is known.
class SingularError : public std::runtime_error {
 public:
  explicit SingularError(std::size_t rank)
      : std::runtime_error("singular matrix, rank " + std::to_string(rank)), rank_(rank) {}
  explicit SingularError(const std::string& what) : std::runtime_error(what) {}

  std::optional<std::size_t> rank() const noexcept { return rank_; }

 private:
  std::optional<std::size_t> rank_;
};

/// An internal structural contract of the decomposition was broken.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace leu
