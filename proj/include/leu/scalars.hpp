#pragma once

// Exact scalar fields. Every matrix type in the library is parameterised by a
// field object that owns the arithmetic; elements are plain values.
//
//   PrimeField     GF(p) for a prime p that fits in 64 bits, elements in [0, p)
//   RationalField  Q with GMP arbitrary precision, elements always canonical

#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

#include "leu/errors.hpp"

namespace leu {

enum class FieldKind { PrimeField, Rational };

/// Runtime description of a field, as it appears in matrix files.
struct FieldSpec {
  FieldKind kind = FieldKind::Rational;
  std::uint64_t modulus = 0;  // nonzero iff kind == PrimeField

  static FieldSpec prime(std::uint64_t p);
  static FieldSpec rational() { return {}; }

  /// `gfp <p>` or `rational`
  std::string to_string() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime_u64(std::uint64_t n);

class PrimeField {
 public:
  using Element = std::uint64_t;

  /// Throws std::invalid_argument unless p is prime.
  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }
  FieldSpec spec() const { return FieldSpec{FieldKind::PrimeField, p_}; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  Element from_int(std::int64_t v) const;
  Element from_rational(const mpq_class& q) const;

  Element add(Element a, Element b) const { return a >= p_ - b ? a - (p_ - b) : a + b; }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + (p_ - b); }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const {
    if (small_) return (a * b) % p_;
    return static_cast<Element>((static_cast<unsigned __int128>(a) * b) % p_);
  }
  Element inv(Element a) const;

  bool is_zero(Element a) const { return a == 0; }
  bool is_one(Element a) const { return a == 1; }

  /// Strict decimal residue in [0, p).
  Element parse(std::string_view text) const;
  std::string format(Element a) const { return std::to_string(a); }

  /// True when p < 2^32, so products of two residues fit in 64 bits.
  bool small_modulus() const { return small_; }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  std::uint64_t p_;
  bool small_;
};

class RationalField {
 public:
  using Element = mpq_class;

  FieldSpec spec() const { return FieldSpec::rational(); }

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  Element from_int(std::int64_t v) const { return Element(static_cast<long>(v)); }
  Element from_rational(const mpq_class& q) const { return q; }

  Element add(const Element& a, const Element& b) const { return Element(a + b); }
  Element sub(const Element& a, const Element& b) const { return Element(a - b); }
  Element neg(const Element& a) const { return Element(-a); }
  Element mul(const Element& a, const Element& b) const { return Element(a * b); }
  Element inv(const Element& a) const;

  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool is_one(const Element& a) const { return a == 1; }

  /// `n` or `n/d` with an optional leading `-`; d must be positive.
  Element parse(std::string_view text) const;
  std::string format(const Element& a) const { return a.get_str(); }

  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

/// Parse `[-]n[/d]` into a canonical rational; shared by both fields' text paths.
mpq_class parse_rational(std::string_view text);

template <class F>
concept ExactField =
    std::copy_constructible<F> && std::equality_comparable<F> &&
    requires(const F& f, const typename F::Element& a, const typename F::Element& b,
             std::string_view text) {
      typename F::Element;
      { f.spec() } -> std::same_as<FieldSpec>;
      { f.zero() } -> std::same_as<typename F::Element>;
      { f.one() } -> std::same_as<typename F::Element>;
      { f.from_int(std::int64_t{}) } -> std::same_as<typename F::Element>;
      { f.add(a, b) } -> std::same_as<typename F::Element>;
      { f.sub(a, b) } -> std::same_as<typename F::Element>;
      { f.neg(a) } -> std::same_as<typename F::Element>;
      { f.mul(a, b) } -> std::same_as<typename F::Element>;
      { f.inv(a) } -> std::same_as<typename F::Element>;
      { f.is_zero(a) } -> std::same_as<bool>;
      { f.parse(text) } -> std::same_as<typename F::Element>;
      { f.format(a) } -> std::same_as<std::string>;
    };

static_assert(ExactField<PrimeField>);
static_assert(ExactField<RationalField>);

/// A field element bundled with its field. Binary operations on scalars from
/// different fields throw FieldMismatch. The matrix kernels work on raw
/// elements; this type is the checked surface for single values.
template <ExactField F>
class Scalar {
 public:
  using Element = typename F::Element;

  Scalar(F field, Element value) : field_(std::move(field)), value_(std::move(value)) {}

  static Scalar parse(F field, std::string_view text) {
    auto v = field.parse(text);
    return Scalar(std::move(field), std::move(v));
  }

  const F& field() const { return field_; }
  const Element& value() const { return value_; }
  bool is_zero() const { return field_.is_zero(value_); }

  Scalar inv() const { return Scalar(field_, field_.inv(value_)); }
  Scalar operator-() const { return Scalar(field_, field_.neg(value_)); }

  friend Scalar operator+(const Scalar& x, const Scalar& y) {
    x.require_same_field(y);
    return Scalar(x.field_, x.field_.add(x.value_, y.value_));
  }
  friend Scalar operator-(const Scalar& x, const Scalar& y) {
    x.require_same_field(y);
    return Scalar(x.field_, x.field_.sub(x.value_, y.value_));
  }
  friend Scalar operator*(const Scalar& x, const Scalar& y) {
    x.require_same_field(y);
    return Scalar(x.field_, x.field_.mul(x.value_, y.value_));
  }

  friend bool operator==(const Scalar& x, const Scalar& y) {
    return x.field_ == y.field_ && x.value_ == y.value_;
  }

  std::string to_string() const { return field_.format(value_); }

 private:
  void require_same_field(const Scalar& other) const {
    if (!(field_ == other.field_)) {
      throw FieldMismatch("scalar operands from " + field_.spec().to_string() + " and " +
                          other.field_.spec().to_string());
    }
  }

  F field_;
  Element value_;
};

}  // namespace leu
