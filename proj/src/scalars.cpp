#include "leu/scalars.hpp"

#include <charconv>
#include <stdexcept>

namespace leu {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  constexpr std::uint64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto q : small) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are a deterministic witness set below 3.3e24.
  for (auto a : small) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (!is_prime_u64(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
  return FieldSpec{FieldKind::PrimeField, p};
}

std::string FieldSpec::to_string() const {
  if (kind == FieldKind::Rational) return "rational";
  return "gfp " + std::to_string(modulus);
}

PrimeField::PrimeField(std::uint64_t p) : p_(p), small_(p < (std::uint64_t{1} << 32)) {
  if (!is_prime_u64(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
}

PrimeField::Element PrimeField::from_int(std::int64_t v) const {
  if (v >= 0) return static_cast<std::uint64_t>(v) % p_;
  // -(v+1) avoids overflow at INT64_MIN
  std::uint64_t mag = static_cast<std::uint64_t>(-(v + 1)) + 1;
  return neg(mag % p_);
}

PrimeField::Element PrimeField::from_rational(const mpq_class& q) const {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  const mpz_class p(static_cast<unsigned long>(p_));
  mpz_class num = q.get_num() % p;
  if (num < 0) num += p;
  const mpz_class den = q.get_den() % p;
  if (den == 0) throw DivisionByZero();
  return mul(num.get_ui(), inv(den.get_ui()));
}

PrimeField::Element PrimeField::inv(Element a) const {
  if (a == 0) throw DivisionByZero();
  // extended Euclid on (a, p); p prime so gcd is 1
  __int128 r0 = p_, r1 = a, t0 = 0, t1 = 1;
  while (r1 != 0) {
    __int128 q = r0 / r1;
    __int128 tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (t0 < 0) t0 += p_;
  return static_cast<Element>(t0);
}

PrimeField::Element PrimeField::parse(std::string_view text) const {
  if (!all_digits(text)) throw ParseError("invalid GF(p) residue '" + std::string(text) + "'");
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || v >= p_) {
    throw ParseError("residue '" + std::string(text) + "' out of range for GF(" + std::to_string(p_) + ")");
  }
  return v;
}

RationalField::Element RationalField::inv(const Element& a) const {
  if (sgn(a) == 0) throw DivisionByZero();
  Element r;
  mpq_inv(r.get_mpq_t(), a.get_mpq_t());
  return r;
}

RationalField::Element RationalField::parse(std::string_view text) const { return parse_rational(text); }

mpq_class parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw ParseError("invalid rational '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  if (negative) n = -n;
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

}  // namespace leu
