#pragma once

// Exact arithmetic: rationals, valuations, small-integer number theory and
// the cyclotomic fields Q(zeta_f).

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace eiscong {

using Integer = mpz_class;
using Rational = mpq_class;

/// Largest conductor accepted for cyclotomic fields.
inline constexpr unsigned kMaxConductor = 512;

Rational make_rational(const Integer& num, const Integer& den);
Rational parse_rational(const std::string& text);
std::string to_string(const Integer& x);
std::string to_string(const Rational& x);
Integer pow(const Integer& base, unsigned long exp);
Rational rational_pow(const Rational& base, long exp);

/// An integer valuation, or +infinity (the valuation of zero).
class Valuation {
 public:
  constexpr Valuation() = default;
  constexpr explicit Valuation(long v) : value_(v) {}
  static constexpr Valuation infinity() { return Valuation{}; }

  constexpr bool is_infinite() const { return !value_.has_value(); }
  constexpr bool is_finite() const { return value_.has_value(); }
  /// Finite value; throws std::bad_optional_access on infinity.
  long value() const { return value_.value(); }

  friend Valuation operator+(Valuation a, Valuation b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return Valuation(*a.value_ + *b.value_);
  }
  friend bool operator==(const Valuation&, const Valuation&) = default;
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (a.is_infinite()) return b.is_infinite() ? std::strong_ordering::equal : std::strong_ordering::greater;
    if (b.is_infinite()) return std::strong_ordering::less;
    return *a.value_ <=> *b.value_;
  }

  std::string to_string() const { return value_ ? std::to_string(*value_) : "inf"; }

 private:
  std::optional<long> value_;
};

/// p-adic valuation of an integer (infinity for 0).
Valuation valp(const Integer& x, unsigned long p);
/// p-adic valuation of a rational: x = p^t * unit.
Valuation valp_rational(const Rational& x, unsigned long p);

// ---- small-integer number theory -------------------------------------------

bool is_prime(std::uint64_t n);
std::uint64_t gcd_u(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm_u(std::uint64_t a, std::uint64_t b);
/// Prime factorization as (prime, exponent) pairs in increasing order.
std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
/// Multiplicative order of a modulo m; requires gcd(a, m) = 1.
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m);
/// Smallest primitive root modulo an odd prime power (or 2, 4).
std::uint64_t smallest_primitive_root(std::uint64_t m);
/// Canonical residue of a (possibly negative) integer modulo m.
std::uint64_t reduce_mod(long long a, std::uint64_t m);
std::uint64_t reduce_mod(const Integer& a, std::uint64_t m);

// ---- cyclotomic fields ------------------------------------------------------

/// Integer coefficients of the f-th cyclotomic polynomial, ascending, monic.
const std::vector<Integer>& cyclotomic_polynomial(unsigned f);

/// Element of Q(zeta_f), stored as the reduced representative of degree
/// < phi(f) modulo the f-th cyclotomic polynomial.
class CycElem {
 public:
  /// Zero in Q = Q(zeta_1).
  CycElem();
  explicit CycElem(const Rational& c, unsigned conductor = 1);
  CycElem(long c) : CycElem(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  /// Reduce an arbitrary-degree polynomial in zeta_f.
  static CycElem from_polynomial(unsigned conductor, std::vector<Rational> poly);
  /// zeta_f^j for any integer j.
  static CycElem zeta_power(unsigned conductor, long j);

  unsigned conductor() const { return conductor_; }
  std::span<const Rational> coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;
  /// The constant coefficient; meaningful when is_rational().
  const Rational& constant() const { return coeffs_.front(); }

  /// Image under the canonical embedding Q(zeta_f) -> Q(zeta_g), f | g.
  CycElem lift(unsigned conductor) const;
  /// Galois automorphism zeta -> zeta^a, gcd(a, f) = 1.
  CycElem galois(long a) const;
  Rational norm() const;
  CycElem inverse() const;
  /// Least common denominator of the coefficients.
  Integer denominator() const;

  CycElem operator-() const;
  CycElem& operator+=(const CycElem& o);
  CycElem& operator-=(const CycElem& o);
  CycElem& operator*=(const CycElem& o);
  CycElem& operator/=(const CycElem& o);
  friend CycElem operator+(CycElem a, const CycElem& b) { return a += b; }
  friend CycElem operator-(CycElem a, const CycElem& b) { return a -= b; }
  friend CycElem operator*(CycElem a, const CycElem& b) { return a *= b; }
  friend CycElem operator/(CycElem a, const CycElem& b) { return a /= b; }
  CycElem scaled(const Rational& c) const;

  /// Equality as field elements (after lifting to a common conductor).
  friend bool operator==(const CycElem& a, const CycElem& b);

  /// "c0 + c1*z + ..." with z = zeta_f; plain rational text when rational.
  std::string to_string() const;

 private:
  CycElem(unsigned conductor, std::vector<Rational> coeffs, bool reduced);
  static unsigned common_conductor(const CycElem& a, const CycElem& b);

  unsigned conductor_ = 1;
  std::vector<Rational> coeffs_;
};

enum class CycOp { add, mul };

/// Sum or product of two elements of the same field; a conductor mismatch
/// is a ParameterError (lift explicitly first).
CycElem cyc_arith(const CycElem& a, const CycElem& b, CycOp op);

}  // namespace eiscong
