#pragma once

// Dirichlet characters of (Z/f)^x.
//
// (Z/f)^x is presented by CRT over prime powers: the smallest primitive root
// for odd prime powers, <-1, 5> for powers of two. A character is the vector
// of exponents e_i with chi(g_i) = zeta_{n_i}^{e_i}, n_i the order of g_i.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eiscong/exact.hpp"

namespace eiscong {

/// Largest modulus for which characters are tabulated.
inline constexpr std::uint64_t kMaxCharModulus = 1'000'000;

struct UnitGenerator {
  std::uint64_t value;
  std::uint64_t order;
};

std::vector<UnitGenerator> unit_group_generators(std::uint64_t modulus);

class DirichletChar {
 public:
  /// The trivial character modulo 1.
  DirichletChar() : DirichletChar(1, {}) {}
  static DirichletChar trivial(std::uint64_t modulus = 1);
  static DirichletChar from_exponents(std::uint64_t modulus, std::vector<std::uint64_t> exponents);
  /// "f:[e1,e2,...]", or "trivial" for the trivial character mod 1.
  static DirichletChar parse(std::string_view text);

  std::uint64_t modulus() const { return modulus_; }
  const std::vector<std::uint64_t>& exponents() const { return exponents_; }
  const std::vector<UnitGenerator>& generators() const { return generators_; }
  std::uint64_t order() const { return order_; }
  /// chi(-1).
  int parity() const { return parity_; }
  bool is_trivial() const { return order_ == 1; }

  /// j with chi(a) = zeta_order^j, or nullopt when gcd(a, modulus) > 1.
  std::optional<std::uint64_t> log_value(long long a) const;
  /// chi(a) as an angle in [0, 1): chi(a) = exp(2 pi i angle).
  std::optional<Rational> angle(long long a) const;

  std::string to_string() const;
  friend bool operator==(const DirichletChar& a, const DirichletChar& b) {
    return a.modulus_ == b.modulus_ && a.exponents_ == b.exponents_;
  }

 private:
  DirichletChar(std::uint64_t modulus, std::vector<std::uint64_t> exponents);

  std::uint64_t modulus_ = 1;
  std::vector<UnitGenerator> generators_;
  std::vector<std::uint64_t> exponents_;
  std::uint64_t order_ = 1;
  int parity_ = 1;
  std::vector<std::int64_t> log_table_;  // -1 on non-units
};

struct CharFilter {
  std::optional<int> parity;
  std::optional<std::uint64_t> exact_conductor;
};

/// All characters modulo f passing the filter, lexicographic in exponents.
std::vector<DirichletChar> enumerate_chars(std::uint64_t modulus, const CharFilter& filter = {});

/// chi(a) in Q(zeta_order), or 0 when gcd(a, modulus) > 1.
CycElem char_eval(const DirichletChar& chi, long long a);

std::uint64_t conductor(const DirichletChar& chi);
/// The primitive character inducing chi.
DirichletChar primitive(const DirichletChar& chi);
/// chi viewed modulo a multiple of its modulus.
DirichletChar induce(const DirichletChar& chi, std::uint64_t modulus);
/// Product modulo lcm of the moduli.
DirichletChar char_product(const DirichletChar& a, const DirichletChar& b);
DirichletChar char_inverse(const DirichletChar& chi);

/// omega^j modulo p. The exact character sends the smallest primitive root
/// g to zeta_{p-1}^j; `padic_value` gives omega^j(a) mod p^s.
struct TeichmullerChar {
  DirichletChar character;
  std::uint64_t p;
  long long j;
  unsigned precision;

  std::uint64_t padic_value(long long a) const;
};

TeichmullerChar teichmuller_char(std::uint64_t p, long long j, unsigned precision);

}  // namespace eiscong
