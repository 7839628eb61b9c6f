#pragma once

// Bernoulli numbers, generalized Bernoulli numbers and L-values at
// non-positive integers, the congruence bound eta, and Kummer-type checks.

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "eiscong/characters.hpp"
#include "eiscong/exact.hpp"
#include "eiscong/padic.hpp"

namespace eiscong {

/// B_n with B_1 = -1/2. Memoized; safe to call concurrently.
Rational bernoulli(unsigned n);
/// B_n(x) = sum_j C(n, j) B_j x^(n - j).
Rational bernoulli_polynomial(unsigned n, const Rational& x);

/// B_{n,chi} = f^(n-1) sum_{a=1}^{f} chi(a) B_n(a/f), computed at the
/// conductor f of chi (imprimitive input is reduced first).
CycElem gen_bernoulli(unsigned n, const DirichletChar& chi);
/// L(chi, 1 - n) = -B_{n,chi} / n, n >= 1.
CycElem l_value_nonpositive(const DirichletChar& chi, unsigned n);

struct EtaFactor {
  std::string description;
  CycElem value;
  Valuation valuation;
};

/// eta(psi, k) = B_k(psi) * prod_{l in Sigma - {p}} (1 - psi(l) l^k), with
/// psi evaluated as a primitive character (not zeroed at l not dividing its
/// conductor).
struct EtaValue {
  CycElem value;
  std::uint64_t p = 0;
  Valuation valuation;
  std::vector<EtaFactor> factors;
  std::vector<std::string> warnings;
};

EtaValue eta(const DirichletChar& psi, unsigned k, const std::set<std::uint64_t>& sigma, const PadicContext& ctx);

/// B_{1, omega^j} mod p^s, from (1/p) sum_{a=1}^{p-1} omega^j(a) a with
/// omega at precision s + 1. Rejects j = 0 and j = -1 mod (p - 1).
std::uint64_t b1_omega_mod(long long j, std::uint64_t p, unsigned s);
/// v_p(B_{1, omega^j}) capped at `cap`; -1 when j = -1 mod (p - 1).
long b1_omega_valuation(long long j, std::uint64_t p, unsigned cap = 1);

struct KummerReport {
  std::uint64_t p;
  unsigned k;
  std::uint64_t lhs;  // B_{1,omega^(k-1)} mod p
  std::uint64_t rhs;  // B_k / k mod p
  bool congruent;
};

KummerReport kummer_check(std::uint64_t p, unsigned k);

/// Rational number reduced mod m (denominator must be a unit).
std::uint64_t rational_mod(const Rational& x, std::uint64_t m);

}  // namespace eiscong
