#pragma once

// Primes above p in Q(zeta_f) for p not dividing f, and valuations there.
//
// The completion of Z[zeta_f] at such a prime is the unramified extension
// Z_p[t]/(g(t)) where g is a Hensel lift of an irreducible factor of the
// f-th cyclotomic polynomial mod p. Powers of t form a Z_p-basis and p is a
// uniformizer, so the valuation of sum c_i t^i is min v_p(c_i).

#include <cstdint>
#include <vector>

#include "eiscong/exact.hpp"

namespace eiscong {

/// Polynomial with residue coefficients, ascending order.
using ResiduePoly = std::vector<std::uint64_t>;

/// Largest modulus p^s the residue arithmetic accepts.
inline constexpr std::uint64_t kMaxResidueModulus = std::uint64_t{1} << 62;

struct PadicContext {
  std::uint64_t p = 0;
  unsigned conductor = 1;
  unsigned precision = 1;
  std::uint64_t modulus = 0;       // p^precision
  ResiduePoly prime_factor;        // monic irreducible factor mod p
  ResiduePoly lifted_factor;       // its Hensel lift mod p^precision
  unsigned residue_degree = 1;
  unsigned ramification = 1;
};

/// p^s, rejecting values beyond kMaxResidueModulus.
std::uint64_t prime_power(std::uint64_t p, unsigned s);

/// Deterministic choice: the monic factor of Phi_f mod p that is smallest
/// comparing coefficients (c_0, c_1, ...) lexicographically.
PadicContext padic_context(std::uint64_t p, unsigned conductor, unsigned precision);

/// All monic irreducible factors of Phi_f mod p, sorted.
std::vector<ResiduePoly> cyclotomic_factors_mod_p(std::uint64_t p, unsigned conductor);
/// Every factor Hensel-lifted to mod p^s (same order as the mod-p list).
std::vector<ResiduePoly> hensel_lifted_factors(std::uint64_t p, unsigned conductor, unsigned precision);

/// Valuation at the context's prime. x must live in a subfield of
/// Q(zeta_ctx.conductor). Throws IndeterminateValuation when the image
/// vanishes to the available precision.
Valuation valp_cyc(const CycElem& x, const PadicContext& ctx);

/// Whether valp_cyc(x) >= t; needs only precision t + v_p(denominator).
bool has_valuation_at_least(const CycElem& x, long t, const PadicContext& ctx);

/// Image of a p-integral x in (Z/p^s)[t]/(g); coefficients ascending.
ResiduePoly padic_image(const CycElem& x, const PadicContext& ctx);

/// Teichmuller lift: the (p-1)-th root of unity congruent to a, mod p^s.
std::uint64_t teichmuller(long long a, std::uint64_t p, unsigned s);

}  // namespace eiscong
