#include "eiscong/lfunc.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>

#include "eiscong/error.hpp"

namespace eiscong {

namespace {

Integer binomial(unsigned n, unsigned k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// Akiyama-Tanigawa; yields B_1 = +1/2, fixed up by the caller.
Rational akiyama_tanigawa(unsigned n) {
  std::vector<Rational> a(n + 1);
  for (unsigned m = 0; m <= n; ++m) {
    a[m] = Rational(1, m + 1);
    for (unsigned j = m; j >= 1; --j) a[j - 1] = Rational(j) * (a[j - 1] - a[j]);
  }
  return a[0];
}

}  // namespace

Rational bernoulli(unsigned n) {
  if (n == 1) return Rational(-1, 2);
  if (n % 2 == 1) return Rational(0);
  static std::shared_mutex mu;
  static std::map<unsigned, Rational> memo;
  {
    std::shared_lock lock(mu);
    if (auto it = memo.find(n); it != memo.end()) return it->second;
  }
  Rational b = akiyama_tanigawa(n);
  std::unique_lock lock(mu);
  return memo.try_emplace(n, std::move(b)).first->second;
}

Rational bernoulli_polynomial(unsigned n, const Rational& x) {
  // Horner in x over the coefficients C(n, j) B_j of x^(n - j).
  Rational acc(0);
  for (unsigned j = 0; j <= n; ++j) acc = acc * x + Rational(binomial(n, j)) * bernoulli(j);
  return acc;
}

CycElem gen_bernoulli(unsigned n, const DirichletChar& chi) {
  if (n == 0) throw ParameterError("gen_bernoulli: n must be positive");
  const DirichletChar prim = primitive(chi);
  const std::uint64_t f = prim.modulus();
  const auto order = static_cast<unsigned>(prim.order());
  std::vector<Rational> by_log(order);
  for (std::uint64_t a = 1; a <= f; ++a) {
    const auto j = prim.log_value(static_cast<long long>(a));
    if (!j) continue;
    by_log[*j] += bernoulli_polynomial(n, make_rational(Integer(a), Integer(f)));
  }
  const Rational scale(pow(Integer(f), n - 1));
  for (auto& c : by_log) c *= scale;
  return CycElem::from_polynomial(order, std::move(by_log));
}

CycElem l_value_nonpositive(const DirichletChar& chi, unsigned n) {
  return gen_bernoulli(n, chi).scaled(Rational(-1, n));
}

EtaValue eta(const DirichletChar& psi, unsigned k, const std::set<std::uint64_t>& sigma, const PadicContext& ctx) {
  if (k < 2) throw ParameterError("eta: weight must be >= 2");
  if (!sigma.contains(ctx.p)) throw ParameterError("eta: p=" + std::to_string(ctx.p) + " must belong to Sigma");
  for (std::uint64_t l : sigma) {
    if (!is_prime(l)) throw ParameterError("eta: Sigma entry " + std::to_string(l) + " is not prime");
  }
  const DirichletChar prim = primitive(psi);
  if (ctx.conductor % prim.order() != 0) {
    throw ParameterError("eta: p-adic context conductor must be a multiple of the character order " +
                         std::to_string(prim.order()));
  }
  EtaValue out;
  out.p = ctx.p;
  if (k == 2 && prim.is_trivial()) {
    out.warnings.push_back("k=2 with trivial psi lies outside the congruence-module bound's hypotheses");
  }
  // The Euler factor at p must be a unit for the upper bound to apply.
  const CycElem euler_p = CycElem(1) - char_eval(prim, static_cast<long long>(ctx.p)) *
                                            CycElem(Rational(pow(Integer(ctx.p), k - 1)));
  if (has_valuation_at_least(euler_p, 1, ctx)) {
    throw ComputationError("eta: 1 - psi(p) p^(k-1) is not a p-adic unit");
  }

  const CycElem bk = gen_bernoulli(k, prim);
  out.factors.push_back({"B_" + std::to_string(k) + "(psi)", bk, valp_cyc(bk, ctx)});
  for (std::uint64_t l : sigma) {
    if (l == ctx.p) continue;
    const CycElem factor =
        CycElem(1) - char_eval(prim, static_cast<long long>(l)) * CycElem(Rational(pow(Integer(l), k)));
    out.factors.push_back({"1 - psi(" + std::to_string(l) + ")*" + std::to_string(l) + "^" + std::to_string(k),
                           factor, valp_cyc(factor, ctx)});
  }
  out.value = CycElem(1);
  out.valuation = Valuation(0);
  for (const auto& f : out.factors) {
    out.value *= f.value;
    out.valuation = out.valuation + f.valuation;
  }
  return out;
}

std::uint64_t rational_mod(const Rational& x, std::uint64_t m) {
  const std::uint64_t den = reduce_mod(Integer(x.get_den()), m);
  if (gcd_u(den, m) != 1) throw ComputationError("rational_mod: denominator not invertible");
  Integer inv;
  mpz_invert(inv.get_mpz_t(), Integer(den).get_mpz_t(), Integer(m).get_mpz_t());
  return mul_mod(reduce_mod(Integer(x.get_num()), m), reduce_mod(inv, m), m);
}

namespace {

void check_omega_exponent(long long j, std::uint64_t p) {
  if (p == 2 || !is_prime(p)) throw ParameterError("b1_omega: p must be an odd prime");
  if (reduce_mod(j, p - 1) == 0) throw ParameterError("b1_omega: omega^j is trivial (j = 0 mod p-1), unsupported");
}

}  // namespace

std::uint64_t b1_omega_mod(long long j, std::uint64_t p, unsigned s) {
  check_omega_exponent(j, p);
  if (reduce_mod(j + 1, p - 1) == 0) {
    throw ParameterError("b1_omega: B_{1,omega^-1} has valuation -1 and no residue mod p^s");
  }
  const auto omega = teichmuller_char(p, j, s + 1);
  const std::uint64_t big = prime_power(p, s + 1);
  std::uint64_t sum = 0;
  for (std::uint64_t a = 1; a < p; ++a) sum = (sum + mul_mod(omega.padic_value(static_cast<long long>(a)), a, big)) % big;
  if (sum % p != 0) throw ComputationError("b1_omega: power sum not divisible by p");
  return sum / p;
}

long b1_omega_valuation(long long j, std::uint64_t p, unsigned cap) {
  check_omega_exponent(j, p);
  if (reduce_mod(j + 1, p - 1) == 0) return -1;
  std::uint64_t r = b1_omega_mod(j, p, cap);
  if (r == 0) return static_cast<long>(cap);
  long v = 0;
  while (r % p == 0) {
    r /= p;
    ++v;
  }
  return v;
}

KummerReport kummer_check(std::uint64_t p, unsigned k) {
  if (!is_prime(p) || p < 5) throw ParameterError("kummer_check: p must be a prime >= 5");
  if (k % 2 != 0 || k < 2 || k + 3 > p) throw ParameterError("kummer_check: need even k with 2 <= k <= p-3");
  KummerReport r{p, k, 0, 0, false};
  r.lhs = b1_omega_mod(static_cast<long long>(k) - 1, p, 1);
  r.rhs = rational_mod(bernoulli(k) / Rational(k), p);
  r.congruent = r.lhs == r.rhs;
  return r;
}

}  // namespace eiscong
