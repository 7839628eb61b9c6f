#include "eiscong/padic.hpp"

#include <algorithm>
#include <random>

#include "eiscong/error.hpp"

namespace eiscong {

namespace {

void trim(ResiduePoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::size_t degree(const ResiduePoly& a) { return a.empty() ? 0 : a.size() - 1; }

ResiduePoly poly_mul(const ResiduePoly& a, const ResiduePoly& b, std::uint64_t m) {
  if (a.empty() || b.empty()) return {};
  ResiduePoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mul_mod(a[i], b[j], m)) % m;
  }
  trim(r);
  return r;
}

ResiduePoly poly_add(ResiduePoly a, const ResiduePoly& b, std::uint64_t m) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + b[i]) % m;
  trim(a);
  return a;
}

ResiduePoly poly_sub(ResiduePoly a, const ResiduePoly& b, std::uint64_t m) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + m - b[i]) % m;
  trim(a);
  return a;
}

ResiduePoly poly_scale(ResiduePoly a, std::uint64_t c, std::uint64_t m) {
  for (auto& x : a) x = mul_mod(x, c, m);
  trim(a);
  return a;
}

/// Quotient and remainder by a monic divisor.
std::pair<ResiduePoly, ResiduePoly> poly_divmod(ResiduePoly a, const ResiduePoly& b, std::uint64_t m) {
  trim(a);
  const std::size_t db = degree(b);
  if (a.size() <= db) return {{}, a};
  ResiduePoly q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    const std::uint64_t c = a[i];
    if (c == 0) continue;
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] = (a[i - db + j] + m - mul_mod(c, b[j], m)) % m;
  }
  a.resize(db);
  trim(a);
  trim(q);
  return {q, a};
}

ResiduePoly poly_mod_coeffs(ResiduePoly a, std::uint64_t m) {
  for (auto& c : a) c %= m;
  trim(a);
  return a;
}

ResiduePoly poly_mod(const ResiduePoly& a, const ResiduePoly& b, std::uint64_t m) {
  return poly_divmod(a, b, m).second;
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  long long t = 0, nt = 1;
  long long r = static_cast<long long>(m), nr = static_cast<long long>(a % m);
  while (nr != 0) {
    const long long q = r / nr;
    t = std::exchange(nt, t - q * nt);
    r = std::exchange(nr, r - q * nr);
  }
  if (r != 1) throw ComputationError("inverse_mod: not invertible");
  return reduce_mod(t, m);
}

ResiduePoly make_monic(ResiduePoly a, std::uint64_t p) {
  trim(a);
  if (a.empty()) return a;
  return poly_scale(std::move(a), inverse_mod(a.back(), p), p);
}

ResiduePoly poly_gcd(ResiduePoly a, ResiduePoly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    b = make_monic(std::move(b), p);
    a = poly_mod(a, b, p);
    std::swap(a, b);
  }
  return make_monic(std::move(a), p);
}

/// s, t with s*a + t*b = 1 mod p, for coprime a, b.
std::pair<ResiduePoly, ResiduePoly> bezout(const ResiduePoly& a, const ResiduePoly& b, std::uint64_t p) {
  ResiduePoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  trim(r0);
  trim(r1);
  while (!r1.empty()) {
    const std::uint64_t inv = inverse_mod(r1.back(), p);
    const ResiduePoly monic = poly_scale(r1, inv, p);
    auto [q, r] = poly_divmod(r0, monic, p);
    q = poly_scale(q, inv, p);
    r0 = std::exchange(r1, r);
    s0 = std::exchange(s1, poly_sub(s0, poly_mul(q, s1, p), p));
    t0 = std::exchange(t1, poly_sub(t0, poly_mul(q, t1, p), p));
  }
  if (r0.size() != 1) throw ComputationError("bezout: polynomials not coprime mod p");
  const std::uint64_t inv = inverse_mod(r0[0], p);
  return {poly_scale(s0, inv, p), poly_scale(t0, inv, p)};
}

ResiduePoly poly_powmod(ResiduePoly base, std::uint64_t e, const ResiduePoly& mod, std::uint64_t p) {
  ResiduePoly r{1};
  base = poly_mod(base, mod, p);
  while (e) {
    if (e & 1) r = poly_mod(poly_mul(r, base, p), mod, p);
    base = poly_mod(poly_mul(base, base, p), mod, p);
    e >>= 1;
  }
  return r;
}

ResiduePoly cyclotomic_mod(unsigned f, std::uint64_t m) {
  const auto& phi = cyclotomic_polynomial(f);
  ResiduePoly r(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) r[i] = reduce_mod(phi[i], m);
  return r;
}

// Cantor-Zassenhaus equal-degree splitting; every factor of `f` has degree d.
void split_equal_degree(const ResiduePoly& f, std::size_t d, std::uint64_t p, std::mt19937_64& rng,
                        std::vector<ResiduePoly>& out) {
  if (degree(f) == d) {
    out.push_back(f);
    return;
  }
  std::uniform_int_distribution<std::uint64_t> coeff(0, p - 1);
  for (;;) {
    ResiduePoly a(degree(f));
    for (auto& c : a) c = coeff(rng);
    trim(a);
    if (a.empty()) continue;
    ResiduePoly b;
    if (p == 2) {
      // Trace to F_2: a + a^2 + ... + a^(2^(d-1)).
      ResiduePoly x = poly_mod(a, f, p);
      b = x;
      for (std::size_t i = 1; i < d; ++i) {
        x = poly_mod(poly_mul(x, x, p), f, p);
        b = poly_add(b, x, p);
      }
    } else {
      // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p-1)/2).
      ResiduePoly x = poly_mod(a, f, p);
      ResiduePoly acc = x;
      for (std::size_t i = 1; i < d; ++i) {
        x = poly_powmod(x, p, f, p);
        acc = poly_mod(poly_mul(acc, x, p), f, p);
      }
      b = poly_sub(poly_powmod(acc, (p - 1) / 2, f, p), ResiduePoly{1}, p);
    }
    ResiduePoly g = poly_gcd(b, f, p);
    if (degree(g) == 0 || degree(g) == degree(f)) continue;
    split_equal_degree(g, d, p, rng, out);
    split_equal_degree(poly_divmod(f, g, p).first, d, p, rng, out);
    return;
  }
}

// Lift target = g*h (mod p) to target = G*H (mod p^s).
std::pair<ResiduePoly, ResiduePoly> hensel_lift_pair(const ResiduePoly& target, ResiduePoly g, ResiduePoly h,
                                                      std::uint64_t p, unsigned s) {
  const ResiduePoly g0 = g, h0 = h;
  const ResiduePoly b = bezout(g0, h0, p).second;
  std::uint64_t pj = p;
  for (unsigned j = 1; j < s; ++j) {
    const std::uint64_t next = pj * p;
    ResiduePoly err = poly_sub(poly_mod_coeffs(target, next), poly_mul(g, h, next), next);
    for (auto& c : err) {
      if (c % pj != 0) throw ComputationError("hensel lift: inconsistent factorization");
      c = (c / pj) % p;
    }
    trim(err);
    const ResiduePoly dg = poly_mod(poly_mul(b, err, p), g0, p);
    auto [dh, rem] = poly_divmod(poly_sub(err, poly_mul(dg, h0, p), p), g0, p);
    if (!rem.empty()) throw ComputationError("hensel lift: non-exact correction");
    g = poly_add(g, poly_scale(dg, pj, next), next);
    h = poly_add(h, poly_scale(dh, pj, next), next);
    pj = next;
  }
  return {g, h};
}

}  // namespace

std::uint64_t prime_power(std::uint64_t p, unsigned s) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < s; ++i) {
    if (r > kMaxResidueModulus / p) {
      throw ParameterError("p^s = " + std::to_string(p) + "^" + std::to_string(s) + " exceeds residue range");
    }
    r *= p;
  }
  return r;
}

std::vector<ResiduePoly> cyclotomic_factors_mod_p(std::uint64_t p, unsigned conductor) {
  if (!is_prime(p)) throw ParameterError(std::to_string(p) + " is not prime");
  if (conductor % p == 0) {
    throw ParameterError("ramified case unsupported: p=" + std::to_string(p) + " divides conductor " +
                         std::to_string(conductor));
  }
  const ResiduePoly phi = cyclotomic_mod(conductor, p);
  const std::size_t d = multiplicative_order(p % conductor, conductor);
  std::vector<ResiduePoly> out;
  std::mt19937_64 rng(0x5eedULL ^ (p * 1315423911ULL) ^ conductor);
  split_equal_degree(phi, d, p, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ResiduePoly> hensel_lifted_factors(std::uint64_t p, unsigned conductor, unsigned precision) {
  if (precision == 0) throw ParameterError("precision must be positive");
  const std::uint64_t modulus = prime_power(p, precision);
  const auto factors = cyclotomic_factors_mod_p(p, conductor);
  std::vector<ResiduePoly> lifted;
  ResiduePoly rest = cyclotomic_mod(conductor, modulus);
  for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
    ResiduePoly others{1};
    for (std::size_t j = i + 1; j < factors.size(); ++j) others = poly_mul(others, factors[j], p);
    auto [g, h] = hensel_lift_pair(rest, factors[i], others, p, precision);
    lifted.push_back(std::move(g));
    rest = std::move(h);
  }
  lifted.push_back(std::move(rest));
  return lifted;
}

PadicContext padic_context(std::uint64_t p, unsigned conductor, unsigned precision) {
  if (precision == 0) throw ParameterError("precision must be positive");
  PadicContext ctx;
  ctx.p = p;
  ctx.conductor = conductor;
  ctx.precision = precision;
  ctx.modulus = prime_power(p, precision);
  const auto factors = cyclotomic_factors_mod_p(p, conductor);
  ctx.prime_factor = factors.front();
  ctx.residue_degree = static_cast<unsigned>(degree(ctx.prime_factor));
  const ResiduePoly phi = cyclotomic_mod(conductor, ctx.modulus);
  if (factors.size() == 1) {
    ctx.lifted_factor = phi;
  } else {
    ResiduePoly others{1};
    for (std::size_t j = 1; j < factors.size(); ++j) others = poly_mul(others, factors[j], p);
    ctx.lifted_factor = hensel_lift_pair(phi, ctx.prime_factor, others, p, precision).first;
  }
  return ctx;
}

ResiduePoly padic_image(const CycElem& x, const PadicContext& ctx) {
  const CycElem y = x.lift(ctx.conductor);
  const Integer den = y.denominator();
  if (mpz_divisible_ui_p(den.get_mpz_t(), ctx.p)) throw ParameterError("padic_image: element is not p-integral");
  const std::uint64_t den_inv = inverse_mod(reduce_mod(den, ctx.modulus), ctx.modulus);
  ResiduePoly img(y.coeffs().size());
  for (std::size_t i = 0; i < img.size(); ++i) {
    const Rational& c = y.coeffs()[i];
    const Integer num = c.get_num() * (den / c.get_den());
    img[i] = mul_mod(reduce_mod(num, ctx.modulus), den_inv, ctx.modulus);
  }
  trim(img);
  return poly_mod(img, ctx.lifted_factor, ctx.modulus);
}

namespace {

// x * p^(v_p(den)) so that the result is p-integral; returns the shift.
long shift_to_integral(const CycElem& x, unsigned long p, CycElem& out) {
  const Integer den = x.denominator();
  const long shift = valp(den, p).value();
  out = shift ? x.scaled(Rational(pow(Integer(p), shift))) : x;
  return shift;
}

long min_coefficient_valuation(const ResiduePoly& img, unsigned long p) {
  long best = -1;
  for (std::uint64_t c : img) {
    if (c == 0) continue;
    long v = 0;
    while (c % p == 0) {
      c /= p;
      ++v;
    }
    if (best < 0 || v < best) best = v;
  }
  return best;
}

}  // namespace

Valuation valp_cyc(const CycElem& x, const PadicContext& ctx) {
  if (x.is_zero()) return Valuation::infinity();
  CycElem z;
  const long shift = shift_to_integral(x, ctx.p, z);
  const ResiduePoly img = padic_image(z, ctx);
  if (img.empty()) throw IndeterminateValuation(ctx.precision);
  return Valuation(min_coefficient_valuation(img, ctx.p) - shift);
}

bool has_valuation_at_least(const CycElem& x, long t, const PadicContext& ctx) {
  if (x.is_zero()) return true;
  CycElem z;
  const long shift = shift_to_integral(x, ctx.p, z);
  const long needed = t + shift;
  if (needed <= 0) return true;
  const ResiduePoly img = padic_image(z, ctx);
  if (img.empty()) {
    if (needed <= static_cast<long>(ctx.precision)) return true;
    throw IndeterminateValuation(ctx.precision);
  }
  return min_coefficient_valuation(img, ctx.p) >= needed;
}

std::uint64_t teichmuller(long long a, std::uint64_t p, unsigned s) {
  if (!is_prime(p)) throw ParameterError(std::to_string(p) + " is not prime");
  if (reduce_mod(a, p) == 0) throw ParameterError("teichmuller: p divides a");
  const std::uint64_t mod = prime_power(p, s);
  return pow_mod(reduce_mod(a, mod), prime_power(p, s - 1), mod);
}

}  // namespace eiscong
