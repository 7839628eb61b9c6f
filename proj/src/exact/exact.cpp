#include "eiscong/exact.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

#include "eiscong/error.hpp"

namespace eiscong {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw ParameterError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0) throw ParameterError("not an exact rational: '" + text + "'");
  if (r.get_den() == 0) throw ParameterError("rational with zero denominator: '" + text + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Integer& x) { return x.get_str(); }
std::string to_string(const Rational& x) { return x.get_str(); }

Integer pow(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Rational rational_pow(const Rational& base, long exp) {
  if (exp >= 0) {
    return make_rational(pow(Integer(base.get_num()), static_cast<unsigned long>(exp)), pow(Integer(base.get_den()), static_cast<unsigned long>(exp)));
  }
  if (base == 0) throw ParameterError("zero to a negative power");
  auto e = static_cast<unsigned long>(-exp);
  return make_rational(pow(Integer(base.get_den()), e), pow(Integer(base.get_num()), e));
}

Valuation valp(const Integer& x, unsigned long p) {
  if (x == 0) return Valuation::infinity();
  Integer r = abs(x);
  long v = 0;
  while (mpz_divisible_ui_p(r.get_mpz_t(), p)) {
    mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), p);
    ++v;
  }
  return Valuation(v);
}

Valuation valp_rational(const Rational& x, unsigned long p) {
  if (x == 0) return Valuation::infinity();
  return Valuation(valp(x.get_num(), p).value() - valp(x.get_den(), p).value());
}

// ---- small-integer number theory -------------------------------------------

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t r = 1;
  base %= m;
  while (exp) {
    if (exp & 1) r = mul_mod(r, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // Deterministic witness set for 64-bit inputs.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t gcd_u(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }
std::uint64_t lcm_u(std::uint64_t a, std::uint64_t b) { return std::lcm(a, b); }

std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    unsigned e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    out.emplace_back(q, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out{1};
  for (auto [q, e] : factorize(n)) {
    const std::size_t len = out.size();
    std::uint64_t qp = 1;
    for (unsigned i = 1; i <= e; ++i) {
      qp *= q;
      for (std::size_t j = 0; j < len; ++j) out.push_back(out[j] * qp);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t r = n;
  for (auto [q, e] : factorize(n)) r = r / q * (q - 1);
  return r;
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m) {
  if (gcd_u(a % m, m) != 1) throw ParameterError("multiplicative_order: argument not a unit");
  if (m == 1) return 1;
  for (std::uint64_t d : divisors(euler_phi(m))) {
    if (pow_mod(a, d, m) == 1) return d;
  }
  throw ComputationError("multiplicative_order: no order found");
}

std::uint64_t smallest_primitive_root(std::uint64_t m) {
  if (m <= 2) return 1;
  const std::uint64_t phi = euler_phi(m);
  const auto primes = factorize(phi);
  for (std::uint64_t g = 2; g < m; ++g) {
    if (gcd_u(g, m) != 1) continue;
    bool ok = true;
    for (auto [q, e] : primes) {
      if (pow_mod(g, phi / q, m) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw ParameterError("no primitive root modulo " + std::to_string(m));
}

std::uint64_t reduce_mod(long long a, std::uint64_t m) {
  const long long r = a % static_cast<long long>(m);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long long>(m) : r);
}

std::uint64_t reduce_mod(const Integer& a, std::uint64_t m) {
  return mpz_fdiv_ui(a.get_mpz_t(), m);
}

// ---- cyclotomic polynomials -------------------------------------------------

namespace {

// Exact quotient of integer polynomials (ascending coefficients), divisor monic.
std::vector<Integer> divide_monic(std::vector<Integer> num, const std::vector<Integer>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<Integer> quot(num.size() - dn);
  for (std::size_t i = num.size(); i-- > dn;) {
    const Integer c = num[i];
    quot[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return quot;
}

std::vector<Integer> compute_cyclotomic(unsigned f) {
  std::vector<Integer> poly(f + 1);
  poly[0] = -1;
  poly[f] = 1;
  for (std::uint64_t d : divisors(f)) {
    if (d == f) continue;
    poly = divide_monic(std::move(poly), cyclotomic_polynomial(static_cast<unsigned>(d)));
  }
  return poly;
}

}  // namespace

const std::vector<Integer>& cyclotomic_polynomial(unsigned f) {
  if (f == 0 || f > kMaxConductor) {
    throw ParameterError("conductor " + std::to_string(f) + " outside [1, " + std::to_string(kMaxConductor) + "]");
  }
  static std::mutex mu;
  static std::map<unsigned, std::vector<Integer>> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(f); it != cache.end()) return it->second;
  }
  // Computed outside the lock: compute_cyclotomic recurses into divisors.
  auto poly = compute_cyclotomic(f);
  std::lock_guard lock(mu);
  return cache.try_emplace(f, std::move(poly)).first->second;
}

// ---- CycElem ----------------------------------------------------------------

namespace {

std::size_t field_degree(unsigned f) { return cyclotomic_polynomial(f).size() - 1; }

void reduce_in_place(std::vector<Rational>& poly, unsigned f) {
  const auto& phi = cyclotomic_polynomial(f);
  const std::size_t n = phi.size() - 1;
  for (std::size_t i = poly.size(); i-- > n;) {
    if (poly[i] == 0) continue;
    const Rational c = poly[i];
    for (std::size_t j = 0; j <= n; ++j) {
      if (phi[j] != 0) poly[i - n + j] -= c * phi[j];
    }
  }
  poly.resize(n);
}

}  // namespace

CycElem::CycElem() : conductor_(1), coeffs_(1) {}

CycElem::CycElem(const Rational& c, unsigned conductor)
    : conductor_(conductor), coeffs_(field_degree(conductor)) {
  coeffs_[0] = c;
}

CycElem::CycElem(unsigned conductor, std::vector<Rational> coeffs, bool reduced)
    : conductor_(conductor), coeffs_(std::move(coeffs)) {
  if (!reduced || coeffs_.size() != field_degree(conductor)) {
    coeffs_.resize(std::max(coeffs_.size(), field_degree(conductor)));
    reduce_in_place(coeffs_, conductor);
  }
}

CycElem CycElem::from_polynomial(unsigned conductor, std::vector<Rational> poly) {
  return CycElem(conductor, std::move(poly), false);
}

CycElem CycElem::zeta_power(unsigned conductor, long j) {
  const std::uint64_t e = reduce_mod(static_cast<long long>(j), conductor);
  std::vector<Rational> poly(e + 1);
  poly[e] = 1;
  return from_polynomial(conductor, std::move(poly));
}

bool CycElem::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

bool CycElem::is_rational() const {
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& c) { return c == 0; });
}

CycElem CycElem::lift(unsigned conductor) const {
  if (conductor == conductor_) return *this;
  if (conductor % conductor_ != 0) {
    throw ParameterError("cannot embed Q(zeta_" + std::to_string(conductor_) + ") into Q(zeta_" +
                         std::to_string(conductor) + ")");
  }
  if (is_rational()) return CycElem(coeffs_[0], conductor);
  const std::size_t step = conductor / conductor_;
  std::vector<Rational> poly((coeffs_.size() - 1) * step + 1);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) poly[j * step] = coeffs_[j];
  return from_polynomial(conductor, std::move(poly));
}

CycElem CycElem::galois(long a) const {
  if (gcd_u(reduce_mod(static_cast<long long>(a), conductor_), conductor_) != 1 && conductor_ > 1) {
    throw ParameterError("galois: exponent not a unit modulo the conductor");
  }
  if (is_rational()) return *this;
  std::vector<Rational> poly(conductor_);
  const std::uint64_t am = reduce_mod(static_cast<long long>(a), conductor_);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j] != 0) poly[mul_mod(j, am, conductor_)] += coeffs_[j];
  }
  return from_polynomial(conductor_, std::move(poly));
}

Rational CycElem::norm() const {
  if (is_rational()) return rational_pow(coeffs_[0], static_cast<long>(coeffs_.size()));
  CycElem prod(Rational(1), conductor_);
  for (unsigned a = 1; a < conductor_; ++a) {
    if (gcd_u(a, conductor_) == 1) prod *= galois(a);
  }
  return prod.constant();
}

CycElem CycElem::inverse() const {
  if (is_zero()) throw ComputationError("division by zero in Q(zeta_" + std::to_string(conductor_) + ")");
  if (is_rational()) return CycElem(1 / coeffs_[0], conductor_);
  CycElem cofactor(Rational(1), conductor_);
  for (unsigned a = 2; a < conductor_; ++a) {
    if (gcd_u(a, conductor_) == 1) cofactor *= galois(a);
  }
  const CycElem n = *this * cofactor;
  return cofactor.scaled(1 / n.constant());
}

Integer CycElem::denominator() const {
  Integer d = 1;
  for (const auto& c : coeffs_) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.get_den_mpz_t());
  return d;
}

unsigned CycElem::common_conductor(const CycElem& a, const CycElem& b) {
  return static_cast<unsigned>(lcm_u(a.conductor_, b.conductor_));
}

CycElem CycElem::operator-() const {
  CycElem r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CycElem& CycElem::operator+=(const CycElem& o) {
  if (o.conductor_ != conductor_) {
    if (o.is_rational() && conductor_ % o.conductor_ == 0) {
      coeffs_[0] += o.coeffs_[0];
      return *this;
    }
    const unsigned f = common_conductor(*this, o);
    *this = lift(f);
    return *this += o.lift(f);
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

CycElem& CycElem::operator-=(const CycElem& o) { return *this += -o; }

CycElem& CycElem::operator*=(const CycElem& o) {
  if (o.is_rational() && conductor_ % o.conductor_ == 0) {
    for (auto& c : coeffs_) c *= o.coeffs_[0];
    return *this;
  }
  if (is_rational() && o.conductor_ % conductor_ == 0) {
    const Rational c = coeffs_[0];
    *this = o.scaled(c);
    return *this;
  }
  if (o.conductor_ != conductor_) {
    const unsigned f = common_conductor(*this, o);
    *this = lift(f);
    return *this *= o.lift(f);
  }
  const std::size_t n = coeffs_.size();
  std::vector<Rational> prod(2 * n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (o.coeffs_[j] != 0) prod[i + j] += coeffs_[i] * o.coeffs_[j];
    }
  }
  reduce_in_place(prod, conductor_);
  coeffs_ = std::move(prod);
  return *this;
}

CycElem& CycElem::operator/=(const CycElem& o) { return *this *= o.inverse(); }

CycElem CycElem::scaled(const Rational& c) const {
  CycElem r = *this;
  for (auto& x : r.coeffs_) x *= c;
  return r;
}

bool operator==(const CycElem& a, const CycElem& b) {
  if (a.conductor_ == b.conductor_) return a.coeffs_ == b.coeffs_;
  const unsigned f = CycElem::common_conductor(a, b);
  return a.lift(f).coeffs_ == b.lift(f).coeffs_;
}

std::string CycElem::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    const Rational& c = coeffs_[j];
    if (c == 0) continue;
    const bool neg = c < 0;
    const Rational mag = neg ? Rational(-c) : c;
    if (first) {
      if (neg) out << '-';
    } else {
      out << (neg ? " - " : " + ");
    }
    first = false;
    if (j == 0) {
      out << mag.get_str();
      continue;
    }
    if (mag != 1) out << mag.get_str() << '*';
    out << 'z';
    if (j > 1) out << '^' << j;
  }
  return first ? "0" : out.str();
}

CycElem cyc_arith(const CycElem& a, const CycElem& b, CycOp op) {
  if (a.conductor() != b.conductor()) {
    throw ParameterError("conductor mismatch: " + std::to_string(a.conductor()) + " vs " +
                         std::to_string(b.conductor()));
  }
  return op == CycOp::add ? a + b : a * b;
}

}  // namespace eiscong
