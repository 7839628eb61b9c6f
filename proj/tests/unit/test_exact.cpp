#include <doctest.h>

#include "eiscong/error.hpp"
#include "eiscong/exact.hpp"
#include "eiscong/padic.hpp"
#include "support/properties.hpp"

using namespace eiscong;

namespace {

// Product of polynomials with coefficients reduced mod m.
std::vector<std::uint64_t> poly_mul_mod(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                                        std::uint64_t m) {
  std::vector<std::uint64_t> c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + mul_mod(a[i], b[j], m)) % m;
  }
  return c;
}

}  // namespace

TEST_CASE("rationals normalize and parse") {
  CHECK(make_rational(Integer(6), Integer(-4)) == Rational(-3, 2));
  CHECK(parse_rational("-691/2730") == make_rational(Integer(-691), Integer(2730)));
  CHECK(parse_rational("12") == Rational(12));
  CHECK_THROWS_AS(parse_rational("1/0"), ParameterError);
  CHECK_THROWS_AS(parse_rational("x"), ParameterError);
  CHECK(rational_pow(Rational(2, 3), -2) == Rational(9, 4));
  CHECK(rational_pow(Rational(5), 0) == Rational(1));
  CHECK(pow(Integer(31), 32) % 37 == 1);
}

TEST_CASE("valuations") {
  CHECK(valp(Integer(0), 37).is_infinite());
  CHECK(valp(Integer(37 * 37 * 5), 37) == Valuation(2));
  CHECK(valp_rational(Rational(5, 37), 37) == Valuation(-1));
  CHECK(Valuation(1) < Valuation::infinity());
  CHECK((Valuation(1) + Valuation(2)) == Valuation(3));
  CHECK((Valuation(1) + Valuation::infinity()).is_infinite());
}

TEST_CASE("integer utilities") {
  CHECK(is_prime(37));
  CHECK(is_prime(3617));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(691 * 37));
  CHECK(euler_phi(30) == 8);
  CHECK(divisors(12) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
  CHECK(factorize(360) == std::vector<std::pair<std::uint64_t, unsigned>>{{2, 3}, {3, 2}, {5, 1}});
  CHECK(smallest_primitive_root(37) == 2);
  CHECK(multiplicative_order(31, 37) == 4);
  CHECK(reduce_mod(-1, 37) == 36);
  for (std::uint64_t n = 1; n <= 200; ++n) {
    std::uint64_t count = 0;
    for (std::uint64_t a = 1; a <= n; ++a) count += gcd_u(a, n) == 1;
    CHECK(euler_phi(n) == count);
  }
}

TEST_CASE("cyclotomic polynomials") {
  const auto& phi12 = cyclotomic_polynomial(12);
  CHECK(phi12 == std::vector<Integer>{1, 0, -1, 0, 1});
  for (unsigned f : {1u, 5u, 9u, 30u, 37u}) CHECK(cyclotomic_polynomial(f).size() == euler_phi(f) + 1);
}

TEST_CASE("cyclotomic elements") {
  const CycElem z5 = CycElem::zeta_power(5, 1);
  CycElem power(1);
  CycElem sum;
  for (int j = 0; j < 5; ++j) {
    sum += power;
    power *= z5;
  }
  CHECK(power == CycElem(1));
  CHECK(sum.is_zero());
  CHECK(CycElem::zeta_power(4, 2) == CycElem(-1));
  CHECK(CycElem::zeta_power(4, 2).is_rational());
  CHECK((CycElem(1) - z5).norm() == Rational(5));
  CHECK((CycElem(1) - CycElem::zeta_power(37, 1)).norm() == Rational(37));
  CHECK(CycElem::zeta_power(12, 1).galois(5) == CycElem::zeta_power(12, 5));
  CHECK_THROWS(CycElem(0).inverse());
}

TEST_CASE("field axioms hold on random elements") {
  const auto r = testing::ring_laws(testing::kDefaultSeed);
  INFO(r.failure);
  CHECK(r.ok);
  CHECK(r.cases == 60);
}

TEST_CASE("Hensel-lifted factors multiply to the cyclotomic polynomial") {
  for (auto [p, f, s] : {std::tuple{37ull, 30u, 4u}, {13ull, 12u, 3u}, {691ull, 4u, 2u}, {7ull, 9u, 5u}}) {
    const std::uint64_t m = prime_power(p, s);
    std::vector<std::uint64_t> product{1};
    for (const auto& g : hensel_lifted_factors(p, f, s)) product = poly_mul_mod(product, g, m);
    const auto& phi = cyclotomic_polynomial(f);
    REQUIRE(product.size() == phi.size());
    for (std::size_t i = 0; i < phi.size(); ++i) CHECK(product[i] == reduce_mod(phi[i], m));
  }
}

TEST_CASE("residue degree is the order of p mod f") {
  CHECK(padic_context(37, 30, 4).residue_degree == 4);
  CHECK(padic_context(37, 1, 4).residue_degree == 1);
  CHECK(padic_context(13, 12, 3).residue_degree == 1);
  CHECK(padic_context(691, 4, 2).residue_degree == 2);
  CHECK_THROWS_AS(padic_context(5, 10, 2), ParameterError);
}

TEST_CASE("valuation over the Galois orbit equals the valuation of the norm") {
  // Each prime above p is hit phi(f)/g = f_res times by sigma_a^-1.
  for (auto [p, f] : {std::pair{37ull, 30u}, {13ull, 12u}, {11ull, 5u}}) {
    const auto ctx = padic_context(p, f, 6);
    const std::vector<CycElem> samples = {
        CycElem(1) - CycElem::zeta_power(f, 1).scaled(Rational(static_cast<long>(p) - 1)),
        CycElem(Rational(static_cast<long>(p))) + CycElem::zeta_power(f, 1),
        CycElem::zeta_power(f, 1) + CycElem::zeta_power(f, 2).scaled(Rational(2)) + CycElem(3),
        CycElem::zeta_power(f, 1).scaled(make_rational(Integer(static_cast<long>(p * p)), Integer(7))) + CycElem(Rational(static_cast<long>(p))),
    };
    for (const auto& x : samples) {
      long total = 0;
      for (long a = 1; a < static_cast<long>(f); ++a) {
        if (gcd_u(static_cast<std::uint64_t>(a), f) == 1) total += valp_cyc(x.galois(a), ctx).value();
      }
      CHECK(Valuation(total) == valp_rational(x.norm(), p));
    }
  }
}

TEST_CASE("valuation of 1 - 31^32 at 37 and indeterminate zero") {
  const auto ctx = padic_context(37, 1, 4);
  CHECK(valp_cyc(CycElem(Rational(1 - pow(Integer(31), 32))), ctx) == Valuation(1));
  CHECK(valp_cyc(CycElem(0), ctx).is_infinite());
  CHECK_THROWS_AS(valp_cyc(CycElem(Rational(pow(Integer(37), 5))), ctx), IndeterminateValuation);
  CHECK(has_valuation_at_least(CycElem(Rational(37 * 37)), 2, ctx));
}

TEST_CASE("Teichmuller lifts") {
  for (std::uint64_t p : {5ull, 37ull, 691ull}) {
    const std::uint64_t m = prime_power(p, 3);
    for (long long a = 1; a < static_cast<long long>(p); a += 3) {
      const std::uint64_t t = teichmuller(a, p, 3);
      CHECK(t % p == static_cast<std::uint64_t>(a));
      CHECK(pow_mod(t, p - 1, m) == 1);
    }
  }
}
