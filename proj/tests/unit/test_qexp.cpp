#include <doctest.h>

#include "eiscong/criteria.hpp"
#include "eiscong/error.hpp"
#include "eiscong/qexp.hpp"
#include "support/properties.hpp"

using namespace eiscong;

namespace {

Integer sigma_power(std::uint64_t n, unsigned e) {
  Integer s = 0;
  for (std::uint64_t d : divisors(n)) s += pow(Integer(d), e);
  return s;
}

// Number of cusps of Gamma_0(N): sum over d | N of phi(gcd(d, N/d)).
std::size_t cusp_count(std::uint64_t n) {
  std::size_t c = 0;
  for (std::uint64_t d : divisors(n)) c += euler_phi(gcd_u(d, n / d));
  return c;
}

}  // namespace

TEST_CASE("E_12 normalization") {
  const auto e12 = eisenstein_qexp(12, DirichletChar(), 10);
  CHECK(e12.precision() == 10);
  CHECK(e12[0] == CycElem(make_rational(Integer(691), Integer(65520))));
  CHECK(e12[1] == CycElem(1));
  CHECK(e12[2] == CycElem(2049));
  for (std::uint64_t n = 1; n <= 10; ++n) CHECK(e12[n] == CycElem(Rational(sigma_power(n, 11))));
  CHECK(e12.weight() == 12);
  CHECK(e12.level() == 1);
}

TEST_CASE("(240 E_4)^2 = 480 E_8") {
  const auto e4 = eisenstein_qexp(4, DirichletChar(), 60).scaled(CycElem(240));
  const auto e8 = eisenstein_qexp(8, DirichletChar(), 60).scaled(CycElem(480));
  const auto sq = multiply(e4, e4);
  CHECK(sq[0] == CycElem(1));
  for (std::size_t n = 0; n <= 60; ++n) CHECK(sq[n] == e8[n]);
  CHECK(sq.weight() == 8);
}

TEST_CASE("E_1 of the character mod 4 counts representations by x^2 + y^2") {
  // theta^2 = 4 E_1(chi_-4): r_2(n) = 4 sum_{d | n} chi(d).
  const auto e1 = eisenstein_qexp(1, DirichletChar::parse("4:[1]"), 50);
  for (std::size_t n = 0; n <= 50; ++n) {
    long r2 = 0;
    for (long x = -8; x <= 8; ++x) {
      for (long y = -8; y <= 8; ++y) r2 += x * x + y * y == static_cast<long>(n);
    }
    CHECK(e1[n].scaled(Rational(4)) == CycElem(r2));
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(eisenstein_qexp(2, DirichletChar(), 10), ParameterError);
  CHECK_THROWS_AS(eisenstein_qexp(3, DirichletChar(), 10), ParameterError);
  CHECK_THROWS_AS(eisenstein_qexp(2, DirichletChar::parse("4:[1]"), 10), ParameterError);
  const auto e = eisenstein_qexp(3, DirichletChar::parse("4:[1]"), 20);
  CHECK_THROWS_AS(hecke_Tq(e, 2, 3, DirichletChar::parse("4:[1]")), ParameterError);
}

TEST_CASE("V operator and products") {
  const auto e4 = eisenstein_qexp(4, DirichletChar(), 30);
  const auto v = v_operator(e4, 3);
  CHECK(v.level() == 3);
  CHECK(v.precision() == 30);
  for (std::size_t n = 0; n <= 30; ++n) CHECK(v[n] == (n % 3 == 0 ? e4[n / 3] : CycElem(0)));
  const auto prod = multiply(e4, eisenstein_qexp(6, DirichletChar(), 20));
  CHECK(prod.precision() == 20);
  CHECK(prod.weight() == 10);
  const auto one = QExpansion::one(20);
  const auto same = multiply(one, e4);
  for (std::size_t n = 0; n <= 20; ++n) CHECK(same[n] == e4[n]);
}

TEST_CASE("default precision") {
  CHECK(default_precision(12, 1) == 50);
  CHECK(default_precision(32, 31) >= 2 * 32 * 32 / 12);
}

TEST_CASE("Eisenstein series are Hecke eigenforms") {
  const auto r = testing::eisenstein_eigen(testing::kDefaultSeed);
  INFO(r.failure);
  CHECK(r.ok);
  CHECK(r.cases == 10);
}

TEST_CASE("F_m is annihilated by the Eisenstein ideal") {
  const auto r = testing::fm_annihilation();
  INFO(r.failure);
  CHECK(r.ok);
  const auto fm = build_Fm(DirichletChar(), 12, 5, 1, 40);
  CHECK(fm.level() == 5);
  // F_1 = E_k - l^k E_k(l z): a_0 = (1 - 5^12) a_0(E_12).
  CHECK(fm[0] == eisenstein_qexp(12, DirichletChar(), 1)[0].scaled(Rational(1 - pow(Integer(5), 12))));
}

TEST_CASE("cusp representatives") {
  for (std::uint64_t n : {1ull, 2ull, 4ull, 12ull, 31ull, 36ull, 125ull}) {
    const auto cusps = cusp_classes(n);
    CHECK(cusps.size() == cusp_count(n));
    for (const auto& c : cusps) {
      CHECK(n % c.v == 0);
      if (c.v > 1) CHECK(gcd_u(reduce_mod(c.u, c.v), c.v) == 1);
    }
  }
}

TEST_CASE("constant terms at cusps") {
  const EisensteinForm e12{12, DirichletChar()};
  for (const auto& c : cusp_classes(31)) {
    CHECK(cusp_constant_term(e12, c) == eisenstein_qexp(12, DirichletChar(), 1)[0]);
  }
  // E_l(phi) with phi of conductor 5 vanishes at cusps whose v is prime to 5.
  const auto phi = DirichletChar::parse("5:[2]");
  const EisensteinForm e2phi{2, phi};
  for (const auto& c : cusp_classes(5)) {
    const auto ct = cusp_constant_term(e2phi, c);
    if (c.v % 5 == 0) {
      CHECK_FALSE(ct.is_zero());
    } else {
      CHECK(ct.is_zero());
    }
  }
  // F_1 vanishes at the cusp 0 and not at infinity.
  const FmForm f1{DirichletChar(), 12, 5, 1};
  for (const auto& c : cusp_classes(5)) CHECK(cusp_constant_term(f1, c).is_zero() == (c.v == 1));
  // Weight-one factors are unknown at cusps prime to their conductor.
  const EisensteinForm e1{1, DirichletChar::parse("4:[1]")};
  CHECK_THROWS_AS(cusp_constant_term(e1, CuspClass{1, 1, 4}), ComputationError);
}

TEST_CASE("H for the Ramanujan case at auxiliary prime 5") {
  const DirichletChar psi;
  const auto ctx = padic_context(691, aux_context_conductor(psi, 5, 1), 4);
  const auto aux = aux_char_search(691, 12, psi, 5, 1, ctx);
  REQUIRE(aux.phi.has_value());
  const auto h = build_H(psi, 12, 5, 1, *aux.phi, {5, 691}, ctx, 40);
  CHECK(h.constant_term_zero);
  CHECK(h.integral);
  CHECK(h.unit_coefficient);
  CHECK(h.congruent_to_fm);
  CHECK(h.cuspidal);
  CHECK(h.verified());
  CHECK(h.eta.valuation == Valuation(1));
  CHECK(h.h.level() == 5);
  CHECK(h.h[0].is_zero());
  CHECK(h.cusp_constant_terms.size() == cusp_count(5));
  for (const auto& [cusp, value] : h.cusp_constant_terms) CHECK(value.is_zero());
  // H = F_1 mod eta, and v(eta) = 1.
  for (std::size_t n = 0; n <= 40; ++n) CHECK(has_valuation_at_least(h.h[n] - h.fm[n], 1, ctx));
}

TEST_CASE("build_H rejects malformed parameters") {
  const DirichletChar psi;
  const auto ctx = padic_context(37, 30, 4);
  const auto phi = DirichletChar::parse("31:[1]");
  CHECK_THROWS_AS(build_H(psi, 32, 31, 1, phi, {37}, ctx, 40), ParameterError);
  CHECK_THROWS_AS(build_H(psi, 32, 31, 1, phi, {31, 37, 5}, ctx, 40), ParameterError);
  CHECK_THROWS_AS(build_H(psi, 32, 31, 1, DirichletChar::parse("31:[2]"), {31, 37}, ctx, 40), ParameterError);
  CHECK_THROWS_AS(build_H(psi, 32, 37, 1, phi, {31, 37}, ctx, 40), ParameterError);
}
