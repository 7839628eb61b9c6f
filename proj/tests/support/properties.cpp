#include "support/properties.hpp"

#include <random>
#include <vector>

#include "eiscong/characters.hpp"
#include "eiscong/hecke1.hpp"
#include "eiscong/lfunc.hpp"
#include "eiscong/qexp.hpp"

namespace eiscong::testing {

namespace {

CycElem random_elem(std::mt19937_64& rng, unsigned conductor) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 5);
  std::vector<Rational> poly(conductor);
  for (auto& c : poly) c = make_rational(Integer(num(rng)), Integer(den(rng)));
  return CycElem::from_polynomial(conductor, std::move(poly));
}

std::string describe(const char* law, const CycElem& a) { return std::string(law) + " fails at " + a.to_string(); }

}  // namespace

PropertyResult ring_laws(std::uint64_t seed, std::size_t trials) {
  static const unsigned conductors[] = {1, 3, 4, 5, 7, 8, 9, 12, 15, 16, 20, 24};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, std::size(conductors) - 1);
  PropertyResult r;
  for (std::size_t t = 0; t < trials; ++t) {
    const unsigned f = conductors[pick(rng)];
    const CycElem a = random_elem(rng, f), b = random_elem(rng, f), c = random_elem(rng, f);
    ++r.cases;
    if (!((a + b) + c == a + (b + c))) r.fail(describe("additive associativity", a));
    if (!(a * b == b * a)) r.fail(describe("commutativity", a));
    if (!((a * b) * c == a * (b * c))) r.fail(describe("multiplicative associativity", a));
    if (!(a * (b + c) == a * b + a * c)) r.fail(describe("distributivity", a));
    if (!(a - a).is_zero()) r.fail(describe("additive inverse", a));
    if (!(cyc_arith(a, b, CycOp::mul) == a * b)) r.fail(describe("cyc_arith", a));
    if (!a.is_zero() && !(a * a.inverse() == CycElem(1))) r.fail(describe("multiplicative inverse", a));
    if (f > 2) {
      long s = 2;
      while (gcd_u(static_cast<std::uint64_t>(s), f) != 1) ++s;
      if (!((a * b).galois(s) == a.galois(s) * b.galois(s))) r.fail(describe("Galois homomorphism", a));
    }
    if ((a * b).norm() != a.norm() * b.norm()) r.fail(describe("norm multiplicativity", a));
  }
  return r;
}

PropertyResult character_orthogonality(std::uint64_t seed, std::size_t moduli) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(1, 60);
  PropertyResult r;
  for (std::size_t t = 0; t < moduli; ++t) {
    const std::uint64_t f = pick(rng);
    const auto chars = enumerate_chars(f);
    const auto phi = static_cast<long>(euler_phi(f));
    ++r.cases;
    if (static_cast<long>(chars.size()) != phi) r.fail("character count mod " + std::to_string(f));
    for (const auto& chi : chars) {
      CycElem sum;
      for (std::uint64_t a = 0; a < f; ++a) sum += char_eval(chi, static_cast<long long>(a));
      const CycElem want = chi.is_trivial() ? CycElem(phi) : CycElem(0);
      if (!(sum == want)) r.fail("sum over a of " + chi.to_string());
    }
    std::uniform_int_distribution<std::uint64_t> pa(0, f - 1);
    for (int i = 0; i < 4; ++i) {
      const std::uint64_t a = pa(rng);
      if (gcd_u(a, f) != 1) continue;
      CycElem sum;
      for (const auto& chi : chars) sum += char_eval(chi, static_cast<long long>(a));
      const CycElem want = a % f == 1 % f ? CycElem(phi) : CycElem(0);
      if (!(sum == want)) r.fail("sum over chi mod " + std::to_string(f) + " at a=" + std::to_string(a));
    }
  }
  return r;
}

PropertyResult von_staudt_clausen(unsigned max_n) {
  PropertyResult r;
  for (unsigned n = 2; n <= max_n; n += 2) {
    Rational s = bernoulli(n);
    for (unsigned q = 2; q <= n + 1; ++q) {
      if (is_prime(q) && n % (q - 1) == 0) s += Rational(1, q);
    }
    ++r.cases;
    if (s.get_den() != 1) r.fail("B_" + std::to_string(n));
  }
  return r;
}

PropertyResult parity_vanishing(std::uint64_t seed, std::size_t trials) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick_mod(3, 30);
  std::uniform_int_distribution<unsigned> pick_n(1, 8);
  PropertyResult r;
  while (r.cases < trials) {
    const std::uint64_t f = pick_mod(rng);
    const auto chars = enumerate_chars(f);
    std::uniform_int_distribution<std::size_t> pick_chi(0, chars.size() - 1);
    const DirichletChar& chi = chars[pick_chi(rng)];
    const unsigned n = pick_n(rng);
    const int sign = n % 2 == 0 ? 1 : -1;
    if (chi.parity() == sign || (n == 1 && primitive(chi).is_trivial())) continue;
    ++r.cases;
    if (!gen_bernoulli(n, chi).is_zero()) r.fail("B_{" + std::to_string(n) + "," + chi.to_string() + "}");
  }
  return r;
}

PropertyResult eisenstein_eigen(std::uint64_t seed, std::size_t samples, std::size_t precision) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick_mod(1, 12);
  std::uniform_int_distribution<unsigned> pick_k(1, 20);
  PropertyResult r;
  while (r.cases < samples) {
    const std::uint64_t f = pick_mod(rng);
    const auto prims = enumerate_chars(f, CharFilter{std::nullopt, f});
    if (prims.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick_chi(0, prims.size() - 1);
    const DirichletChar& phi = prims[pick_chi(rng)];
    const unsigned k = pick_k(rng);
    if (phi.parity() != (k % 2 == 0 ? 1 : -1) || (k == 2 && phi.is_trivial())) continue;
    ++r.cases;
    const QExpansion e = eisenstein_qexp(k, phi, precision);
    for (std::uint64_t q = 2; q <= 13; ++q) {
      if (!is_prime(q) || f % q == 0) continue;
      const QExpansion tq = hecke_Tq(e, q, k, phi);
      const CycElem lambda = CycElem(1) + char_eval(phi, static_cast<long long>(q)) * CycElem(Rational(pow(Integer(q), k - 1)));
      for (std::size_t n = 0; n <= tq.precision(); ++n) {
        if (!(tq[n] == lambda * e[n])) {
          r.fail("E_" + std::to_string(k) + "(" + phi.to_string() + "), q=" + std::to_string(q) + ", n=" +
                 std::to_string(n));
          break;
        }
      }
    }
  }
  return r;
}

PropertyResult fm_annihilation() {
  struct Case {
    DirichletChar psi;
    unsigned k;
    std::uint64_t l;
    unsigned m;
    std::uint64_t p;
  };
  const std::vector<Case> cases = {
      {DirichletChar::trivial(), 12, 5, 1, 691},
      {DirichletChar::trivial(), 32, 31, 1, 37},
      {DirichletChar::from_exponents(4, {1}), 3, 3, 2, 5},
      {DirichletChar::from_exponents(5, {1}), 5, 2, 1, 7},
  };
  PropertyResult r;
  for (const auto& c : cases) {
    const QExpansion fm = build_Fm(c.psi, c.k, c.l, c.m, 80);
    for (std::uint64_t q = 2; q <= 13; ++q) {
      if (!is_prime(q) || (fm.level() * c.p) % q == 0) continue;
      ++r.cases;
      const QExpansion tq = hecke_Tq(fm, q, c.k, c.psi);
      const CycElem lambda =
          CycElem(1) + char_eval(c.psi, static_cast<long long>(q)) * CycElem(Rational(pow(Integer(q), c.k - 1)));
      for (std::size_t n = 0; n <= tq.precision(); ++n) {
        if (!(tq[n] == lambda * fm[n])) {
          r.fail("F_" + std::to_string(c.m) + " weight " + std::to_string(c.k) + ", q=" + std::to_string(q));
          break;
        }
      }
    }
  }
  return r;
}

PropertyResult level_one_hecke(unsigned max_k) {
  PropertyResult r;
  for (unsigned k = 12; k <= max_k; k += 2) {
    if (dim_modular_forms(k) < 2) continue;
    std::vector<RationalMatrix> t(8);
    for (std::uint64_t n = 1; n <= 7; ++n) t[n] = hecke_matrix(k, n);
    for (std::uint64_t m = 1; m <= 7; ++m) {
      for (std::uint64_t n = m + 1; n <= 7; ++n) {
        ++r.cases;
        if (matrix_multiply(t[m], t[n]) != matrix_multiply(t[n], t[m])) {
          r.fail("T_" + std::to_string(m) + " T_" + std::to_string(n) + " commutation at k=" + std::to_string(k));
        }
        if (gcd_u(m, n) == 1 && hecke_matrix(k, m * n) != matrix_multiply(t[m], t[n])) {
          r.fail("T_" + std::to_string(m * n) + " multiplicativity at k=" + std::to_string(k));
        }
      }
    }
    for (std::uint64_t q : {2, 3}) {
      ++r.cases;
      RationalMatrix want = matrix_multiply(t[q], t[q]);
      const Rational shift(pow(Integer(q), k - 1));
      for (std::size_t i = 0; i < want.size(); ++i) want[i][i] -= shift;
      if (hecke_matrix(k, q * q) != want) r.fail("T_{q^2} relation, q=" + std::to_string(q) + ", k=" + std::to_string(k));
    }
  }
  return r;
}

}  // namespace eiscong::testing
