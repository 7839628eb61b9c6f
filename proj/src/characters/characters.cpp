#include "eiscong/characters.hpp"

#include <charconv>
#include <functional>
#include <numeric>
#include <sstream>

#include "eiscong/error.hpp"
#include "eiscong/padic.hpp"

namespace eiscong {

namespace {

std::uint64_t crt_lift(std::uint64_t residue, std::uint64_t component, std::uint64_t modulus) {
  // x = residue mod component, x = 1 mod (modulus / component).
  const std::uint64_t rest = modulus / component;
  if (rest == 1) return residue % modulus;
  for (std::uint64_t t = 0; t < rest; ++t) {
    const std::uint64_t x = residue + component * t;
    if (x % rest == 1 % rest) return x % modulus;
  }
  throw ComputationError("crt_lift failed");
}

Rational angle_from_log(std::uint64_t j, std::uint64_t order) { return make_rational(Integer(j), Integer(order)); }

Rational frac_part(Rational x) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return x - Rational(fl);
}

using AngleFn = std::function<std::optional<Rational>(std::uint64_t)>;

// Character modulo `modulus` whose angle at each generator is given by `fn`.
DirichletChar from_angles(std::uint64_t modulus, const AngleFn& fn) {
  const auto gens = unit_group_generators(modulus);
  std::vector<std::uint64_t> exps;
  exps.reserve(gens.size());
  for (const auto& g : gens) {
    const auto a = fn(g.value);
    if (!a) throw ComputationError("character undefined at a generator");
    const Rational scaled = frac_part(*a) * Rational(Integer(g.order));
    if (scaled.get_den() != 1) throw ComputationError("character value order does not divide generator order");
    exps.push_back(scaled.get_num().get_ui());
  }
  return DirichletChar::from_exponents(modulus, std::move(exps));
}

}  // namespace

std::vector<UnitGenerator> unit_group_generators(std::uint64_t modulus) {
  if (modulus == 0) throw ParameterError("modulus must be positive");
  std::vector<UnitGenerator> gens;
  for (auto [q, e] : factorize(modulus)) {
    std::uint64_t qe = 1;
    for (unsigned i = 0; i < e; ++i) qe *= q;
    if (q == 2) {
      if (e >= 2) gens.push_back({crt_lift(qe - 1, qe, modulus), 2});
      if (e >= 3) gens.push_back({crt_lift(5, qe, modulus), qe / 4});
    } else {
      gens.push_back({crt_lift(smallest_primitive_root(qe), qe, modulus), qe / q * (q - 1)});
    }
  }
  return gens;
}

DirichletChar::DirichletChar(std::uint64_t modulus, std::vector<std::uint64_t> exponents)
    : modulus_(modulus), generators_(unit_group_generators(modulus)), exponents_(std::move(exponents)) {
  if (modulus_ > kMaxCharModulus) throw ParameterError("character modulus too large: " + std::to_string(modulus_));
  if (exponents_.size() != generators_.size()) {
    throw ParameterError("character mod " + std::to_string(modulus_) + " needs " +
                         std::to_string(generators_.size()) + " exponents");
  }
  order_ = 1;
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const std::uint64_t n = generators_[i].order;
    exponents_[i] %= n;
    order_ = std::lcm(order_, n / std::gcd(exponents_[i], n));
  }
  // Walk the unit group in mixed radix over the generators.
  log_table_.assign(modulus_, -1);
  const std::size_t r = generators_.size();
  std::vector<std::uint64_t> digits(r, 0);
  std::vector<std::uint64_t> step(r);
  // n / gcd(e, n) divides order_, so n divides e * order_.
  for (std::size_t i = 0; i < r; ++i) step[i] = exponents_[i] * order_ / generators_[i].order % order_;
  std::uint64_t a = 1 % modulus_, j = 0;
  for (;;) {
    log_table_[a] = static_cast<std::int64_t>(j);
    std::size_t i = 0;
    for (; i < r; ++i) {
      a = mul_mod(a, generators_[i].value, modulus_);
      j = (j + step[i]) % order_;
      if (++digits[i] < generators_[i].order) break;
      digits[i] = 0;  // wrapped: a and j are back to their prefix values
    }
    if (i == r) break;
  }
  if (modulus_ == 1) log_table_[0] = 0;
  const auto minus_one = log_value(static_cast<long long>(modulus_) - 1);
  parity_ = (minus_one && *minus_one != 0) ? -1 : 1;
}

DirichletChar DirichletChar::trivial(std::uint64_t modulus) {
  return DirichletChar(modulus, std::vector<std::uint64_t>(unit_group_generators(modulus).size(), 0));
}

DirichletChar DirichletChar::from_exponents(std::uint64_t modulus, std::vector<std::uint64_t> exponents) {
  return DirichletChar(modulus, std::move(exponents));
}

DirichletChar DirichletChar::parse(std::string_view text) {
  if (text == "trivial") return trivial(1);
  const auto bad = [&] { return ParameterError("malformed character '" + std::string(text) + "'; expected f:[e1,...]"); };
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw bad();
  std::uint64_t modulus = 0;
  auto head = text.substr(0, colon);
  if (std::from_chars(head.data(), head.data() + head.size(), modulus).ptr != head.data() + head.size() || modulus == 0) {
    throw bad();
  }
  auto body = text.substr(colon + 1);
  if (body.size() < 2 || body.front() != '[' || body.back() != ']') throw bad();
  body = body.substr(1, body.size() - 2);
  std::vector<std::uint64_t> exps;
  while (!body.empty()) {
    const auto comma = body.find(',');
    auto item = body.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    std::uint64_t e = 0;
    if (item.empty() || std::from_chars(item.data(), item.data() + item.size(), e).ptr != item.data() + item.size()) {
      throw bad();
    }
    exps.push_back(e);
    if (comma == std::string_view::npos) break;
    body = body.substr(comma + 1);
  }
  return DirichletChar(modulus, std::move(exps));
}

std::optional<std::uint64_t> DirichletChar::log_value(long long a) const {
  const std::int64_t j = log_table_[reduce_mod(a, modulus_)];
  if (j < 0) return std::nullopt;
  return static_cast<std::uint64_t>(j);
}

std::optional<Rational> DirichletChar::angle(long long a) const {
  const auto j = log_value(a);
  if (!j) return std::nullopt;
  return angle_from_log(*j, order_);
}

std::string DirichletChar::to_string() const {
  if (modulus_ == 1) return "trivial";
  std::ostringstream out;
  out << modulus_ << ":[";
  for (std::size_t i = 0; i < exponents_.size(); ++i) out << (i ? "," : "") << exponents_[i];
  out << ']';
  return out.str();
}

std::vector<DirichletChar> enumerate_chars(std::uint64_t modulus, const CharFilter& filter) {
  const auto gens = unit_group_generators(modulus);
  std::vector<DirichletChar> out;
  std::vector<std::uint64_t> exps(gens.size(), 0);
  for (;;) {
    auto chi = DirichletChar::from_exponents(modulus, exps);
    const bool keep = (!filter.parity || chi.parity() == *filter.parity) &&
                      (!filter.exact_conductor || conductor(chi) == *filter.exact_conductor);
    if (keep) out.push_back(std::move(chi));
    // Last coordinate varies fastest.
    std::size_t i = gens.size();
    while (i > 0) {
      --i;
      if (++exps[i] < gens[i].order) break;
      exps[i] = 0;
      if (i == 0) return out;
    }
    if (gens.empty()) return out;
  }
}

CycElem char_eval(const DirichletChar& chi, long long a) {
  const auto j = chi.log_value(a);
  const auto order = static_cast<unsigned>(chi.order());
  if (!j) return CycElem(Rational(0), order);
  return CycElem::zeta_power(order, static_cast<long>(*j));
}

std::uint64_t conductor(const DirichletChar& chi) {
  const std::uint64_t f = chi.modulus();
  for (std::uint64_t d : divisors(f)) {
    bool trivial_on_kernel = true;
    for (std::uint64_t a = 1 % d; a < f && trivial_on_kernel; a += d) {
      const auto j = chi.log_value(static_cast<long long>(a));
      if (j && *j != 0) trivial_on_kernel = false;
    }
    if (trivial_on_kernel) return d;
  }
  return f;
}

DirichletChar primitive(const DirichletChar& chi) {
  const std::uint64_t f = chi.modulus();
  const std::uint64_t n = conductor(chi);
  if (n == f) return chi;
  return from_angles(n, [&](std::uint64_t g) -> std::optional<Rational> {
    for (std::uint64_t a = g; a < g + n * f; a += n) {
      if (gcd_u(a, f) == 1) return chi.angle(static_cast<long long>(a));
    }
    return std::nullopt;
  });
}

DirichletChar induce(const DirichletChar& chi, std::uint64_t modulus) {
  if (modulus % chi.modulus() != 0) throw ParameterError("induce: target modulus is not a multiple");
  if (modulus == chi.modulus()) return chi;
  return from_angles(modulus, [&](std::uint64_t a) { return chi.angle(static_cast<long long>(a)); });
}

DirichletChar char_product(const DirichletChar& a, const DirichletChar& b) {
  const std::uint64_t m = lcm_u(a.modulus(), b.modulus());
  return from_angles(m, [&](std::uint64_t x) -> std::optional<Rational> {
    const auto u = a.angle(static_cast<long long>(x));
    const auto v = b.angle(static_cast<long long>(x));
    if (!u || !v) return std::nullopt;
    return *u + *v;
  });
}

DirichletChar char_inverse(const DirichletChar& chi) {
  std::vector<std::uint64_t> exps = chi.exponents();
  for (std::size_t i = 0; i < exps.size(); ++i) {
    const std::uint64_t n = chi.generators()[i].order;
    exps[i] = (n - exps[i] % n) % n;
  }
  return DirichletChar::from_exponents(chi.modulus(), std::move(exps));
}

std::uint64_t TeichmullerChar::padic_value(long long a) const {
  if (reduce_mod(a, p) == 0) return 0;
  const std::uint64_t mod = prime_power(p, precision);
  const std::uint64_t w = teichmuller(a, p, precision);
  const long long e = j % static_cast<long long>(p - 1);
  return pow_mod(w, static_cast<std::uint64_t>(e < 0 ? e + static_cast<long long>(p - 1) : e), mod);
}

TeichmullerChar teichmuller_char(std::uint64_t p, long long j, unsigned precision) {
  if (p == 2 || !is_prime(p)) throw ParameterError("teichmuller_char needs an odd prime");
  const auto e = reduce_mod(j, p - 1);
  return TeichmullerChar{DirichletChar::from_exponents(p, {e}), p, j, precision};
}

}  // namespace eiscong
