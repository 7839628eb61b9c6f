#include "eiscong/qexp.hpp"

#include <algorithm>
#include <numeric>

#include "eiscong/error.hpp"
#include "eiscong/hecke1.hpp"

namespace eiscong {

namespace {

std::uint64_t ipow(std::uint64_t base, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

unsigned valuation_u(std::uint64_t n, std::uint64_t p) {
  unsigned v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

CycElem integer_elem(const Integer& n) { return CycElem(Rational(n)); }

}  // namespace

QExpansion::QExpansion(std::vector<CycElem> coeffs, int weight, std::uint64_t level, DirichletChar character,
                       std::string label)
    : coeffs_(std::move(coeffs)),
      weight_(weight),
      level_(level),
      character_(std::move(character)),
      label_(std::move(label)) {
  if (coeffs_.empty()) throw ParameterError("q-expansion needs at least the constant term");
  if (level_ == 0 || level_ % character_.modulus() != 0) {
    throw ParameterError("q-expansion character modulus must divide the level");
  }
  field_ = 1;
  for (const auto& c : coeffs_) field_ = static_cast<unsigned>(lcm_u(field_, c.conductor()));
  for (auto& c : coeffs_) {
    if (c.conductor() != field_) c = c.lift(field_);
  }
}

QExpansion QExpansion::one(std::size_t precision) {
  std::vector<CycElem> c(precision + 1);
  c[0] = CycElem(1);
  return QExpansion(std::move(c), 0, 1, DirichletChar::trivial(1), "1");
}

QExpansion QExpansion::scaled(const CycElem& c) const {
  std::vector<CycElem> out;
  out.reserve(coeffs_.size());
  for (const auto& a : coeffs_) out.push_back(a.is_zero() ? a : a * c);
  return QExpansion(std::move(out), weight_, level_, character_, label_);
}

QExpansion QExpansion::relabeled(std::string label) const {
  QExpansion out = *this;
  out.label_ = std::move(label);
  return out;
}

QExpansion operator-(const QExpansion& a, const QExpansion& b) {
  const std::size_t n = std::min(a.precision(), b.precision()) + 1;
  std::vector<CycElem> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(a[i] - b[i]);
  return QExpansion(std::move(out), a.weight_, a.level_, a.character_, a.label_ + " - " + b.label_);
}

std::size_t default_precision(unsigned k, std::uint64_t level) {
  return std::max<std::size_t>(2 * sturm_bound(k, level), 50);
}

QExpansion eisenstein_qexp(unsigned l, const DirichletChar& phi, std::size_t precision) {
  if (l == 0) throw ParameterError("eisenstein: weight must be positive");
  const DirichletChar prim = primitive(phi);
  const int want = l % 2 == 0 ? 1 : -1;
  if (prim.parity() != want) {
    throw ParameterError("eisenstein: character parity " + std::to_string(prim.parity()) + " does not match (-1)^" +
                         std::to_string(l));
  }
  if (l == 2 && prim.is_trivial()) throw ParameterError("eisenstein: E_2 with trivial character is not modular");

  const auto order = static_cast<unsigned>(prim.order());
  // sums[n][j]: sum of d^(l-1) over divisors d of n with phi(d) = zeta^j.
  std::vector<std::vector<Integer>> sums(precision + 1, std::vector<Integer>(order));
  for (std::uint64_t d = 1; d <= precision; ++d) {
    const auto j = prim.log_value(static_cast<long long>(d));
    if (!j) continue;
    const Integer dk = pow(Integer(d), l - 1);
    for (std::uint64_t n = d; n <= precision; n += d) sums[n][*j] += dk;
  }
  std::vector<CycElem> coeffs;
  coeffs.reserve(precision + 1);
  coeffs.push_back(l_value_nonpositive(prim, l).scaled(Rational(1, 2)));
  for (std::size_t n = 1; n <= precision; ++n) {
    std::vector<Rational> poly(sums[n].begin(), sums[n].end());
    coeffs.push_back(CycElem::from_polynomial(order, std::move(poly)));
  }
  return QExpansion(std::move(coeffs), static_cast<int>(l), prim.modulus(), prim,
                    "E_" + std::to_string(l) + "(" + prim.to_string() + ")");
}

QExpansion v_operator(const QExpansion& f, std::uint64_t m) {
  if (m == 0) throw ParameterError("V operator needs a positive index");
  std::vector<CycElem> out(f.precision() + 1, CycElem(Rational(0), f.field()));
  for (std::size_t n = 0; n <= f.precision(); n += m) out[n] = f[n / m];
  const std::uint64_t level = f.level() * m;
  return QExpansion(std::move(out), f.weight(), level, induce(f.character(), level),
                    "V_" + std::to_string(m) + "(" + f.label() + ")");
}

QExpansion multiply(const QExpansion& f, const QExpansion& g) {
  const std::size_t prec = std::min(f.precision(), g.precision());
  const unsigned field = static_cast<unsigned>(lcm_u(f.field(), g.field()));
  std::vector<CycElem> out(prec + 1, CycElem(Rational(0), field));
  for (std::size_t i = 0; i <= prec; ++i) {
    if (f[i].is_zero()) continue;
    for (std::size_t j = 0; i + j <= prec; ++j) {
      if (g[j].is_zero()) continue;
      out[i + j] += f[i] * g[j];
    }
  }
  const std::uint64_t level = lcm_u(f.level(), g.level());
  return QExpansion(std::move(out), f.weight() + g.weight(), level,
                    induce(char_product(f.character(), g.character()), level),
                    "(" + f.label() + ")*(" + g.label() + ")");
}

QExpansion hecke_Tq(const QExpansion& f, std::uint64_t q, unsigned k, const DirichletChar& psi) {
  if (!is_prime(q)) throw ParameterError("T_q needs a prime q");
  if (f.level() % q == 0) throw ParameterError("T_q with q dividing the level (U_q) is not supported");
  const std::size_t prec = f.precision() / q;
  const CycElem scale = char_eval(psi, static_cast<long long>(q)) * integer_elem(pow(Integer(q), k - 1));
  std::vector<CycElem> out;
  out.reserve(prec + 1);
  for (std::size_t n = 0; n <= prec; ++n) {
    CycElem c = f[n * q];
    if (n % q == 0) c += scale * f[n / q];
    out.push_back(std::move(c));
  }
  return QExpansion(std::move(out), f.weight(), f.level(), f.character(),
                    "T_" + std::to_string(q) + "(" + f.label() + ")");
}

QExpansion build_Fm(const DirichletChar& psi, unsigned k, std::uint64_t l, unsigned m, std::size_t precision) {
  if (m == 0) throw ParameterError("F_m needs m >= 1");
  if (!is_prime(l)) throw ParameterError("F_m: l must be prime");
  const DirichletChar prim = primitive(psi);
  if (prim.modulus() % l == 0) throw ParameterError("F_m: l must not divide the conductor of psi");
  const QExpansion e = eisenstein_qexp(k, prim, precision);
  const std::uint64_t inner = ipow(l, m - 1);
  const std::uint64_t outer = inner * l;
  const CycElem scale = char_eval(prim, static_cast<long long>(l)) * integer_elem(pow(Integer(l), k));
  std::vector<CycElem> out(precision + 1, CycElem(Rational(0), e.field()));
  for (std::size_t n = 0; n <= precision; n += inner) out[n] = e[n / inner];
  for (std::size_t n = 0; n <= precision; n += outer) out[n] -= scale * e[n / outer];
  const std::uint64_t level = prim.modulus() * outer;
  return QExpansion(std::move(out), static_cast<int>(k), level, induce(prim, level), "F_" + std::to_string(m));
}

QExpansion build_G(const DirichletChar& psi, unsigned k, const DirichletChar& phi, std::size_t precision) {
  if (k < 3) throw ParameterError("G needs k >= 3");
  const DirichletChar weight_one = primitive(char_product(psi, phi));
  const QExpansion e1 = eisenstein_qexp(1, weight_one, precision);
  const QExpansion ek = eisenstein_qexp(k - 1, char_inverse(primitive(phi)), precision);
  return multiply(e1, ek).relabeled("G");
}

// ---- cusps -------------------------------------------------------------------

std::vector<CuspClass> cusp_classes(std::uint64_t level) {
  if (level == 0) throw ParameterError("cusp_classes: level must be positive");
  std::vector<CuspClass> out;
  for (std::uint64_t v : divisors(level)) {
    const std::uint64_t g = gcd_u(v, level / v);
    for (std::uint64_t r = 0; r < g; ++r) {
      if (gcd_u(r, g) != 1) continue;
      std::uint64_t u = r == 0 ? g : r;
      while (gcd_u(u, v) != 1) u += g;
      out.push_back({static_cast<long long>(u), v, level});
    }
  }
  return out;
}

namespace {

// Constant term of E_l(phi) at u/v: conj(phi)(u) a_0 when the conductor of
// phi divides v, zero at the other cusps (l >= 2). In weight one the cusps
// with gcd(v, cond) = 1 also carry a constant term; that value is not in the
// coefficient field of phi and is reported as nullopt.
std::optional<CycElem> eisenstein_constant(const EisensteinForm& form, const CuspClass& cusp) {
  const DirichletChar prim = primitive(form.character);
  const std::uint64_t cond = prim.modulus();
  const std::uint64_t g = gcd_u(cusp.v, cond);
  if (g == cond) {
    const CycElem a0 = l_value_nonpositive(prim, form.weight).scaled(Rational(1, 2));
    return char_eval(char_inverse(prim), cusp.u) * a0;
  }
  if (form.weight == 1 && g == 1) return std::nullopt;
  return CycElem(0);
}

// E(Mz) at u/v has constant term (g/M)^k c_E(Mu/g : v/g), g = gcd(M, v).
CycElem fm_constant(const FmForm& form, const CuspClass& cusp) {
  const DirichletChar prim = primitive(form.psi);
  const std::uint64_t cond = prim.modulus();
  if (cusp.v % cond != 0) return CycElem(0);
  const CycElem a0 = l_value_nonpositive(prim, form.k).scaled(Rational(1, 2));
  const DirichletChar inv = char_inverse(prim);
  const unsigned t = valuation_u(cusp.v, form.l);
  const auto term = [&](unsigned j) {
    const unsigned gj = std::min(t, j);
    const CycElem width(rational_pow(Rational(form.l), static_cast<long>(form.k) * (static_cast<long>(gj) - j)));
    const auto ratio = static_cast<long long>(ipow(form.l, j - gj));
    return width * char_eval(inv, ratio) * char_eval(inv, cusp.u) * a0;
  };
  const CycElem scale =
      char_eval(prim, static_cast<long long>(form.l)) * integer_elem(pow(Integer(form.l), form.k));
  return term(form.m - 1) - scale * term(form.m);
}

std::optional<CycElem> atom_constant(const FormAtom& form, const CuspClass& cusp) {
  return std::visit(
      [&](const auto& f) -> std::optional<CycElem> {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, EisensteinForm>) {
          return eisenstein_constant(f, cusp);
        } else if constexpr (std::is_same_v<T, FmForm>) {
          return fm_constant(f, cusp);
        } else {
          CycElem prod(1);
          bool unknown = false;
          for (const auto& factor : f.factors) {
            const auto c = eisenstein_constant(factor, cusp);
            if (!c) {
              unknown = true;
            } else if (c->is_zero()) {
              return CycElem(0);
            } else {
              prod *= *c;
            }
          }
          if (unknown) return std::nullopt;
          return prod;
        }
      },
      form);
}

}  // namespace

CycElem cusp_constant_term(const FormAtom& form, const CuspClass& cusp) {
  const auto c = atom_constant(form, cusp);
  if (!c) throw ComputationError("constant term of a weight-one series at a cusp coprime to its conductor");
  return *c;
}

CycElem cusp_constant_term(const LinearForm& form, const CuspClass& cusp) {
  CycElem total(0);
  for (const auto& [coeff, atom] : form.terms) total += coeff * cusp_constant_term(atom, cusp);
  return total;
}

// ---- H -------------------------------------------------------------------------

namespace {

Valuation valuation_or_bound(const CycElem& x, const PadicContext& ctx) {
  try {
    return valp_cyc(x, ctx);
  } catch (const IndeterminateValuation&) {
    return Valuation::infinity();
  }
}

}  // namespace

HConstruction build_H(const DirichletChar& psi, unsigned k, std::uint64_t l, unsigned m, const DirichletChar& phi,
                      const std::set<std::uint64_t>& sigma, const PadicContext& ctx, std::size_t precision) {
  const DirichletChar prim_psi = primitive(psi);
  const DirichletChar prim_phi = primitive(phi);
  const std::uint64_t n = prim_psi.modulus();
  if (!is_prime(l)) throw ParameterError("build_H: l must be prime");
  if (l == ctx.p || n % l == 0 || n % ctx.p == 0) throw ParameterError("build_H: l must not divide N p");
  if (!sigma.contains(ctx.p) || !sigma.contains(l)) throw ParameterError("build_H: Sigma must contain p and l");
  for (std::uint64_t q : sigma) {
    if (q != ctx.p && q != l && n % q != 0) {
      throw ParameterError("build_H: Sigma - {p} must be {l} plus primes dividing N; found " + std::to_string(q));
    }
  }
  if (m == 0 || prim_phi.modulus() != ipow(l, m)) {
    throw ParameterError("build_H: phi must have conductor exactly l^m");
  }
  const int want = (k - 1) % 2 == 0 ? 1 : -1;
  if (prim_phi.parity() != want) throw ParameterError("build_H: phi must have parity (-1)^(k-1)");
  if (ipow(l, m - 1) > precision) throw ParameterError("build_H: precision must reach l^(m-1)");

  const DirichletChar psi_phi = primitive(char_product(prim_psi, prim_phi));
  const DirichletChar phi_inv = char_inverse(prim_phi);
  const CycElem l_product = l_value_nonpositive(psi_phi, 1) * l_value_nonpositive(phi_inv, k - 1);
  const Valuation product_val = valuation_or_bound(l_product, ctx);
  if (product_val != Valuation(0)) {
    throw ParameterError("build_H: L(psi phi, 0) L(phi^-1, 2-k) is not a p-unit for phi=" + prim_phi.to_string());
  }

  HConstruction out{.fm = build_Fm(prim_psi, k, l, m, precision),
                    .g = build_G(prim_psi, k, prim_phi, precision),
                    .h = QExpansion::one(0),
                    .eta = eta(prim_psi, k, sigma, ctx),
                    .scalar = CycElem(0),
                    .h_form = {},
                    .l_value_product_valuation = product_val,
                    .first_nonintegral_index = std::nullopt,
                    .first_noncongruent_index = std::nullopt,
                    .cusp_constant_terms = {}};
  out.scalar = out.fm[0] / out.g[0];
  const CycElem expected = -out.eta.value / (CycElem(static_cast<long>(2 * k)) * out.g[0]);
  if (!(out.scalar == expected)) throw ComputationError("build_H: a_0(F_m) disagrees with -eta/(2k)");
  out.h = (out.fm - out.g.scaled(out.scalar)).relabeled("H");

  out.h_form.terms.push_back({CycElem(1), FmForm{prim_psi, k, l, m}});
  out.h_form.terms.push_back(
      {-out.scalar, ProductForm{{EisensteinForm{1, psi_phi}, EisensteinForm{k - 1, phi_inv}}}});

  out.constant_term_zero = out.h[0].is_zero();
  out.integral = true;
  out.congruent_to_fm = true;
  if (out.eta.valuation.is_infinite()) throw ComputationError("build_H: eta vanishes");
  const long eta_val = out.eta.valuation.value();
  for (std::size_t i = 0; i <= out.h.precision(); ++i) {
    if (out.integral && !has_valuation_at_least(out.h[i], 0, ctx)) {
      out.integral = false;
      out.first_nonintegral_index = i;
    }
    if (out.congruent_to_fm && !has_valuation_at_least(out.h[i] - out.fm[i], eta_val, ctx)) {
      out.congruent_to_fm = false;
      out.first_noncongruent_index = i;
    }
  }
  out.unit_index = static_cast<std::size_t>(ipow(l, m - 1));
  out.unit_coefficient = valuation_or_bound(out.h[out.unit_index], ctx) == Valuation(0);

  out.cuspidal = true;
  for (const auto& cusp : cusp_classes(out.h.level())) {
    CycElem c = cusp_constant_term(out.h_form, cusp);
    if (!c.is_zero()) out.cuspidal = false;
    out.cusp_constant_terms.emplace_back(cusp, std::move(c));
  }
  return out;
}

}  // namespace eiscong
