#pragma once

// Truncated q-expansions with weight/level/character metadata, the
// Eisenstein series E_l(phi), V and Hecke operators, and the explicit forms
// F_m, G and H whose combination is a cusp form congruent to E_k(psi).

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "eiscong/characters.hpp"
#include "eiscong/exact.hpp"
#include "eiscong/lfunc.hpp"
#include "eiscong/padic.hpp"

namespace eiscong {

class QExpansion {
 public:
  /// Coefficients a_0..a_P; all are lifted into one cyclotomic field.
  QExpansion(std::vector<CycElem> coeffs, int weight, std::uint64_t level, DirichletChar character,
             std::string label);

  /// The constant series 1 (weight 0, level 1).
  static QExpansion one(std::size_t precision);

  std::size_t precision() const { return coeffs_.size() - 1; }
  const CycElem& operator[](std::size_t n) const { return coeffs_.at(n); }
  std::span<const CycElem> coefficients() const { return coeffs_; }
  /// Conductor of the coefficient field.
  unsigned field() const { return field_; }
  int weight() const { return weight_; }
  std::uint64_t level() const { return level_; }
  const DirichletChar& character() const { return character_; }
  const std::string& label() const { return label_; }

  QExpansion scaled(const CycElem& c) const;
  QExpansion relabeled(std::string label) const;
  /// Coefficientwise difference at the smaller precision; metadata of `a`.
  friend QExpansion operator-(const QExpansion& a, const QExpansion& b);

 private:
  std::vector<CycElem> coeffs_;
  unsigned field_ = 1;
  int weight_ = 0;
  std::uint64_t level_ = 1;
  DirichletChar character_;
  std::string label_;
};

/// max(2 * Sturm bound, 50).
std::size_t default_precision(unsigned k, std::uint64_t level);

/// E_l(phi) = L(phi, 1-l)/2 + sum_n (sum_{d|n} phi(d) d^(l-1)) q^n, phi taken
/// primitive. Requires phi(-1) = (-1)^l; rejects l = 2 with phi trivial.
QExpansion eisenstein_qexp(unsigned l, const DirichletChar& phi, std::size_t precision);

/// f(Mz): a_n -> a_{n/M}.
QExpansion v_operator(const QExpansion& f, std::uint64_t m);

/// Cauchy product truncated at the smaller precision.
QExpansion multiply(const QExpansion& f, const QExpansion& g);

/// T_q for a prime q coprime to the level; output precision floor(P/q).
QExpansion hecke_Tq(const QExpansion& f, std::uint64_t q, unsigned k, const DirichletChar& psi);

/// F_m = E_k(psi)(l^(m-1) z) - psi(l) l^k E_k(psi)(l^m z).
QExpansion build_Fm(const DirichletChar& psi, unsigned k, std::uint64_t l, unsigned m, std::size_t precision);

/// G = E_1(psi phi) * E_(k-1)(phi^-1).
QExpansion build_G(const DirichletChar& psi, unsigned k, const DirichletChar& phi, std::size_t precision);

// ---- constant terms at cusps -----------------------------------------------

/// The cusp [u:v] of Gamma_0(level).
struct CuspClass {
  long long u;
  std::uint64_t v;
  std::uint64_t level;
};

/// Representatives [u:v], v | level, u over units mod gcd(v, level/v).
std::vector<CuspClass> cusp_classes(std::uint64_t level);

struct EisensteinForm {
  unsigned weight;
  DirichletChar character;
};

struct FmForm {
  DirichletChar psi;
  unsigned k;
  std::uint64_t l;
  unsigned m;
};

struct ProductForm {
  std::vector<EisensteinForm> factors;
};

using FormAtom = std::variant<EisensteinForm, FmForm, ProductForm>;

struct LinearForm {
  std::vector<std::pair<CycElem, FormAtom>> terms;
};

/// Closed-form constant term at [u:v].
CycElem cusp_constant_term(const FormAtom& form, const CuspClass& cusp);
CycElem cusp_constant_term(const LinearForm& form, const CuspClass& cusp);

// ---- the cusp form H --------------------------------------------------------

struct HConstruction {
  QExpansion fm;
  QExpansion g;
  QExpansion h;
  EtaValue eta;
  CycElem scalar;         // H = F_m - scalar * G
  LinearForm h_form;      // H as a combination, for cusp constant terms
  Valuation l_value_product_valuation;  // of L(psi phi, 0) L(phi^-1, 2-k)

  bool constant_term_zero = false;
  bool integral = false;
  std::optional<std::size_t> first_nonintegral_index;
  std::size_t unit_index = 0;  // l^(m-1)
  bool unit_coefficient = false;
  bool congruent_to_fm = false;
  std::optional<std::size_t> first_noncongruent_index;
  std::vector<std::pair<CuspClass, CycElem>> cusp_constant_terms;
  bool cuspidal = false;

  bool verified() const {
    return constant_term_zero && integral && unit_coefficient && congruent_to_fm && cuspidal;
  }
};

/// Builds H and checks: a_0(H) = 0; p-integrality; a_{l^(m-1)}(H) a p-unit;
/// H = F_m mod eta; zero constant term at every cusp of level N l^m.
/// Sigma must be {p, l} plus primes dividing the conductor of psi.
HConstruction build_H(const DirichletChar& psi, unsigned k, std::uint64_t l, unsigned m, const DirichletChar& phi,
                      const std::set<std::uint64_t>& sigma, const PadicContext& ctx, std::size_t precision);

}  // namespace eiscong
