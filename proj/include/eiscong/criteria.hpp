#pragma once

// Selmer-group bound calculators, the auxiliary character search, external
// eigensystem ingestion and the non-principality criterion for the
// Eisenstein ideal.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "eiscong/characters.hpp"
#include "eiscong/exact.hpp"
#include "eiscong/hecke1.hpp"
#include "eiscong/lfunc.hpp"
#include "eiscong/padic.hpp"

namespace eiscong {

enum class HerbrandStatus { trivial, nontrivial, not_applicable };

std::string to_string(HerbrandStatus s);

/// omega^r-part of the class group of Q(mu_p): trivial iff p does not divide
/// the numerator of B_(p-r). Requires r odd, 1 < r < p - 1.
HerbrandStatus herbrand_eigenspace(std::uint64_t p, unsigned r);

/// f_res (min(v_p(B_{1,omega^(k-1)}), 1) + sum_{l in Sigma - p} min(v_p(1 - l^k), 1)).
long selmer_lower_1mk(std::uint64_t p, unsigned k, const std::set<std::uint64_t>& sigma, unsigned f_res);

enum class LocalFactorMode { full, capped };

/// Correction exponent for adding l to Sigma at twist F(-n):
/// full: v_p(psi(l) l^(n+1) - 1);  capped: min(v_p(l^(n+1) - 1), 1),
/// the latter only for trivial psi and l != 1 mod p.
long local_factor(std::uint64_t l, long n, std::uint64_t p, const DirichletChar& psi, LocalFactorMode mode,
                  unsigned precision = 8);

struct SelmerBoundReport {
  std::uint64_t p = 0;
  unsigned k = 0;
  std::set<std::uint64_t> sigma;
  unsigned residue_degree = 1;
  long lower_bound_1mk = 0;                                // v_p(#H^1_Sigma(Q, F(1-k)))
  long dim_chi_inverse_lower = 0;                          // dim_F H^1_Sigma(Q, F(1-k))
  std::vector<std::pair<std::uint64_t, long>> upper_terms;  // (l, min(v_p(1 - l^(k-2)), 1))
  HerbrandStatus herbrand = HerbrandStatus::not_applicable;
  std::optional<long> dim_chi_upper;                       // dim_F H^1_Sigma(Q, F(k-1))
  std::vector<std::string> notes;
};

/// Requires k even with 2 <= k <= p - 1.
SelmerBoundReport selmer_bounds(std::uint64_t p, unsigned k, const std::set<std::uint64_t>& sigma, unsigned f_res);

struct AuxCharResult {
  std::optional<DirichletChar> phi;
  unsigned m = 0;
  Valuation weight_one_valuation;  // v(L(psi phi, 0))
  Valuation weight_k_valuation;    // v(L(phi^-1, 2 - k))
  std::size_t candidates_tried = 0;
  unsigned context_conductor = 1;
};

/// Conductor of the p-adic context used for characters mod l^m_max
/// alongside psi.
unsigned aux_context_conductor(const DirichletChar& psi, std::uint64_t l, unsigned m_max);

/// First phi (m = 1.., enumeration order) of conductor l^m with
/// phi(-1) = (-1)^(k-1) and both L-values p-adic units.
AuxCharResult aux_char_search(std::uint64_t p, unsigned k, const DirichletChar& psi, std::uint64_t l, unsigned m_max,
                              const PadicContext& ctx);

enum class Verdict { non_principal, inconclusive };

struct CriterionReport {
  EtaValue eta;
  unsigned e = 1;
  unsigned f_res = 1;
  std::vector<EigensystemRecord> records;
  Rational depth_sum_over_e;
  Rational valp_congruence_module;  // f_res * e * v(eta)
  std::optional<long> dim_chi_upper;
  Verdict verdict = Verdict::inconclusive;
  std::vector<std::string> failing_conditions;
  std::string conclusion_text;
};

/// Non-principal iff sum(depth)/e > f_res e v(eta) and dim_chi_upper = 1.
CriterionReport nonprincipality_verdict(const EtaValue& eta, const std::vector<EigensystemRecord>& records, unsigned e,
                                        unsigned f_res, std::optional<long> dim_chi_upper);

/// Reads a JSON array of eigensystem records; source is forced to external.
/// Records carrying eigenvalues have their depth re-derived against Sigma.
std::vector<EigensystemRecord> ingest_records(const std::filesystem::path& path,
                                              const std::set<std::uint64_t>& sigma);
std::vector<EigensystemRecord> parse_records(const std::string& text, const std::set<std::uint64_t>& sigma);

}  // namespace eiscong
