#pragma once

// Level-one Hecke engine: Miller bases of M_k(SL2(Z)), Hecke matrices on the
// cuspidal part, eigensystems modulo p^s and Eisenstein congruence depths.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "eiscong/exact.hpp"
#include "eiscong/qexp.hpp"

namespace eiscong {

/// ceil(k [SL2(Z) : Gamma_0(N)] / 12).
std::uint64_t sturm_bound(unsigned k, std::uint64_t level);

/// dim M_k(SL2(Z)) for even k >= 0.
std::size_t dim_modular_forms(unsigned k);

/// Integer q-expansions a_0..a_P of the Miller basis of M_k: element i has
/// a_j = delta_ij for j < dim M_k. Elements 1.. span S_k.
std::vector<std::vector<Integer>> miller_basis_integer(unsigned k, std::size_t precision);
std::vector<QExpansion> miller_basis(unsigned k, std::size_t precision);

using RationalMatrix = std::vector<std::vector<Rational>>;

/// T_n on the cuspidal Miller basis; column j holds a_1..a_d of T_n f_j.
RationalMatrix hecke_matrix(unsigned k, std::uint64_t n);
/// Same, from a cuspidal basis known to precision >= d n.
RationalMatrix hecke_matrix(unsigned k, std::uint64_t n, const std::vector<std::vector<Integer>>& cusp_basis);

RationalMatrix matrix_multiply(const RationalMatrix& a, const RationalMatrix& b);
/// Monic characteristic polynomial, coefficients ascending.
std::vector<Rational> charpoly(const RationalMatrix& m);

enum class RecordSource { internal, external };

struct EigensystemRecord {
  unsigned weight = 0;
  std::uint64_t level = 1;
  std::uint64_t p = 0;
  std::string prime_label;
  std::map<std::uint64_t, Integer> eigenvalues;  // q -> residue mod p^precision
  unsigned precision = 1;
  unsigned depth = 0;
  bool capped = false;
  RecordSource source = RecordSource::internal;
};

struct EigensystemScan {
  std::vector<EigensystemRecord> records;
  std::vector<std::string> skipped;
};

/// Largest p accepted by the exhaustive root scan.
inline constexpr std::uint64_t kMaxRootScanPrime = 1'000'000;

/// Eigenvalues with T_2-eigenvalue a simple root of charpoly(T_2) in F_p,
/// lifted to Z/p^s, for every prime q <= max(Sturm bound, 13).
EigensystemScan eigensystems_mod(unsigned k, std::uint64_t p, unsigned s);

/// Depth: min over recorded q not in Sigma of v_p(a_q - 1 - q^(k-1)),
/// capped at s_max.
EigensystemScan depth_scan(unsigned k, std::uint64_t p, const std::set<std::uint64_t>& sigma, unsigned s_max);

/// Depth of a record against the trivial-character Eisenstein eigenvalues.
unsigned record_depth(const EigensystemRecord& record, const std::set<std::uint64_t>& sigma, bool& capped);

}  // namespace eiscong
