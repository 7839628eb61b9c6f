#pragma once

// JSON rendering of every result type (all numbers as exact decimal
// strings, stable key order) and the end-to-end report pipeline.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>

#include <json.hpp>

#include "eiscong/criteria.hpp"
#include "eiscong/hecke1.hpp"
#include "eiscong/lfunc.hpp"
#include "eiscong/qexp.hpp"

namespace eiscong {

using Json = nlohmann::ordered_json;

Json to_json(const CycElem& x);
Json to_json(const Valuation& v);
Json to_json(const DirichletChar& chi);
Json to_json(const EtaValue& eta);
Json to_json(const QExpansion& f);
Json to_json(const EigensystemRecord& r);
Json to_json(const EigensystemScan& scan);
Json to_json(const SelmerBoundReport& r);
Json to_json(const AuxCharResult& r);
/// Verification summary; coefficients of H only when requested.
Json to_json(const HConstruction& h, bool with_coefficients = false);
Json to_json(const CriterionReport& r);
Json to_json(const KummerReport& r);
Json to_json(const PadicContext& ctx);

struct ReportOptions {
  std::uint64_t p = 0;
  unsigned k = 0;
  DirichletChar psi;
  std::set<std::uint64_t> sigma;
  std::optional<std::uint64_t> l;       // auxiliary prime; default: the prime of Sigma - {p} not dividing N
  unsigned m_max = 1;
  std::optional<std::size_t> precision;  // q-expansion length for H
  unsigned padic_precision = 6;
  unsigned depth_cap = 3;
  std::optional<std::filesystem::path> records;
  bool assume_nontrivial_extension = false;
  unsigned e = 1;
  unsigned f_res = 1;
};

/// Sections {parameters, eta, selmer, aux_char, h_construction, depths,
/// criterion}; a failing section holds {"error": ...} and the rest proceed.
/// Malformed parameters (p not prime, p not in Sigma) throw ParameterError.
Json full_report(const ReportOptions& options);

/// The weight-32, p = 37, Sigma = {31, 37} preset with the bundled records.
ReportOptions example37_options(const std::filesystem::path& fixture);

}  // namespace eiscong
