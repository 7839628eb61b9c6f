#include "eiscong/report.hpp"

#include <algorithm>

#include "eiscong/error.hpp"

namespace eiscong {

namespace {

std::string num(std::uint64_t n) { return std::to_string(n); }
std::string num(long n) { return std::to_string(n); }

Json residue_poly_json(const ResiduePoly& poly) {
  Json out = Json::array();
  for (std::uint64_t c : poly) out.push_back(num(c));
  return out;
}

std::string set_text(const std::set<std::uint64_t>& s) {
  std::string out;
  for (std::uint64_t x : s) out += (out.empty() ? "" : ",") + num(x);
  return out;
}

}  // namespace

Json to_json(const CycElem& x) { return x.to_string(); }

Json to_json(const Valuation& v) { return v.to_string(); }

Json to_json(const DirichletChar& chi) {
  Json out;
  out["character"] = chi.to_string();
  out["modulus"] = num(chi.modulus());
  out["conductor"] = num(conductor(chi));
  out["order"] = num(chi.order());
  out["parity"] = chi.parity() == 1 ? "even" : "odd";
  return out;
}

Json to_json(const PadicContext& ctx) {
  Json out;
  out["p"] = num(ctx.p);
  out["field_conductor"] = num(static_cast<std::uint64_t>(ctx.conductor));
  out["precision"] = num(static_cast<std::uint64_t>(ctx.precision));
  out["residue_degree"] = num(static_cast<std::uint64_t>(ctx.residue_degree));
  out["ramification"] = num(static_cast<std::uint64_t>(ctx.ramification));
  out["prime_factor_mod_p"] = residue_poly_json(ctx.prime_factor);
  return out;
}

Json to_json(const EtaValue& eta) {
  Json out;
  out["p"] = num(eta.p);
  out["value"] = to_json(eta.value);
  out["valuation"] = to_json(eta.valuation);
  Json factors = Json::array();
  for (const auto& f : eta.factors) {
    Json j;
    j["factor"] = f.description;
    j["value"] = to_json(f.value);
    j["valuation"] = to_json(f.valuation);
    factors.push_back(std::move(j));
  }
  out["factors"] = std::move(factors);
  out["warnings"] = eta.warnings;
  return out;
}

Json to_json(const QExpansion& f) {
  Json out;
  out["label"] = f.label();
  out["weight"] = num(static_cast<long>(f.weight()));
  out["level"] = num(f.level());
  out["character"] = f.character().to_string();
  out["precision"] = num(static_cast<std::uint64_t>(f.precision()));
  out["field_conductor"] = num(static_cast<std::uint64_t>(f.field()));
  Json coeffs = Json::array();
  for (const auto& c : f.coefficients()) coeffs.push_back(c.to_string());
  out["coefficients"] = std::move(coeffs);
  return out;
}

Json to_json(const EigensystemRecord& r) {
  Json out;
  out["weight"] = num(static_cast<std::uint64_t>(r.weight));
  out["level"] = num(r.level);
  out["p"] = num(r.p);
  out["prime_label"] = r.prime_label;
  Json ev = Json::object();
  for (const auto& [q, lambda] : r.eigenvalues) ev[num(q)] = to_string(lambda);
  out["eigenvalues"] = std::move(ev);
  out["precision"] = num(static_cast<std::uint64_t>(r.precision));
  out["depth"] = num(static_cast<std::uint64_t>(r.depth));
  out["capped"] = r.capped;
  out["source"] = r.source == RecordSource::internal ? "internal" : "external";
  return out;
}

Json to_json(const EigensystemScan& scan) {
  Json out;
  Json recs = Json::array();
  for (const auto& r : scan.records) recs.push_back(to_json(r));
  out["records"] = std::move(recs);
  out["skipped"] = scan.skipped;
  out["method"] = "eigenvalues at primes q <= max(Sturm bound, 13); depths verified up to that bound";
  return out;
}

Json to_json(const SelmerBoundReport& r) {
  Json out;
  out["p"] = num(r.p);
  out["k"] = num(static_cast<std::uint64_t>(r.k));
  out["sigma"] = set_text(r.sigma);
  out["residue_field_degree"] = num(static_cast<std::uint64_t>(r.residue_degree));
  out["lower_bound_1mk"] = num(r.lower_bound_1mk);
  out["dim_chi_inverse_lower"] = num(r.dim_chi_inverse_lower);
  Json terms = Json::array();
  for (const auto& [l, t] : r.upper_terms) terms.push_back(Json{{"l", num(l)}, {"term", num(t)}});
  out["upper_bound_km1_terms"] = std::move(terms);
  out["herbrand_status"] = to_string(r.herbrand);
  out["dim_chi_upper"] = r.dim_chi_upper ? Json(num(*r.dim_chi_upper)) : Json("unknown");
  out["notes"] = r.notes;
  return out;
}

Json to_json(const AuxCharResult& r) {
  Json out;
  out["found"] = r.phi.has_value();
  if (r.phi) {
    out["phi"] = to_json(*r.phi);
    out["m"] = num(static_cast<std::uint64_t>(r.m));
    out["certificate"] = Json{{"valuation_L_psi_phi_0", to_json(r.weight_one_valuation)},
                              {"valuation_L_phi_inv_2_minus_k", to_json(r.weight_k_valuation)}};
  }
  out["candidates_tried"] = num(static_cast<std::uint64_t>(r.candidates_tried));
  out["context_conductor"] = num(static_cast<std::uint64_t>(r.context_conductor));
  return out;
}

Json to_json(const HConstruction& h, bool with_coefficients) {
  Json out;
  out["level"] = num(h.h.level());
  out["weight"] = num(static_cast<long>(h.h.weight()));
  out["precision"] = num(static_cast<std::uint64_t>(h.h.precision()));
  out["scalar"] = to_json(h.scalar);
  out["a0_G"] = to_json(h.g[0]);
  out["a0_Fm"] = to_json(h.fm[0]);
  out["l_value_product_valuation"] = to_json(h.l_value_product_valuation);
  out["eta_valuation"] = to_json(h.eta.valuation);
  Json checks;
  checks["constant_term_zero"] = h.constant_term_zero;
  checks["p_integral"] = h.integral;
  if (h.first_nonintegral_index) checks["first_nonintegral_index"] = num(static_cast<std::uint64_t>(*h.first_nonintegral_index));
  checks["unit_coefficient_index"] = num(static_cast<std::uint64_t>(h.unit_index));
  checks["unit_coefficient"] = h.unit_coefficient;
  checks["congruent_to_Fm_mod_eta"] = h.congruent_to_fm;
  if (h.first_noncongruent_index) {
    checks["first_noncongruent_index"] = num(static_cast<std::uint64_t>(*h.first_noncongruent_index));
  }
  checks["cuspidal"] = h.cuspidal;
  out["checks"] = std::move(checks);
  out["verified"] = h.verified();
  Json cusps = Json::array();
  for (const auto& [c, v] : h.cusp_constant_terms) {
    cusps.push_back(Json{{"cusp", std::to_string(c.u) + ":" + num(c.v)}, {"constant_term", to_json(v)}});
  }
  out["cusp_constant_terms"] = std::move(cusps);
  out["a_unit_index_H"] = to_json(h.h[h.unit_index]);
  if (with_coefficients) out["H"] = to_json(h.h);
  return out;
}

Json to_json(const CriterionReport& r) {
  Json out;
  out["eta_valuation"] = to_json(r.eta.valuation);
  out["e"] = num(static_cast<std::uint64_t>(r.e));
  out["f_res"] = num(static_cast<std::uint64_t>(r.f_res));
  out["record_count"] = num(static_cast<std::uint64_t>(r.records.size()));
  Json depths = Json::array();
  for (const auto& rec : r.records) depths.push_back(num(static_cast<std::uint64_t>(rec.depth)));
  out["depths"] = std::move(depths);
  out["depth_sum_over_e"] = to_string(r.depth_sum_over_e);
  out["valp_congruence_module"] = to_string(r.valp_congruence_module);
  out["dim_chi_upper"] = r.dim_chi_upper ? Json(num(*r.dim_chi_upper)) : Json("unknown");
  out["verdict"] = r.verdict == Verdict::non_principal ? "non-principal" : "inconclusive";
  out["failing_conditions"] = r.failing_conditions;
  out["conclusion_text"] = r.conclusion_text;
  return out;
}

Json to_json(const KummerReport& r) {
  Json out;
  out["p"] = num(r.p);
  out["k"] = num(static_cast<std::uint64_t>(r.k));
  out["b1_omega_mod_p"] = num(r.lhs);
  out["bk_over_k_mod_p"] = num(r.rhs);
  out["congruent"] = r.congruent;
  return out;
}

// ---- pipeline ------------------------------------------------------------------

namespace {

template <typename F>
void section(Json& report, std::vector<std::string>& errors, const char* name, F&& body) {
  try {
    report[name] = body();
  } catch (const std::exception& err) {
    report[name] = Json{{"error", err.what()}};
    errors.push_back(std::string(name) + ": " + err.what());
  }
}

std::optional<std::uint64_t> default_aux_prime(const ReportOptions& o, std::uint64_t n) {
  if (o.l) return o.l;
  for (std::uint64_t q : o.sigma) {
    if (q != o.p && n % q != 0) return q;
  }
  return std::nullopt;
}

}  // namespace

Json full_report(const ReportOptions& o) {
  if (!is_prime(o.p) || o.p == 2) throw ParameterError("report: p must be an odd prime");
  if (!o.sigma.contains(o.p)) throw ParameterError("report: p must belong to Sigma");
  for (std::uint64_t q : o.sigma) {
    if (!is_prime(q)) throw ParameterError("report: Sigma entry " + num(q) + " is not prime");
  }
  if (o.k < 2) throw ParameterError("report: k must be >= 2");
  const DirichletChar psi = primitive(o.psi);
  const std::uint64_t n = psi.modulus();
  const auto l = default_aux_prime(o, n);

  Json report;
  std::vector<std::string> errors;
  Json params;
  params["p"] = num(o.p);
  params["k"] = num(static_cast<std::uint64_t>(o.k));
  params["psi"] = psi.to_string();
  params["sigma"] = set_text(o.sigma);
  params["aux_prime"] = l ? Json(num(*l)) : Json("none");
  params["m_max"] = num(static_cast<std::uint64_t>(o.m_max));
  params["padic_precision"] = num(static_cast<std::uint64_t>(o.padic_precision));
  params["depth_cap"] = num(static_cast<std::uint64_t>(o.depth_cap));
  params["e"] = num(static_cast<std::uint64_t>(o.e));
  params["f_res"] = num(static_cast<std::uint64_t>(o.f_res));
  params["records"] = o.records ? Json(o.records->filename().string()) : Json("none");
  params["assume_nontrivial_extension"] = o.assume_nontrivial_extension;

  const unsigned field = l ? aux_context_conductor(psi, *l, o.m_max) : static_cast<unsigned>(psi.order());
  const PadicContext ctx = padic_context(o.p, field, o.padic_precision);
  params["padic_context"] = to_json(ctx);
  report["parameters"] = std::move(params);

  std::optional<EtaValue> eta_value;
  section(report, errors, "eta", [&] {
    eta_value = eta(psi, o.k, o.sigma, ctx);
    return to_json(*eta_value);
  });

  std::optional<SelmerBoundReport> selmer;
  section(report, errors, "selmer", [&] {
    if (!psi.is_trivial()) throw ParameterError("Selmer bounds are implemented for trivial psi");
    selmer = selmer_bounds(o.p, o.k, o.sigma, o.f_res);
    return to_json(*selmer);
  });

  std::optional<AuxCharResult> aux;
  section(report, errors, "aux_char", [&] {
    if (!l) throw ParameterError("no auxiliary prime l in Sigma - {p} coprime to N");
    aux = aux_char_search(o.p, o.k, psi, *l, o.m_max, ctx);
    return to_json(*aux);
  });

  section(report, errors, "h_construction", [&] {
    if (!aux || !aux->phi) throw ComputationError("no auxiliary character available");
    std::uint64_t level = n;
    for (unsigned i = 0; i < aux->m; ++i) level *= *l;
    const std::size_t prec = o.precision.value_or(default_precision(o.k, level));
    return to_json(build_H(psi, o.k, *l, aux->m, *aux->phi, o.sigma, ctx, prec));
  });

  std::optional<EigensystemScan> internal;
  std::optional<std::vector<EigensystemRecord>> external;
  section(report, errors, "depths", [&] {
    Json out;
    if (psi.is_trivial()) {
      internal = depth_scan(o.k, o.p, o.sigma, o.depth_cap);
      out["internal_level_one"] = to_json(*internal);
    } else {
      out["internal_level_one"] = "not applicable: psi is nontrivial";
    }
    if (o.records) {
      external = ingest_records(*o.records, o.sigma);
      Json recs = Json::array();
      for (const auto& r : *external) recs.push_back(to_json(r));
      out["external"] = std::move(recs);
    }
    return out;
  });

  section(report, errors, "criterion", [&] {
    if (!eta_value) throw ComputationError("eta unavailable");
    std::vector<EigensystemRecord> records;
    if (external) {
      records = *external;
    } else if (internal) {
      records = internal->records;
    }
    const bool certified_by_scan =
        internal && std::any_of(internal->records.begin(), internal->records.end(),
                                [](const EigensystemRecord& r) { return r.depth >= 1; });
    std::optional<long> dim_chi;
    std::string basis;
    if (selmer && selmer->dim_chi_upper) {
      if (*selmer->dim_chi_upper == 1 && (certified_by_scan || o.assume_nontrivial_extension)) {
        dim_chi = 1;
        basis = certified_by_scan ? "upper bound 1 from Selmer bounds; lower bound 1 from a level-one congruence"
                                  : "upper bound 1 from Selmer bounds; lower bound 1 assumed by the caller";
      } else if (*selmer->dim_chi_upper > 1) {
        dim_chi = *selmer->dim_chi_upper;
        basis = "upper bound from Selmer bounds exceeds 1";
      } else {
        basis = "no nontrivial extension certified";
      }
    } else {
      basis = "no upper bound for dim H^1_Sigma(Q, chi)";
    }
    Json out = to_json(nonprincipality_verdict(*eta_value, records, o.e, o.f_res, dim_chi));
    out["dim_chi_basis"] = basis;
    out["assumptions"] = o.assume_nontrivial_extension ? Json::array({"nontrivial-extension-known"}) : Json::array();
    out["records_source"] = external ? "external" : "internal";
    return out;
  });

  report["errors"] = errors;
  return report;
}

ReportOptions example37_options(const std::filesystem::path& fixture) {
  ReportOptions o;
  o.p = 37;
  o.k = 32;
  o.psi = DirichletChar::trivial();
  o.sigma = {31, 37};
  o.l = 31;
  o.m_max = 1;
  o.precision = 100;
  o.records = fixture;
  return o;
}

}  // namespace eiscong
