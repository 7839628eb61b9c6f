#include "eiscong/criteria.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "eiscong/error.hpp"

namespace eiscong {

namespace {

long min_one(const Valuation& v) { return v.is_infinite() ? 1 : std::min(v.value(), 1L); }

Valuation valuation_or_infinite(const CycElem& x, const PadicContext& ctx) {
  try {
    return valp_cyc(x, ctx);
  } catch (const IndeterminateValuation&) {
    return Valuation::infinity();
  }
}

void check_selmer_range(std::uint64_t p, unsigned k) {
  if (p < 3 || !is_prime(p)) throw ParameterError("Selmer bounds need an odd prime p");
  if (k % 2 != 0 || k < 2 || k > p - 1) throw ParameterError("Selmer bounds need even k with 2 <= k <= p-1");
}

}  // namespace

std::string to_string(HerbrandStatus s) {
  switch (s) {
    case HerbrandStatus::trivial:
      return "trivial";
    case HerbrandStatus::nontrivial:
      return "nontrivial";
    case HerbrandStatus::not_applicable:
      break;
  }
  return "not-applicable";
}

HerbrandStatus herbrand_eigenspace(std::uint64_t p, unsigned r) {
  if (!is_prime(p) || p < 5) throw ParameterError("herbrand_eigenspace: p must be a prime >= 5");
  if (r % 2 == 0 || r <= 1 || r >= p - 1) throw ParameterError("herbrand_eigenspace: need odd r with 1 < r < p-1");
  const Rational b = bernoulli(static_cast<unsigned>(p - r));
  return mpz_divisible_ui_p(b.get_num_mpz_t(), p) ? HerbrandStatus::nontrivial : HerbrandStatus::trivial;
}

long selmer_lower_1mk(std::uint64_t p, unsigned k, const std::set<std::uint64_t>& sigma, unsigned f_res) {
  check_selmer_range(p, k);
  long total = std::min(b1_omega_valuation(static_cast<long long>(k) - 1, p, 1), 1L);
  for (std::uint64_t l : sigma) {
    if (l == p) continue;
    total += min_one(valp(1 - pow(Integer(l), k), static_cast<unsigned long>(p)));
  }
  return static_cast<long>(f_res) * total;
}

long local_factor(std::uint64_t l, long n, std::uint64_t p, const DirichletChar& psi, LocalFactorMode mode,
                  unsigned precision) {
  if (n == 0) throw ParameterError("local_factor: n must be nonzero");
  if (!is_prime(l) || !is_prime(p) || l == p) throw ParameterError("local_factor: need distinct primes l, p");
  const Rational power = rational_pow(Rational(static_cast<long>(l)), n + 1);
  if (mode == LocalFactorMode::capped) {
    if (!primitive(psi).is_trivial()) throw ParameterError("local_factor: capped mode needs trivial psi");
    if (l % p == 1) throw ParameterError("local_factor: capped mode requires l != 1 mod p");
    return min_one(valp_rational(power - 1, static_cast<unsigned long>(p)));
  }
  const DirichletChar prim = primitive(psi);
  if (prim.is_trivial()) {
    const Valuation v = valp_rational(power - 1, static_cast<unsigned long>(p));
    if (v.is_infinite()) throw ComputationError("local_factor: l^(n+1) = 1 has infinite valuation");
    return v.value();
  }
  const auto ctx = padic_context(p, static_cast<unsigned>(prim.order()), precision);
  const CycElem x = char_eval(prim, static_cast<long long>(l)) * CycElem(power) - CycElem(1);
  const Valuation v = valp_cyc(x, ctx);
  if (v.is_infinite()) throw ComputationError("local_factor: psi(l) l^(n+1) = 1");
  return v.value();
}

SelmerBoundReport selmer_bounds(std::uint64_t p, unsigned k, const std::set<std::uint64_t>& sigma, unsigned f_res) {
  check_selmer_range(p, k);
  if (!sigma.contains(p)) throw ParameterError("Selmer bounds: p must belong to Sigma");
  SelmerBoundReport r;
  r.p = p;
  r.k = k;
  r.sigma = sigma;
  r.residue_degree = f_res;
  r.lower_bound_1mk = selmer_lower_1mk(p, k, sigma, f_res);
  r.dim_chi_inverse_lower = r.lower_bound_1mk / static_cast<long>(f_res);

  bool upper_bound_applies = true;
  long sum = 0;
  for (std::uint64_t l : sigma) {
    if (l == p) continue;
    if (l % p == 1) {
      upper_bound_applies = false;
      r.notes.push_back("l=" + std::to_string(l) + " is 1 mod p; its local term is not bounded");
      continue;
    }
    const long term = min_one(valp(1 - pow(Integer(l), k - 2), static_cast<unsigned long>(p)));
    r.upper_terms.emplace_back(l, term);
    sum += term;
  }
  const unsigned r_twist = k - 1;
  if (r_twist > 1 && r_twist < p - 1) {
    r.herbrand = herbrand_eigenspace(p, r_twist);
  } else {
    r.notes.push_back("class-group eigenspace check needs 1 < k-1 < p-1");
  }
  if (r.herbrand == HerbrandStatus::trivial && upper_bound_applies) {
    r.dim_chi_upper = 1 + sum;
  } else if (r.herbrand == HerbrandStatus::nontrivial) {
    r.notes.push_back("p divides B_" + std::to_string(p - r_twist) + "; the p-local term is not bounded by 1");
  }
  return r;
}

unsigned aux_context_conductor(const DirichletChar& psi, std::uint64_t l, unsigned m_max) {
  std::uint64_t f = primitive(psi).order();
  std::uint64_t lm = 1;
  for (unsigned m = 1; m <= m_max; ++m) {
    lm *= l;
    for (const auto& g : unit_group_generators(lm)) f = lcm_u(f, g.order);
  }
  if (f > kMaxConductor) throw ParameterError("aux_char_search: character values need Q(zeta_" + std::to_string(f) + ")");
  return static_cast<unsigned>(f);
}

AuxCharResult aux_char_search(std::uint64_t p, unsigned k, const DirichletChar& psi, std::uint64_t l, unsigned m_max,
                              const PadicContext& ctx) {
  if (!is_prime(l) || l == p) throw ParameterError("aux_char_search: l must be a prime different from p");
  if (k < 2) throw ParameterError("aux_char_search: k must be >= 2");
  if (ctx.p != p) throw ParameterError("aux_char_search: p-adic context is for a different prime");
  const DirichletChar prim_psi = primitive(psi);
  AuxCharResult out;
  out.context_conductor = ctx.conductor;
  const int parity = (k - 1) % 2 == 0 ? 1 : -1;
  std::uint64_t lm = 1;
  for (unsigned m = 1; m <= m_max; ++m) {
    lm *= l;
    for (const auto& phi : enumerate_chars(lm, CharFilter{parity, lm})) {
      ++out.candidates_tried;
      const Valuation v1 = valuation_or_infinite(l_value_nonpositive(char_product(prim_psi, phi), 1), ctx);
      if (v1 != Valuation(0)) continue;
      const Valuation v2 = valuation_or_infinite(l_value_nonpositive(char_inverse(phi), k - 1), ctx);
      if (v2 != Valuation(0)) continue;
      out.phi = phi;
      out.m = m;
      out.weight_one_valuation = v1;
      out.weight_k_valuation = v2;
      return out;
    }
  }
  return out;
}

CriterionReport nonprincipality_verdict(const EtaValue& eta, const std::vector<EigensystemRecord>& records, unsigned e,
                                        unsigned f_res, std::optional<long> dim_chi_upper) {
  if (e == 0 || f_res == 0) throw ParameterError("criterion: e and f_res must be positive");
  for (const auto& r : records) {
    if (r.p != eta.p || r.weight != records.front().weight) {
      throw ParameterError("criterion: records mix primes or weights (" + r.prime_label + ")");
    }
  }
  if (eta.valuation.is_infinite()) throw ComputationError("criterion: eta vanishes");
  CriterionReport out;
  out.eta = eta;
  out.e = e;
  out.f_res = f_res;
  out.records = records;
  out.dim_chi_upper = dim_chi_upper;
  Integer sum;
  for (const auto& r : records) sum += r.depth;
  out.depth_sum_over_e = make_rational(sum, Integer(e));
  out.valp_congruence_module = Rational(static_cast<long>(f_res) * e * eta.valuation.value());

  const bool depth_ok = out.depth_sum_over_e > out.valp_congruence_module;
  const bool dim_ok = dim_chi_upper == 1L;
  if (!depth_ok) {
    out.failing_conditions.push_back("sum of depths / e = " + to_string(out.depth_sum_over_e) +
                                     " does not exceed v_p(#O/eta) = " + to_string(out.valp_congruence_module));
  }
  if (!dim_ok) {
    out.failing_conditions.push_back(dim_chi_upper ? "dim H^1_Sigma(Q, chi) = " + std::to_string(*dim_chi_upper) +
                                                         " is not 1"
                                                   : "dim H^1_Sigma(Q, chi) = 1 is not established");
  }
  if (depth_ok && dim_ok) {
    out.verdict = Verdict::non_principal;
    out.conclusion_text = to_string(out.depth_sum_over_e) + " > " + to_string(out.valp_congruence_module) +
                          ": the Eisenstein ideal J is not principal and #𝔗_mod > dim H^1_Σ(Q, χ^{−1})";
  } else {
    out.verdict = Verdict::inconclusive;
    out.conclusion_text = "inconclusive: " + out.failing_conditions.front();
  }
  return out;
}

// ---- record ingestion ----------------------------------------------------------

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(std::size_t index, const std::string& field, const std::string& what) {
  throw ParameterError("record #" + std::to_string(index) + ", field '" + field + "': " + what);
}

Integer read_integer(const json& obj, std::size_t index, const std::string& field) {
  if (!obj.contains(field)) schema_error(index, field, "missing");
  const json& v = obj.at(field);
  if (v.is_number_integer()) return Integer(std::to_string(v.get<long long>()));
  if (v.is_string()) {
    Integer out;
    if (out.set_str(v.get<std::string>(), 10) != 0) schema_error(index, field, "not a decimal integer");
    return out;
  }
  schema_error(index, field, "expected an integer or a decimal string");
}

std::uint64_t read_small(const json& obj, std::size_t index, const std::string& field) {
  const Integer v = read_integer(obj, index, field);
  if (v < 0 || !v.fits_ulong_p()) schema_error(index, field, "out of range");
  return v.get_ui();
}

}  // namespace

std::vector<EigensystemRecord> parse_records(const std::string& text, const std::set<std::uint64_t>& sigma) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ParameterError(std::string("malformed record file: ") + err.what());
  }
  if (!doc.is_array()) throw ParameterError("record file must hold a JSON array");
  if (doc.empty()) throw ParameterError("record file holds no records");
  std::vector<EigensystemRecord> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& obj = doc[i];
    if (!obj.is_object()) schema_error(i, "*", "record must be an object");
    EigensystemRecord r;
    r.weight = static_cast<unsigned>(read_small(obj, i, "weight"));
    r.level = read_small(obj, i, "level");
    r.p = read_small(obj, i, "p");
    if (!is_prime(r.p)) schema_error(i, "p", "not prime");
    if (!obj.contains("prime_label") || !obj["prime_label"].is_string()) schema_error(i, "prime_label", "missing text");
    r.prime_label = obj["prime_label"].get<std::string>();
    r.depth = static_cast<unsigned>(read_small(obj, i, "depth"));
    r.precision = obj.contains("precision") ? static_cast<unsigned>(read_small(obj, i, "precision")) : r.depth + 1;
    if (r.precision == 0) schema_error(i, "precision", "must be positive");
    r.capped = obj.contains("capped") && obj["capped"].is_boolean() && obj["capped"].get<bool>();
    if (obj.contains("source")) {
      const json& s = obj["source"];
      if (!s.is_string() || (s != "internal" && s != "external")) schema_error(i, "source", "expected internal|external");
    }
    r.source = RecordSource::external;
    if (obj.contains("eigenvalues")) {
      const json& ev = obj["eigenvalues"];
      if (!ev.is_object()) schema_error(i, "eigenvalues", "expected an object q -> residue");
      for (const auto& [key, value] : ev.items()) {
        std::uint64_t q = 0;
        try {
          q = std::stoull(key);
        } catch (const std::exception&) {
          schema_error(i, "eigenvalues." + key, "key is not a prime");
        }
        if (!is_prime(q)) schema_error(i, "eigenvalues." + key, "key is not a prime");
        r.eigenvalues.emplace(q, read_integer(ev, i, key));
      }
    }
    if (!r.eigenvalues.empty()) {
      bool capped = false;
      const unsigned derived = record_depth(r, sigma, capped);
      if (r.depth > r.precision || derived != r.depth) {
        schema_error(i, "depth",
                     "declared " + std::to_string(r.depth) + " but eigenvalues give " + std::to_string(derived));
      }
      r.capped = capped;
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<EigensystemRecord> ingest_records(const std::filesystem::path& path,
                                              const std::set<std::uint64_t>& sigma) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open record file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_records(buf.str(), sigma);
}

}  // namespace eiscong
