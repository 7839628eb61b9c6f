#include "eiscong/cli.hpp"

#include <CLI11.hpp>
#include <charconv>

#include "eiscong/error.hpp"

#ifndef EISCONG_FIXTURE_DIR
#define EISCONG_FIXTURE_DIR "fixtures"
#endif

namespace eiscong::cli {

namespace {

struct FlagSpec {
  std::string name;
  std::string help;
  bool boolean = false;
};

struct CommandSpec {
  std::string name;
  std::string help;
  std::vector<FlagSpec> flags;
};

const std::vector<CommandSpec>& command_specs() {
  static const std::vector<CommandSpec> specs = {
      {"bernoulli", "Bernoulli number B_n", {{"n", "index n >= 0"}}},
      {"eta",
       "eta(psi, k) with its factors and p-adic valuation",
       {{"p", "prime p"}, {"k", "weight"}, {"psi", "character f:[e1,...] or trivial"}, {"sigma", "comma list of primes"},
        {"s", "p-adic precision"}}},
      {"chars",
       "Dirichlet characters modulo f",
       {{"f", "modulus"}, {"parity", "even or odd"}, {"conductor", "exact conductor"}}},
      {"eisenstein",
       "q-expansion of E_l(phi)",
       {{"l", "weight"}, {"phi", "character (default trivial)"}, {"prec", "number of coefficients after a_0"}}},
      {"build-h",
       "construct H = F_m - c G and verify it",
       {{"p", "prime p"},
        {"k", "weight"},
        {"psi", "character"},
        {"ell", "auxiliary prime"},
        {"m", "exponent of the auxiliary conductor"},
        {"phi", "auxiliary character (default: search)"},
        {"sigma", "comma list of primes"},
        {"prec", "q-expansion precision"},
        {"s", "p-adic precision"},
        {"coefficients", "include the coefficients of H", true}}},
      {"scan",
       "level-one eigensystems mod p^s and Eisenstein congruence depths",
       {{"k", "weight"}, {"p", "prime p"}, {"sigma", "comma list of primes (default p)"}, {"s", "depth cap"}}},
      {"selmer",
       "Selmer group bounds",
       {{"p", "prime p"}, {"k", "weight"}, {"sigma", "comma list of primes"}, {"fres", "residue degree"}}},
      {"aux-char",
       "search for an auxiliary character with unit L-values",
       {{"p", "prime p"},
        {"k", "weight"},
        {"psi", "character"},
        {"ell", "auxiliary prime"},
        {"m", "largest exponent m"},
        {"s", "p-adic precision"}}},
      {"criterion",
       "non-principality criterion from eigensystem records",
       {{"p", "prime p"},
        {"k", "weight"},
        {"psi", "character"},
        {"sigma", "comma list of primes"},
        {"records", "eigensystem record file"},
        {"e", "ramification index"},
        {"fres", "residue degree"},
        {"s", "p-adic precision"},
        {"dim-chi", "asserted dim H^1_Sigma(Q, chi)"},
        {"assume-nontrivial-extension", "assert dim H^1_Sigma(Q, chi) >= 1", true}}},
      {"report",
       "full report",
       {{"p", "prime p"},
        {"k", "weight"},
        {"psi", "character"},
        {"sigma", "comma list of primes"},
        {"ell", "auxiliary prime"},
        {"m", "largest auxiliary exponent"},
        {"prec", "q-expansion precision for H"},
        {"s", "p-adic precision"},
        {"depth-cap", "cap for level-one depths"},
        {"records", "eigensystem record file"},
        {"e", "ramification index"},
        {"fres", "residue degree"},
        {"assume-nontrivial-extension", "assert dim H^1_Sigma(Q, chi) >= 1", true}}},
      {"example37", "the weight-32, p = 37 report with bundled records", {{"fixture", "record file"}}},
      {"verify-cache", "recompute every cache entry and compare bytes", {}},
  };
  return specs;
}

std::optional<std::string> find(const ArgMap& args, const std::string& name) {
  const auto it = args.find(name);
  if (it == args.end()) return std::nullopt;
  return it->second;
}

std::uint64_t parse_u64(const std::string& name, const std::string& text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParameterError("--" + name + ": expected a non-negative integer, got '" + text + "'");
  }
  return v;
}

std::uint64_t u64(const ArgMap& args, const std::string& name, std::optional<std::uint64_t> fallback = std::nullopt) {
  if (const auto v = find(args, name)) return parse_u64(name, *v);
  if (fallback) return *fallback;
  throw ParameterError("missing required flag --" + name);
}

unsigned u32(const ArgMap& args, const std::string& name, std::optional<unsigned> fallback = std::nullopt) {
  const std::uint64_t v = u64(args, name, fallback);
  if (v > 1'000'000) throw ParameterError("--" + name + " is out of range");
  return static_cast<unsigned>(v);
}

std::set<std::uint64_t> sigma_arg(const ArgMap& args, std::optional<std::uint64_t> fallback = std::nullopt) {
  const auto text = find(args, "sigma");
  if (!text) {
    if (fallback) return {*fallback};
    throw ParameterError("missing required flag --sigma");
  }
  std::set<std::uint64_t> out;
  std::string_view rest = *text;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    out.insert(parse_u64("sigma", std::string(rest.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  if (out.empty()) throw ParameterError("--sigma is empty");
  return out;
}

DirichletChar char_arg(const ArgMap& args, const std::string& name) {
  return DirichletChar::parse(find(args, name).value_or("trivial"));
}

bool flag(const ArgMap& args, const std::string& name) { return find(args, name) == "true"; }

std::filesystem::path default_fixture() { return std::filesystem::path(EISCONG_FIXTURE_DIR) / "example37.json"; }

std::optional<long> dim_chi_from(const ArgMap& args, const SelmerBoundReport& selmer) {
  if (const auto v = find(args, "dim-chi")) return static_cast<long>(parse_u64("dim-chi", *v));
  if (!selmer.dim_chi_upper) return std::nullopt;
  if (*selmer.dim_chi_upper == 1 && !flag(args, "assume-nontrivial-extension")) return std::nullopt;
  return selmer.dim_chi_upper;
}

Json run_criterion(const ArgMap& args) {
  const std::uint64_t p = u64(args, "p");
  const unsigned k = u32(args, "k");
  const DirichletChar psi = primitive(char_arg(args, "psi"));
  const auto sigma = sigma_arg(args);
  const auto path = find(args, "records");
  if (!path) throw ParameterError("missing required flag --records");
  const auto ctx = padic_context(p, static_cast<unsigned>(psi.order()), u32(args, "s", 6));
  const EtaValue eta_value = eta(psi, k, sigma, ctx);
  const auto records = ingest_records(*path, sigma);
  std::optional<long> dim_chi;
  Json selmer_json = "not computed";
  if (find(args, "dim-chi")) {
    dim_chi = static_cast<long>(u64(args, "dim-chi"));
  } else if (psi.is_trivial()) {
    const auto selmer = selmer_bounds(p, k, sigma, u32(args, "fres", 1));
    dim_chi = dim_chi_from(args, selmer);
    selmer_json = to_json(selmer);
  }
  Json out = to_json(nonprincipality_verdict(eta_value, records, u32(args, "e", 1), u32(args, "fres", 1), dim_chi));
  out["selmer"] = std::move(selmer_json);
  out["assumptions"] =
      flag(args, "assume-nontrivial-extension") ? Json::array({"nontrivial-extension-known"}) : Json::array();
  return out;
}

Json run_build_h(const ArgMap& args) {
  const std::uint64_t p = u64(args, "p");
  const unsigned k = u32(args, "k");
  const DirichletChar psi = primitive(char_arg(args, "psi"));
  const std::uint64_t l = u64(args, "ell");
  const unsigned m = u32(args, "m", 1);
  const auto sigma = sigma_arg(args);
  const auto ctx = padic_context(p, aux_context_conductor(psi, l, m), u32(args, "s", 6));
  DirichletChar phi;
  Json aux_json = "supplied";
  if (const auto text = find(args, "phi")) {
    phi = DirichletChar::parse(*text);
  } else {
    const auto aux = aux_char_search(p, k, psi, l, m, ctx);
    if (!aux.phi) throw ComputationError("no auxiliary character of conductor " + std::to_string(l) + "^m found");
    phi = *aux.phi;
    aux_json = to_json(aux);
  }
  const unsigned phi_m = [&] {
    unsigned e = 0;
    for (std::uint64_t c = conductor(phi); c > 1 && c % l == 0; c /= l) ++e;
    return e;
  }();
  std::uint64_t level = psi.modulus();
  for (unsigned i = 0; i < phi_m; ++i) level *= l;
  const std::size_t prec = find(args, "prec") ? u64(args, "prec") : default_precision(k, level);
  Json out = to_json(build_H(psi, k, l, phi_m, phi, sigma, ctx, prec), flag(args, "coefficients"));
  out["phi"] = primitive(phi).to_string();
  out["aux_char"] = std::move(aux_json);
  out["padic_context"] = to_json(ctx);
  return out;
}

ReportOptions report_options(const ArgMap& args) {
  ReportOptions o;
  o.p = u64(args, "p");
  o.k = u32(args, "k");
  o.psi = char_arg(args, "psi");
  o.sigma = sigma_arg(args);
  if (find(args, "ell")) o.l = u64(args, "ell");
  o.m_max = u32(args, "m", 1);
  if (find(args, "prec")) o.precision = u64(args, "prec");
  o.padic_precision = u32(args, "s", 6);
  o.depth_cap = u32(args, "depth-cap", 3);
  if (const auto r = find(args, "records")) o.records = *r;
  o.assume_nontrivial_extension = flag(args, "assume-nontrivial-extension");
  o.e = u32(args, "e", 1);
  o.f_res = u32(args, "fres", 1);
  return o;
}

}  // namespace

Json execute(const std::string& command, const ArgMap& args) {
  if (command == "bernoulli") {
    const unsigned n = u32(args, "n");
    return Json{{"n", std::to_string(n)}, {"value", to_string(bernoulli(n))}};
  }
  if (command == "eta") {
    const std::uint64_t p = u64(args, "p");
    const DirichletChar psi = primitive(char_arg(args, "psi"));
    const auto ctx = padic_context(p, static_cast<unsigned>(psi.order()), u32(args, "s", 6));
    Json out = to_json(eta(psi, u32(args, "k"), sigma_arg(args), ctx));
    out["padic_context"] = to_json(ctx);
    return out;
  }
  if (command == "chars") {
    const std::uint64_t f = u64(args, "f");
    CharFilter filter;
    if (const auto par = find(args, "parity")) {
      if (*par != "even" && *par != "odd") throw ParameterError("--parity must be even or odd");
      filter.parity = *par == "even" ? 1 : -1;
    }
    if (find(args, "conductor")) filter.exact_conductor = u64(args, "conductor");
    Json list = Json::array();
    for (const auto& chi : enumerate_chars(f, filter)) list.push_back(to_json(chi));
    return Json{{"modulus", std::to_string(f)}, {"count", std::to_string(list.size())}, {"characters", list}};
  }
  if (command == "eisenstein") {
    const unsigned l = u32(args, "l");
    const DirichletChar phi = primitive(char_arg(args, "phi"));
    const std::size_t prec = find(args, "prec") ? u64(args, "prec") : default_precision(l, phi.modulus());
    return to_json(eisenstein_qexp(l, phi, prec));
  }
  if (command == "build-h") return run_build_h(args);
  if (command == "scan") {
    const std::uint64_t p = u64(args, "p");
    return to_json(depth_scan(u32(args, "k"), p, sigma_arg(args, p), u32(args, "s", 3)));
  }
  if (command == "selmer") {
    return to_json(selmer_bounds(u64(args, "p"), u32(args, "k"), sigma_arg(args), u32(args, "fres", 1)));
  }
  if (command == "aux-char") {
    const std::uint64_t p = u64(args, "p");
    const DirichletChar psi = primitive(char_arg(args, "psi"));
    const std::uint64_t l = u64(args, "ell");
    const unsigned m = u32(args, "m", 1);
    const auto ctx = padic_context(p, aux_context_conductor(psi, l, m), u32(args, "s", 6));
    Json out = to_json(aux_char_search(p, u32(args, "k"), psi, l, m, ctx));
    out["padic_context"] = to_json(ctx);
    return out;
  }
  if (command == "criterion") return run_criterion(args);
  if (command == "report") return full_report(report_options(args));
  if (command == "example37") {
    const auto fixture = find(args, "fixture");
    return full_report(example37_options(fixture ? std::filesystem::path(*fixture) : default_fixture()));
  }
  throw ParameterError("unknown command '" + command + "'");
}

bool cacheable(const std::string& command, const ArgMap& args) {
  return command != "verify-cache" && command != "example37" && !args.contains("records");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Eisenstein congruences, Selmer bounds and the non-principality criterion"};
  app.require_subcommand(1);
  std::string cache_dir = "./.eiscache";
  bool pretty = false;
  bool no_cache = false;
  app.add_option("--cache-dir", cache_dir, "result cache directory");
  app.add_flag("--pretty", pretty, "indented output");
  app.add_flag("--no-cache", no_cache, "bypass the result cache");

  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, std::map<std::string, bool>> switches;
  std::map<std::string, CLI::App*> subs;
  for (const auto& spec : command_specs()) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    sub->fallthrough();
    for (const auto& f : spec.flags) {
      if (f.boolean) {
        sub->add_flag("--" + f.name, switches[spec.name][f.name], f.help);
      } else {
        sub->add_option("--" + f.name, values[spec.name][f.name], f.help);
      }
    }
    subs[spec.name] = sub;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return 1;
  }

  std::string command;
  ArgMap args;
  for (const auto& spec : command_specs()) {
    CLI::App* sub = subs[spec.name];
    if (!sub->parsed()) continue;
    command = spec.name;
    for (const auto& f : spec.flags) {
      if (sub->count("--" + f.name) == 0) continue;
      args[f.name] = f.boolean ? "true" : values[spec.name][f.name];
    }
  }

  const ResultCache cache(cache_dir);
  const int indent = pretty ? 2 : -1;
  try {
    if (command == "verify-cache") {
      Json report;
      Json mismatches = Json::array();
      std::size_t checked = 0;
      for (const auto& entry : cache.entries()) {
        ++checked;
        if (entry.key.empty()) {
          mismatches.push_back(Json{{"file", entry.file.filename().string()}, {"reason", "unreadable entry"}});
          continue;
        }
        const auto [cmd, cmd_args] = parse_cache_key(entry.key);
        const Json fresh = execute(cmd, cmd_args);
        if (fresh.dump() != entry.payload.dump()) {
          mismatches.push_back(Json{{"file", entry.file.filename().string()}, {"key", entry.key}});
        }
      }
      report["checked"] = std::to_string(checked);
      report["mismatches"] = mismatches;
      report["consistent"] = mismatches.empty();
      out << report.dump(indent) << '\n';
      return mismatches.empty() ? 0 : 2;
    }

    Json payload;
    const std::string key = cache_key(command, args);
    const bool use_cache = !no_cache && cacheable(command, args);
    if (auto hit = use_cache ? cache.load(key) : std::nullopt) {
      payload = std::move(*hit);
    } else {
      payload = execute(command, args);
      if (use_cache) cache.store(key, payload);
    }
    out << payload.dump(indent) << '\n';
    if (command == "build-h" && payload.value("verified", false) == false) return 2;
    return 0;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace eiscong::cli
