#include "dormant/cli/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <functional>
#include <json.hpp>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "dormant/analysis/analysis.hpp"
#include "dormant/cli/cache.hpp"
#include "dormant/errors.hpp"
#include "dormant/oper/degrees.hpp"
#include "dormant/verlinde/verlinde.hpp"
#include "dormant/vi/engine.hpp"

#ifndef DORMANT_TOOL_VERSION
#define DORMANT_TOOL_VERSION "0.0.0"
#endif

namespace dormant::cli {

using Json = nlohmann::ordered_json;
using exact::BigRational;

namespace {

enum class Format { json, csv, markdown };

struct Globals {
  std::string backend = "exact";
  long precision_bits = 192;
  unsigned workers = 1;
  std::string format = "json";
  std::string cache_dir;
  bool no_cache = false;
};

struct Result {
  std::string command;
  Json params = Json::object();
  std::optional<BigRational> value;
  std::vector<std::string> reductions;
  bool cache_hit = false;
  std::vector<std::string> warnings;
  Json details;                // command-specific, stable
  std::optional<std::string> raw;  // pre-rendered csv/markdown (table)
};

Json value_json(const BigRational& v) {
  return Json{{"num", v.numerator().get_str()}, {"den", v.denominator().get_str()}};
}

oper::EvalOptions eval_options(const Globals& g) {
  oper::EvalOptions o;
  o.backend = g.backend == "float" ? oper::Backend::floating : oper::Backend::exact;
  o.precision_bits = static_cast<mpfr_prec_t>(g.precision_bits);
  o.workers = g.workers;
  return o;
}

std::vector<std::string> vi_reductions(const Globals& g) {
  if (g.backend == "float") return {};
  return {"rotation", "permutation"};
}

const char* kConjectural = "conjectural: no independent ground truth for this value";

// Flattens nested JSON into (dotted path, scalar text) pairs.
void flatten(const Json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array()) {
    if (j.empty()) out.emplace_back(prefix, "");
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else if (j.is_null()) {
    out.emplace_back(prefix, "");
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string md_cell(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '|') o += '\\';
    o += c;
  }
  return o;
}

Json stable_json(const Result& r) {
  Json j;
  j["command"] = r.command;
  j["params"] = r.params;
  j["value"] = r.value ? value_json(*r.value) : Json(nullptr);
  j["integer"] = r.value ? Json(r.value->is_integer()) : Json(nullptr);
  j["reductions"] = r.reductions;
  j["cache_hit"] = r.cache_hit;
  j["warnings"] = r.warnings;
  if (!r.details.is_null()) j["details"] = r.details;
  return j;
}

std::string render(const Result& r, Format fmt, std::int64_t duration_us) {
  if (r.raw && fmt != Format::json) return *r.raw;
  Json j = stable_json(r);
  if (fmt == Format::json) {
    j["timing"] = Json{{"duration_us", duration_us}};
    return j.dump(2) + "\n";
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(j, "", rows);
  rows.emplace_back("timing.duration_us", std::to_string(duration_us));
  std::string out;
  if (fmt == Format::csv) {
    out = "field,value\n";
    for (const auto& [k, v] : rows) out += csv_cell(k) + "," + csv_cell(v) + "\n";
  } else {
    out = "| field | value |\n|---|---|\n";
    for (const auto& [k, v] : rows) out += "| " + md_cell(k) + " | " + md_cell(v) + " |\n";
  }
  return out;
}

std::string error_kind(int code) {
  switch (code) {
    case kExitParameter: return "parameter";
    case kExitDomain: return "domain";
    case kExitPrecision: return "precision";
    default: return "internal";
  }
}

class Runner {
 public:
  Runner(const Globals& g, std::string version) : g_(g), version_(std::move(version)) {}

  std::optional<CacheStore>& cache() {
    if (!cache_ && !g_.no_cache) {
      const std::filesystem::path dir = g_.cache_dir.empty() ? default_cache_dir() : std::filesystem::path(g_.cache_dir);
      cache_.emplace(dir, version_);
    }
    return cache_;
  }

  // Computes through the cache when one is configured.
  void cached(Result& r, const std::string& formula, std::map<std::string, std::string> key_params,
              const std::string& backend, const std::function<CachedValue()>& compute) {
    auto& c = cache();
    CachedValue v;
    if (c) {
      v = c->lookup_store(canonical_key(formula, key_params), backend, compute);
      for (const auto& w : c->warnings()) r.warnings.push_back(w);
    } else {
      v = compute();
    }
    r.value = v.value;
    r.reductions = v.reductions;
    r.cache_hit = v.hit;
  }

  const Globals& globals() const { return g_; }

 private:
  Globals g_;
  std::string version_;
  std::optional<CacheStore> cache_;
};

std::string s(std::int64_t v) { return std::to_string(v); }

}  // namespace

std::string tool_version() { return DORMANT_TOOL_VERSION; }

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                const std::string& version_override) {
  const auto start = std::chrono::steady_clock::now();
  CLI::App app{"Exact degrees of dormant opers and related enumerative formulas", "dormant-degree"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", tool_version());

  Globals g;
  app.add_option("--backend", g.backend, "exact (cyclotomic field) or float (certified MPFR balls)")
      ->check(CLI::IsMember({"exact", "float"}))
      ->capture_default_str();
  app.add_option("--precision-bits", g.precision_bits, "working precision of the float backend")
      ->check(CLI::Range(16L, 1L << 20))
      ->capture_default_str();
  app.add_option("--workers", g.workers, "threads used by the exact reduced sum")
      ->check(CLI::Range(1u, 256u))
      ->capture_default_str();
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"json", "csv", "md"}))
      ->capture_default_str();
  app.add_option("--cache-dir", g.cache_dir, "cache directory (default $DORMANT_DEGREE_CACHE)");
  app.add_flag("--no-cache", g.no_cache, "neither read nor write the cache");

  std::int64_t p = 0, r = 0, gg = 0, n = 0, d = 0, k = 0, gamma = 0;
  std::string convention = "as-written", method = "fusion";
  std::vector<std::int64_t> fit, verify, g_list, r_list, p_list;
  std::string cache_action;

  auto add_prg = [&](CLI::App* sub, bool need_r = true) {
    sub->add_option("--p", p, "prime")->required();
    if (need_r) sub->add_option("--r", r, "rank")->required();
    sub->add_option("--g", gg, "genus")->required();
  };

  auto* c_dormant = app.add_subcommand("dormant", "degree of the dormant PGL(r)-oper locus");
  add_prg(c_dormant);
  auto* c_sl = app.add_subcommand("sl-dormant", "degree of the dormant SL(r)-oper locus");
  add_prg(c_sl);
  auto* c_quot = app.add_subcommand("quot", "Quot scheme degree p^g times the dormant degree");
  add_prg(c_quot);
  c_quot->add_option("--gamma-count", gamma, "order of ker V on the Jacobian (default p^g)");
  auto* c_vi = app.add_subcommand("vi", "Vafa-Intriligator degree N(n,d,r,g)");
  c_vi->add_option("--n", n, "rank of the ambient bundle")->required();
  c_vi->add_option("--d", d, "degree of the ambient bundle")->required();
  c_vi->add_option("--r", r, "rank of the subbundle")->required();
  c_vi->add_option("--g", gg, "genus")->required();
  auto* c_frob = app.add_subcommand("frobenius", "degree of the Frobenius fiber over a general bundle");
  add_prg(c_frob);
  c_frob->add_option("--convention", convention, "normalisation of the root-of-unity sum")
      ->check(CLI::IsMember({"as-written", "with-factorial"}))
      ->capture_default_str();
  auto* c_ver = app.add_subcommand("verlinde", "dim H^0(SU_X(r), theta^k)");
  c_ver->add_option("--r", r, "rank")->required();
  c_ver->add_option("--k", k, "level")->required();
  c_ver->add_option("--g", gg, "genus")->required();
  c_ver->add_option("--method", method, "fusion (r = 2 only) or trig")
      ->check(CLI::IsMember({"fusion", "trig"}))
      ->capture_default_str();
  auto* c_check = app.add_subcommand("check-verlinde", "compare the dormant degree with r^-g Verlinde");
  add_prg(c_check);
  auto* c_inv = app.add_subcommand("invariants", "maximal subbundle invariants s_r, e_max, epsilon");
  c_inv->add_option("--n", n, "rank")->required();
  c_inv->add_option("--d", d, "degree")->required();
  c_inv->add_option("--r", r, "subbundle rank")->required();
  c_inv->add_option("--g", gg, "genus")->required();
  auto* c_fit = app.add_subcommand("polyfit", "fit the rank 2 dormant degree as a polynomial in p");
  c_fit->add_option("--g", gg, "genus")->required();
  c_fit->add_option("--r", r, "rank (only 2 is supported)")->default_val(2);
  c_fit->add_option("--fit", fit, "fit primes, comma separated")->required()->delimiter(',');
  c_fit->add_option("--verify", verify, "verification primes, comma separated")->delimiter(',');
  auto* c_table = app.add_subcommand("table", "grid of degrees and Verlinde verdicts");
  c_table->add_option("--g", g_list, "genera, comma separated")->required()->delimiter(',');
  c_table->add_option("--r", r_list, "ranks, comma separated")->required()->delimiter(',');
  c_table->add_option("--p", p_list, "primes, comma separated")->required()->delimiter(',');
  auto* c_cache = app.add_subcommand("cache", "inspect or clear the value cache");
  c_cache->add_option("action", cache_action, "stats or clear")
      ->required()
      ->check(CLI::IsMember({"stats", "clear"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParameter;
  }

  const Format fmt = g.format == "csv" ? Format::csv : g.format == "md" ? Format::markdown : Format::json;
  Runner run(g, version_override.empty() ? tool_version() : version_override);
  const auto opts = eval_options(g);
  Result res;
  res.command = app.get_subcommands().front()->get_name();

  auto prg_params = [&](bool with_backend = true) {
    res.params["p"] = p;
    res.params["r"] = r;
    res.params["g"] = gg;
    if (with_backend) res.params["backend"] = g.backend;
  };
  auto prg_key = [&]() {
    return std::map<std::string, std::string>{{"p", s(p)}, {"r", s(r)}, {"g", s(gg)}, {"backend", g.backend}};
  };

  int code = kExitOk;
  try {
    if (res.command == "dormant" || res.command == "sl-dormant") {
      prg_params();
      const bool sl = res.command == "sl-dormant";
      run.cached(res, res.command, prg_key(), g.backend, [&] {
        const auto v = sl ? oper::sl_oper_degree(p, r, gg, opts) : oper::dormant_degree(p, r, gg, opts);
        return CachedValue{v.value, vi_reductions(g), false};
      });
      if (r >= 3) res.warnings.emplace_back(kConjectural);
      if (!res.value->is_integer() || res.value->sign() < 0)
        res.warnings.emplace_back("value is not a nonnegative integer");
    } else if (res.command == "quot") {
      prg_params();
      res.params["gamma_count"] = gamma;
      res.value = oper::quot_scale_check(p, r, gg, gamma, opts);
      res.reductions = vi_reductions(g);
      if (r >= 3) res.warnings.emplace_back(kConjectural);
    } else if (res.command == "vi") {
      res.params = Json{{"n", n}, {"d", d}, {"r", r}, {"g", gg}, {"backend", g.backend}};
      const auto vp = vi::derive_params(n, d, r, gg);
      res.details = Json{{"a", vp.a},
                         {"b", vp.b},
                         {"rotation_character", vp.rotation_character},
                         {"sign_valid", vp.sign_valid()}};
      run.cached(res, "vi",
                 {{"n", s(n)}, {"d", s(d)}, {"r", s(r)}, {"g", s(gg)}, {"backend", g.backend}},
                 g.backend, [&] {
                   const BigRational v = g.backend == "float"
                                             ? vi::vi_degree_float(n, d, r, gg, opts.precision_bits)
                                             : vi::vi_degree(n, d, r, gg, opts.workers);
                   return CachedValue{v, vi_reductions(g), false};
                 });
    } else if (res.command == "frobenius") {
      prg_params();
      res.params["convention"] = convention;
      auto key = prg_key();
      key["convention"] = convention;
      run.cached(res, "frobenius", key, g.backend, [&] {
        const auto conv = convention == "with-factorial" ? oper::FiberConvention::with_factorial
                                                          : oper::FiberConvention::as_written;
        return CachedValue{oper::frobenius_fiber_degree(p, r, gg, conv, opts), vi_reductions(g), false};
      });
      res.warnings.emplace_back(kConjectural);
    } else if (res.command == "verlinde") {
      res.params = Json{{"r", r}, {"k", k}, {"g", gg}, {"method", method}};
      run.cached(res, "verlinde", {{"r", s(r)}, {"k", s(k)}, {"g", s(gg)}, {"method", method}}, method,
                 [&] {
                   if (method == "fusion") {
                     if (r != 2) throw ParameterError("the fusion method supports r = 2 only");
                     return CachedValue{BigRational(verlinde::verlinde_dim_fusion(k, gg)), {}, false};
                   }
                   return CachedValue{
                       BigRational(verlinde::verlinde_dim_trig(r, k, gg, opts.precision_bits)), {}, false};
                 });
    } else if (res.command == "check-verlinde") {
      prg_params();
      const auto rep = verlinde::check_verlinde_equivalence(p, r, gg, opts.precision_bits);
      res.value = rep.lhs;
      res.reductions = vi_reductions(g);
      res.details = Json{{"verlinde_dimension", rep.verlinde_dimension.get_str()},
                         {"rhs", value_json(rep.rhs)},
                         {"equal", rep.equal},
                         {"method", rep.method == verlinde::VerlindeMethod::fusion ? "fusion" : "trig"},
                         {"conjectural", rep.conjectural}};
      if (rep.conjectural) res.warnings.emplace_back(kConjectural);
    } else if (res.command == "invariants") {
      res.params = Json{{"n", n}, {"d", d}, {"r", r}, {"g", gg}};
      const auto inv = oper::subbundle_invariants(n, d, r, gg);
      res.value = inv.e_max;
      res.details = Json{{"mukai_bound", inv.mukai_bound},
                         {"s_r", inv.s_r},
                         {"epsilon", inv.epsilon},
                         {"e_max", value_json(inv.e_max)}};
    } else if (res.command == "polyfit") {
      res.params = Json{{"g", gg}, {"r", r}, {"fit", fit}, {"verify", verify}, {"backend", g.backend}};
      const auto rep = analysis::polynomiality_check(gg, fit, verify, r, opts);
      Json coeffs = Json::array();
      for (const auto& c : rep.poly.coeffs()) coeffs.push_back(value_json(c));
      Json checks = Json::array();
      for (const auto& [q, predicted, computed] : rep.checks)
        checks.push_back(Json{{"p", q}, {"predicted", value_json(predicted)}, {"computed", value_json(computed)}});
      res.details = Json{{"polynomial", rep.poly.to_string("p")},
                         {"coefficients", coeffs},
                         {"degree", rep.poly.degree()},
                         {"degree_bound", rep.degree_bound},
                         {"degree_ok", rep.degree_ok},
                         {"checks", checks},
                         {"verified", rep.verified}};
      res.reductions = vi_reductions(g);
    } else if (res.command == "table") {
      res.params = Json{{"g", g_list}, {"r", r_list}, {"p", p_list}, {"backend", g.backend}};
      const auto tf = fmt == Format::csv        ? analysis::TableFormat::csv
                      : fmt == Format::markdown ? analysis::TableFormat::markdown
                                                : analysis::TableFormat::json;
      const auto rep = analysis::generate_table(g_list, r_list, p_list, tf, opts);
      if (fmt == Format::json)
        res.details = Json::parse(rep.serialize());
      else
        res.raw = rep.serialize();
      res.reductions = vi_reductions(g);
    } else if (res.command == "cache") {
      res.params = Json{{"action", cache_action}};
      auto& c = run.cache();
      if (!c) throw ParameterError("the cache is disabled by --no-cache");
      if (cache_action == "clear") c->clear();
      const auto st = c->stats();
      res.details = Json{{"file", st.file.string()},
                         {"entries", st.entries},
                         {"lines", st.lines},
                         {"corrupt_lines", st.corrupt},
                         {"bytes", st.bytes}};
      for (const auto& w : c->warnings()) res.warnings.push_back(w);
    }
  } catch (const ParameterError& e) {
    code = kExitParameter;
    err << "error: " << e.what() << "\n";
    res.details = Json{{"error", error_kind(code)}, {"reason", e.what()}};
  } catch (const DomainError& e) {
    code = kExitDomain;
    err << "error: " << e.what() << "\n";
    res.details = Json{{"error", error_kind(code)}, {"reason", e.what()}};
  } catch (const PrecisionError& e) {
    code = kExitPrecision;
    err << "error: " << e.what() << "\n";
    res.details = Json{{"error", error_kind(code)}, {"reason", e.what()}};
  }

  if (code != kExitOk) {
    res.value.reset();
    res.raw.reset();
    res.cache_hit = false;
  }
  const auto us =
      std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count();
  out << render(res, fmt, static_cast<std::int64_t>(us));
  return code;
}

}  // namespace dormant::cli
