#pragma once

#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "schurkit/io.hpp"
#include "schurkit/lr.hpp"
#include "schurkit/partition.hpp"
#include "schurkit/semigroup.hpp"

namespace schurkit::cli {

enum exit_code : int {
  ok = 0,
  property_violation = 1,
  usage = 2,
  no_decomposition = 3,
};

struct run_config {
  std::size_t rank = 1;
  std::string cache_path;
  std::optional<part_t> weight_cap;
  std::string format = "text";
  std::uint64_t seed = 0;
  std::size_t samples = 100;
  bool paranoid = false;
};

namespace detail {

inline std::string bool_text(bool v) { return v ? "true" : "false"; }

struct session {
  run_config cfg;
  std::ostream& out;
  lr_cache cache;

  bool json_mode() const { return cfg.format == "json"; }
  rank_context ctx() const { return rank_context(cfg.rank); }

  void emit(const json& j) { out << j.dump() << "\n"; }

  sigma_set sigma_for(const partition& a) {
    const rank_context c = ctx();
    return compute_sigma(a, c, cfg.weight_cap.value_or(default_weight_cap(a, c)));
  }
};

}  // namespace detail

/// Runs one CLI invocation. `args` excludes the program name. `env_cache` is
/// the fallback cache path when --cache is absent.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                       std::optional<std::string> env_cache = std::nullopt) {
  CLI::App app{"Littlewood-Richardson decompositions and tensor-power certificates", "schurkit"};
  app.fallthrough();
  app.require_subcommand(1);

  run_config cfg;
  app.add_option("--cache", cfg.cache_path, "LR coefficient cache file");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--paranoid", cfg.paranoid, "Recompute every cached value on load");

  // Positional partition literals, parsed after CLI11 so errors carry our codes.
  std::string p1, p2, p3;
  std::size_t n = 1;
  part_t wcap = 0;
  part_t max_weight = 5;

  auto add_rank = [&](CLI::App* sub) { sub->add_option("--rank", cfg.rank, "Rank d")->required()->check(CLI::PositiveNumber); };
  auto add_n = [&](CLI::App* sub) { sub->add_option("--n", n, "Tensor power")->required()->check(CLI::PositiveNumber); };
  auto add_wcap = [&](CLI::App* sub) { sub->add_option("--wcap", wcap, "Weight cap for σ(a)"); };

  auto* lr = app.add_subcommand("lr", "Littlewood-Richardson computations")->require_subcommand(1);
  auto* lr_coef = lr->add_subcommand("coef", "Coefficient c^B_{A,C}");
  lr_coef->add_option("A", p1)->required();
  lr_coef->add_option("C", p2)->required();
  lr_coef->add_option("B", p3)->required();
  auto* lr_prod = lr->add_subcommand("prod", "Decompose S_A ⊗ S_C");
  lr_prod->add_option("A", p1)->required();
  lr_prod->add_option("C", p2)->required();
  add_rank(lr_prod);
  auto* lr_power = lr->add_subcommand("power", "Decompose (S_A)^{⊗N}");
  lr_power->add_option("A", p1)->required();
  add_n(lr_power);
  add_rank(lr_power);

  auto* dom = app.add_subcommand("dom", "Extended dominance B ⪯ A");
  dom->add_option("B", p1)->required();
  dom->add_option("A", p2)->required();
  add_rank(dom);

  auto* gens = app.add_subcommand("gens", "Generators v(L, mu·A)");
  gens->add_option("A", p1)->required();
  add_rank(gens);

  auto* sigma = app.add_subcommand("sigma", "Remainder set σ(A)");
  sigma->add_option("A", p1)->required();
  add_rank(sigma);
  add_wcap(sigma);

  auto* decomp = app.add_subcommand("decompose", "Write B = c + Σ m_L v(L, mu·A)");
  decomp->add_option("B", p1)->required();
  decomp->add_option("A", p2)->required();
  add_rank(decomp);
  add_wcap(decomp);

  auto* cert = app.add_subcommand("certify", "Certificates for every subfactor of (S_A)^{⊗N}");
  cert->add_option("A", p1)->required();
  add_n(cert);
  add_rank(cert);
  add_wcap(cert);

  auto* dim = app.add_subcommand("dim", "dim S_A(C^d)");
  dim->add_option("A", p1)->required();
  add_rank(dim);

  auto* flagsig = app.add_subcommand("flagsig", "Flag signature of A");
  flagsig->add_option("A", p1)->required();
  add_rank(flagsig);

  auto* check = app.add_subcommand("check", "Property drivers")->require_subcommand(1);
  auto* check_sg = check->add_subcommand("semigroup", "Sampled semigroup property");
  check_sg->add_option("--samples", cfg.samples)->required();
  check_sg->add_option("--seed", cfg.seed)->required();
  check_sg->add_option("--max-weight", max_weight, "Largest sampled weight")->check(CLI::NonNegativeNumber);
  add_rank(check_sg);
  auto* check_dom = check->add_subcommand("dominance", "Dominance bound on a tensor power");
  check_dom->add_option("A", p1)->required();
  add_n(check_dom);
  add_rank(check_dom);

  for (auto* sub : {lr, check}) sub->fallthrough();
  for (auto* sub : {lr_coef, lr_prod, lr_power, dom, gens, sigma, decomp, cert, dim, flagsig, check_sg, check_dom})
    sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::ok : exit_code::usage;
  }

  if (cfg.cache_path.empty() && env_cache) cfg.cache_path = *env_cache;
  if (wcap != 0) cfg.weight_cap = wcap;

  detail::session s{cfg, out, {}};
  try {
    if (!cfg.cache_path.empty()) s.cache = lr_cache(cache_load(cfg.cache_path, cfg.paranoid));
    const std::size_t cached_before = s.cache.size();
    int status = exit_code::ok;

    if (*lr_coef) {
      const auto a = parse_partition_arg(p1), c = parse_partition_arg(p2), b = parse_partition_arg(p3);
      const auto value = s.cache.coefficient(a, c, b);
      if (s.json_mode())
        s.emit(json{{"a", to_json(a)}, {"c", to_json(c)}, {"b", to_json(b)}, {"value", value.str()}});
      else
        out << value << "\n";
    } else if (*lr_prod) {
      const auto dec = tensor_product(parse_partition_arg(p1), parse_partition_arg(p2), s.ctx(), s.cache);
      if (s.json_mode()) s.emit(to_json(dec)); else out << format_decomposition(dec);
    } else if (*lr_power) {
      const auto dec = tensor_power(parse_partition_arg(p1), n, s.ctx(), s.cache);
      if (s.json_mode()) s.emit(to_json(dec)); else out << format_decomposition(dec);
    } else if (*dom) {
      const auto b = parse_partition_arg(p1), a = parse_partition_arg(p2);
      const bool v = dominated_ext(b, a, cfg.rank);
      if (s.json_mode())
        s.emit(json{{"b", to_json(b)}, {"a", to_json(a)}, {"rank", cfg.rank}, {"dominated", v}});
      else
        out << detail::bool_text(v) << "\n";
    } else if (*gens) {
      const auto a = parse_partition_arg(p1);
      const auto table = generator_table(a, s.ctx());
      if (s.json_mode()) {
        json rows = json::array();
        for (const auto& g : table) rows.push_back(json{{"L", to_json(g.blocks)}, {"v", to_json(g.v)}});
        s.emit(json{{"a", to_json(a)}, {"rank", cfg.rank}, {"mu", s.ctx().mu}, {"generators", std::move(rows)}});
      } else {
        for (const auto& g : table) out << to_string(g.blocks) << "\t" << g.v << "\n";
      }
    } else if (*sigma) {
      const auto sg = s.sigma_for(parse_partition_arg(p1));
      if (s.json_mode()) {
        json members = json::array();
        for (const auto& m : sg.members) members.push_back(to_json(m));
        s.emit(json{{"a", to_json(sg.a)}, {"rank", sg.rank}, {"weight_cap", sg.weight_cap}, {"members", std::move(members)}});
      } else {
        for (const auto& m : sg.members) out << m << "\n";
      }
    } else if (*decomp) {
      const auto b = parse_partition_arg(p1), a = parse_partition_arg(p2);
      const auto w = decompose(b, a, s.ctx(), s.sigma_for(a));
      if (s.json_mode())
        s.emit(json{{"b", to_json(b)}, {"a", to_json(a)}, {"c", to_json(w.c)}, {"M", w.M}, {"m", to_json(w.m)}});
      else
        out << "c=" << w.c << " M=" << w.M << " m=" << format_counts(w.m) << "\n";
    } else if (*cert) {
      const auto a = parse_partition_arg(p1);
      const auto certs = certify(a, n, s.ctx(), s.sigma_for(a), s.cache);
      for (const auto& c : certs) {
        if (s.json_mode()) s.emit(to_json(c)); else out << format_record(c) << "\n";
        if (!c.verified) status = exit_code::property_violation;
      }
    } else if (*dim) {
      const auto a = parse_partition_arg(p1);
      const auto v = dim_schur(a, cfg.rank);
      if (s.json_mode()) s.emit(json{{"a", to_json(a)}, {"rank", cfg.rank}, {"dim", v.str()}}); else out << v << "\n";
    } else if (*flagsig) {
      const auto sig = signature_of(parse_partition_arg(p1), cfg.rank);
      if (s.json_mode()) {
        s.emit(json{{"s", sig.s}, {"exponents", sig.exponents}});
      } else {
        std::string ss, es;
        for (auto x : sig.s) ss += (ss.empty() ? "" : ",") + std::to_string(x);
        for (auto x : sig.exponents) es += (es.empty() ? "" : ",") + std::to_string(x);
        out << "s=" << ss << " exponents=" << es << "\n";
      }
    } else if (*check_sg) {
      const auto rep = check_semigroup_samples(cfg.samples, cfg.seed, max_weight, s.ctx(), s.cache);
      if (s.json_mode()) {
        json fails = json::array();
        for (const auto& f : rep.failures)
          fails.push_back(json{{"a", to_json(f.a)}, {"b", to_json(f.b)}, {"c", to_json(f.c)},
                               {"d", to_json(f.dd)}, {"e", to_json(f.e)}, {"f", to_json(f.f)}});
        s.emit(json{{"samples", rep.samples}, {"failures", std::move(fails)}});
      } else {
        out << "samples=" << rep.samples << " failures=" << rep.failures.size() << "\n";
        for (const auto& f : rep.failures)
          out << "FAIL " << f.a << " " << f.b << " " << f.c << " " << f.dd << " " << f.e << " " << f.f << "\n";
      }
      if (!rep.ok()) status = exit_code::property_violation;
    } else if (*check_dom) {
      const auto rep = check_dominance_bound(parse_partition_arg(p1), n, s.ctx(), s.cache);
      if (s.json_mode()) {
        json viol = json::array();
        for (const auto& v : rep.violations) viol.push_back(to_json(v));
        s.emit(json{{"a", to_json(rep.a)}, {"n", rep.n}, {"checked", rep.checked}, {"violations", std::move(viol)}});
      } else {
        out << "checked=" << rep.checked << " violations=" << rep.violations.size() << "\n";
        for (const auto& v : rep.violations) out << "VIOLATION " << v << "\n";
      }
      if (!rep.ok()) status = exit_code::property_violation;
    }

    if (!cfg.cache_path.empty() && s.cache.size() != cached_before) cache_store(cfg.cache_path, s.cache.snapshot());
    return status;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == errc::no_decomposition ? exit_code::no_decomposition : exit_code::usage;
  }
}

}  // namespace schurkit::cli
