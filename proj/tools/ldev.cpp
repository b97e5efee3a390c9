// Command-line front end: exact laws, approximating families, ratio reports,
// schedule sweeps, lemma verification and regime condition checks.
//
// Exit codes: 0 success; 2 parameter/regime/memory problems; 3 numerical
// instability; 4 a verification command found a failing check.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "ldev/approx_family.hpp"
#include "ldev/config.hpp"
#include "ldev/errors.hpp"
#include "ldev/exact_dist.hpp"
#include "ldev/io_util.hpp"
#include "ldev/kernels.hpp"
#include "ldev/lemma_checks.hpp"
#include "ldev/moments.hpp"
#include "ldev/report.hpp"

namespace {

using namespace ldev;

WindowStatistic stat_from_name(const std::string& s) {
  if (s == "two_runs" || s == "two-runs") return WindowStatistic::two_runs();
  if (s == "n11") return WindowStatistic::n11_event();
  const std::string prefix = "nk1k2:";
  if (s.rfind(prefix, 0) == 0) {
    const std::string rest = s.substr(prefix.size());
    const std::size_t comma = rest.find(',');
    if (comma != std::string::npos) {
      try {
        return WindowStatistic::nk1k2_event(std::stoi(rest.substr(0, comma)),
                                            std::stoi(rest.substr(comma + 1)));
      } catch (const std::exception&) {
      }
    }
    throw RegimeError("statistic: nk1k2 needs the form nk1k2:<k1>,<k2>");
  }
  throw RegimeError("statistic: unknown name " + s + " (two_runs | n11 | nk1k2:<k1>,<k2>)");
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
  } else {
    write_text_file(resolve_out_path(out_path), content);
  }
}

std::string pmf_to_string(const LatticePMF& pmf, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    pmf.write_json(os);
  } else {
    pmf.write_csv(os);
  }
  return os.str();
}

ConditionThresholds thresholds_from_mode(const std::string& mode, double e5nu1, double ymax,
                                         double frac) {
  if (mode == "strict") return ConditionThresholds::strict();
  if (mode == "relaxed") return ConditionThresholds::relaxed(e5nu1, ymax, frac);
  throw RegimeError("mode must be strict or relaxed");
}

struct ExactArgs {
  std::string stat = "two_runs";
  std::int64_t n = 0;
  double p = 0.0;
  std::string cap = "none";
  std::string method = "auto";
  std::string out;
  std::string format = "csv";
};

int run_exact(const ExactArgs& a) {
  const WindowStatistic stat = stat_from_name(a.stat);
  std::optional<std::int64_t> cap;
  if (a.cap != "none") {
    try {
      std::size_t used = 0;
      cap = std::stoll(a.cap, &used);
      if (used != a.cap.size()) throw std::invalid_argument(a.cap);
    } catch (const std::exception&) {
      throw RegimeError("exact: --cap must be none or an integer");
    }
  }
  std::string method = a.method;
  if (method == "auto") method = (a.n > 5000000 && cap) ? "matpow" : "dp";
  const BernoulliChainSpec chain{a.n, a.p};
  LatticePMF pmf;
  if (method == "matpow") {
    if (!cap) throw RegimeError("exact: --method matpow needs --cap");
    pmf = pmf_matpow(stat, chain, *cap);
  } else if (method == "dp") {
    pmf = pmf_dp(stat, chain, cap);
  } else {
    throw RegimeError("exact: --method must be auto, dp, or matpow");
  }
  emit(pmf_to_string(pmf, a.format), a.out);
  return 0;
}

struct ApproxArgs {
  int theorem = 3;
  std::string stat;
  int m = 1;
  std::int64_t n = 0;
  double p = 0.0;
  double x = -1.0;  // tail center for theorem 2
  std::int64_t lo = -1, hi = -1;
  std::string out;
  std::string format = "csv";
};

int run_approx(const ApproxArgs& a) {
  std::optional<ApproxFamily> fam;
  std::vector<std::pair<std::string, std::string>> params;
  params.emplace_back("theorem", fmt_int(a.theorem));
  if (a.theorem == 1 || a.theorem == 2) {
    const WindowStatistic stat = stat_from_name(a.stat.empty() ? "n11" : a.stat);
    const MomentSet ms = block_moments(stat, a.p, a.m);
    params.emplace_back("nu1", fmt17(ms.nu1));
    if (a.theorem == 1) {
      fam = ApproxFamily::poisson(static_cast<double>(a.n) * ms.nu1);
    } else {
      if (a.x < 0.0) throw RegimeError("approx: theorem 2 needs --x (tail start)");
      const double y = rel_dev_y(a.n, ms.nu1, a.x);
      const double lam = lambda_star(ms.nu1, y);
      params.emplace_back("x", fmt17(a.x));
      params.emplace_back("lambda_star", fmt17(lam));
      fam = ApproxFamily::poisson(static_cast<double>(a.n) * lam);
    }
  } else if (a.theorem == 3) {
    fam = ApproxFamily::neg_binomial(nb_params(a.n, a.p));
  } else if (a.theorem == 4) {
    fam = ApproxFamily::binomial(bi_params(a.n, a.p));
  } else {
    throw RegimeError("approx: --theorem must be 1..4");
  }
  const double mean = fam->mean();
  const double sdv = std::sqrt(fam->variance());
  std::int64_t lo = a.lo >= 0 ? a.lo : std::max<std::int64_t>(0, std::llround(mean - 4 * sdv));
  std::int64_t hi = a.hi >= 0 ? a.hi : std::llround(mean + 4 * sdv);
  if (hi < lo) throw RegimeError("approx: empty output range");
  if (hi - lo > 2000000) throw RegimeError("approx: range holds more than 2e6 points");
  params.emplace_back("mean", fmt17(mean));
  params.emplace_back("variance", fmt17(fam->variance()));

  std::ostringstream os;
  if (a.format == "json") {
    os << "{\"schema\":1,\"kind\":\"approx\",\"family\":";
    fam->write_json(os);
    os << ",\"params\":{";
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (i) os << ',';
      os << '"' << json_escape(params[i].first) << "\":\"" << json_escape(params[i].second)
         << '"';
    }
    os << "},\"rows\":[";
    bool first = true;
    for (std::int64_t k = lo; k <= hi; ++k) {
      const LogReal m = fam->pmf(k);
      if (!first) os << ',';
      first = false;
      os << "{\"x\":" << k << ",\"log_prob\":"
         << (m.is_zero() ? std::string("null") : fmt17(m.log_value()))
         << ",\"prob\":" << fmt17(m.linear()) << "}";
    }
    os << "]}";
  } else {
    os << "# ldev-csv schema=1 kind=approx\n";
    for (const auto& kv : params) os << "# " << kv.first << "=" << kv.second << "\n";
    os << "x,log_prob,prob\n";
    for (std::int64_t k = lo; k <= hi; ++k) {
      const LogReal m = fam->pmf(k);
      os << k << ',' << (m.is_zero() ? std::string("-inf") : fmt17(m.log_value())) << ','
         << fmt17(m.linear()) << "\n";
    }
  }
  emit(os.str(), a.out);
  return 0;
}

struct RatioCliArgs {
  int theorem = 3;
  std::string stat;
  int m = 1;
  std::int64_t n = 0;
  double p = 0.0;
  std::string x;        // "lo:hi"
  std::string xs;       // explicit list
  std::string offsets;  // sd offsets
  bool zone = false;
  double c = 2.0;
  std::string cap = "auto";
  std::string method = "auto";
  std::string mode = "strict";
  double e5nu1_max = 0.002;
  double y_abs_max = 0.1;
  double pair_fraction = 0.05;
  double zone_c = 1.0;
  bool zone_no_log = false;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
};

RatioArgs to_ratio_args(const RatioCliArgs& a) {
  RatioArgs r;
  r.theorem = a.theorem;
  if (!a.stat.empty()) r.stat = stat_from_name(a.stat);
  r.m = a.m;
  r.n = a.n;
  r.p = a.p;
  if (!a.x.empty()) {
    const std::size_t colon = a.x.find(':');
    try {
      if (colon == std::string::npos) {
        r.xrange.kind = XRange::Kind::explicit_list;
        r.xrange.xs = {std::stoll(a.x)};
      } else {
        r.xrange.kind = XRange::Kind::absolute;
        r.xrange.lo = std::stoll(a.x.substr(0, colon));
        r.xrange.hi = std::stoll(a.x.substr(colon + 1));
      }
    } catch (const std::exception&) {
      throw RegimeError("ratio: --x must be <int> or <lo>:<hi>");
    }
  } else if (!a.xs.empty()) {
    r.xrange.kind = XRange::Kind::explicit_list;
    std::istringstream in(a.xs);
    std::int64_t v;
    while (in >> v) r.xrange.xs.push_back(v);
    if (r.xrange.xs.empty()) throw RegimeError("ratio: --xs must list integers");
  } else if (!a.offsets.empty()) {
    r.xrange.kind = XRange::Kind::sd_offsets;
    std::istringstream in(a.offsets);
    double v;
    while (in >> v) r.xrange.offsets.push_back(v);
    if (r.xrange.offsets.empty()) throw RegimeError("ratio: --offsets must list reals");
  } else if (a.zone) {
    r.xrange.kind = XRange::Kind::zone_proxy;
    r.xrange.c = a.c;
  } else {
    r.xrange.kind = XRange::Kind::mean_pm_sd;
    r.xrange.c = a.c;
  }
  r.method = a.method;
  r.cap_rule = a.cap;
  r.cond = thresholds_from_mode(a.mode, a.e5nu1_max, a.y_abs_max, a.pair_fraction);
  r.zone.c = a.zone_c;
  r.zone.divide_by_log_n = !a.zone_no_log;
  r.seed = a.seed;
  return r;
}

int run_ratio_cli(const RatioCliArgs& a) {
  const RatioReport rep = run_ratio(to_ratio_args(a));
  std::string format = a.format;
  if (!a.out.empty()) {
    if (a.out.size() > 5 && a.out.substr(a.out.size() - 5) == ".json") format = "json";
    if (a.out.size() > 4 && a.out.substr(a.out.size() - 4) == ".csv") format = "csv";
  }
  emit(format == "json" ? rep.to_json() : rep.to_csv(), a.out);
  return 0;
}

struct SweepCliArgs {
  std::string config;
  int workers = 0;  // 0 = use config value
  std::string out;  // overrides out_dir
  std::string format = "csv";
};

int run_sweep_cli(const SweepCliArgs& a) {
  SweepConfigData cfg = SweepConfigData::from_config(Config::parse_file(a.config));
  if (a.workers > 0) cfg.workers = a.workers;
  if (!a.out.empty()) cfg.out_dir = a.out;
  const SweepResult res = run_sweep(cfg);
  std::cout << (a.format == "json" ? res.summary_json() : res.summary_csv());
  if (a.format == "json") std::cout << '\n';
  return 0;
}

struct VerifyArgs {
  std::uint64_t seed = 42;
  std::vector<std::string> only;
  double grid_lo = 1.0, grid_hi = 1000.0, grid_step = 0.5;
  std::string out;
  std::string format = "text";
};

int run_verify(const VerifyArgs& a) {
  const LemmaGrid grid{a.grid_lo, a.grid_hi, a.grid_step};
  std::vector<std::pair<std::string, std::function<LemmaCheckResult()>>> suites = {
      {"gamma_bracket", [&] { return check_gamma_bounds(grid); }},
      {"tv_inversion_bound", [&] { return check_inversion_bound(a.seed, 200); }},
      {"conjugate_inversion", [] { return check_conjugate_inversion(); }},
      {"poisson_saddle_product", [] { return check_poisson_tilt_identity(); }},
      {"nb_saddle_product", [] { return check_nb_tilt_identity(); }},
      {"bi_saddle_product", [] { return check_bi_tilt_identity(); }},
      {"bracket_magnitude_bound", [&] { return check_moment_bracket_bound(a.seed + 1); }},
      {"tilted_cf_ratio", [&] { return check_cf_tilt_ratio(a.seed + 2); }},
      {"series_closed_forms", [] { return check_series_closed_forms(); }},
      {"binomial_exponent_identity", [] { return check_tilting_identity(); }},
  };
  std::vector<LemmaCheckResult> results;
  for (const auto& [name, fn] : suites) {
    if (!a.only.empty() &&
        std::find(a.only.begin(), a.only.end(), name) == a.only.end()) {
      continue;
    }
    results.push_back(fn());
  }
  if (results.empty()) throw RegimeError("verify-lemmas: no suite matches --only");

  std::ostringstream os;
  bool all_pass = true;
  if (a.format == "json") {
    os << "{\"schema\":1,\"kind\":\"lemma-checks\",\"results\":[";
    for (std::size_t i = 0; i < results.size(); ++i) {
      const LemmaCheckResult& r = results[i];
      if (i) os << ',';
      os << "{\"name\":\"" << json_escape(r.name) << "\",\"pass\":" << (r.pass ? "true" : "false")
         << ",\"worst_margin\":" << fmt17(r.worst_margin) << ",\"detail\":\""
         << json_escape(r.detail) << "\"}";
      all_pass = all_pass && r.pass;
    }
    os << "],\"all_pass\":" << (all_pass ? "true" : "false") << "}";
  } else {
    for (const LemmaCheckResult& r : results) {
      os << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << "  worst_margin=" << fmt17(r.worst_margin)
         << "  (" << r.detail << ")\n";
      all_pass = all_pass && r.pass;
    }
  }
  emit(os.str(), a.out);
  return all_pass ? 0 : 4;
}

struct CondArgs {
  std::string stat = "n11";
  int m = 1;
  std::int64_t n = 0;
  double p = 0.0;
  double x = -1.0;
  std::string mode = "strict";
  double e5nu1_max = 0.002;
  double y_abs_max = 0.1;
  double pair_fraction = 0.05;
  std::string out;
};

int run_check_conditions(const CondArgs& a) {
  const WindowStatistic stat = stat_from_name(a.stat);
  MomentSet ms = block_moments(stat, a.p, a.m);
  ms.n_blocks = a.n;
  const double x = a.x >= 0.0 ? a.x : static_cast<double>(a.n) * ms.nu1;
  const ConditionThresholds th =
      thresholds_from_mode(a.mode, a.e5nu1_max, a.y_abs_max, a.pair_fraction);
  const ConditionReport rep = check_conditions(ms, a.n, x, th);
  std::ostringstream os;
  rep.write_json(os);
  emit(os.str(), a.out);
  return rep.all_pass ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"windowed Bernoulli statistics: exact laws vs Poisson/negative binomial/binomial "
               "approximations in the large deviation regime"};
  app.require_subcommand(1);

  ExactArgs ea;
  CLI::App* exact = app.add_subcommand("exact", "exact distribution of the windowed statistic");
  exact->add_option("--stat", ea.stat, "two_runs | n11 | nk1k2:<k1>,<k2>");
  exact->add_option("--n", ea.n, "number of window terms")->required();
  exact->add_option("--p", ea.p, "Bernoulli success probability")->required();
  exact->add_option("--cap", ea.cap, "none or an integer count cap (lumped exactly)");
  exact->add_option("--method", ea.method, "auto | dp | matpow");
  exact->add_option("--out", ea.out, "output path (default stdout)");
  exact->add_option("--format", ea.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  ApproxArgs aa;
  CLI::App* approx = app.add_subcommand("approx", "approximating family table");
  approx->add_option("--theorem", aa.theorem, "1..4")->required();
  approx->add_option("--stat", aa.stat, "statistic for theorems 1-2 moments");
  approx->add_option("--m", aa.m, "block length (theorems 1-2)");
  approx->add_option("--n", aa.n, "blocks (thm 1-2) or terms (thm 3-4)")->required();
  approx->add_option("--p", aa.p, "Bernoulli success probability")->required();
  approx->add_option("--x", aa.x, "tail start (theorem 2)");
  approx->add_option("--lo", aa.lo, "first point to print");
  approx->add_option("--hi", aa.hi, "last point to print");
  approx->add_option("--out", aa.out, "output path (default stdout)");
  approx->add_option("--format", aa.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  RatioCliArgs ra;
  CLI::App* ratio = app.add_subcommand("ratio", "exact-to-approximation ratio report");
  ratio->add_option("--theorem", ra.theorem, "1..4")->required();
  ratio->add_option("--stat", ra.stat, "two_runs | n11 | nk1k2:<k1>,<k2>");
  ratio->add_option("--m", ra.m, "block length (theorems 1-2)");
  ratio->add_option("--n", ra.n, "blocks (thm 1-2) or terms (thm 3-4)")->required();
  ratio->add_option("--p", ra.p, "Bernoulli success probability")->required();
  ratio->add_option("--x", ra.x, "absolute x or <lo>:<hi>");
  ratio->add_option("--xs", ra.xs, "space-separated explicit x list");
  ratio->add_option("--offsets", ra.offsets, "space-separated sd offsets from the mean");
  ratio->add_flag("--zone", ra.zone, "use the zone proxy as the x range");
  ratio->add_option("--c", ra.c, "half-width multiplier for sd/zone ranges");
  ratio->add_option("--cap", ra.cap, "auto | none | integer");
  ratio->add_option("--method", ra.method, "auto | dp | matpow");
  ratio->add_option("--mode", ra.mode, "strict | relaxed condition thresholds");
  ratio->add_option("--e5nu1-max", ra.e5nu1_max, "relaxed threshold for e^{5c0} nu1");
  ratio->add_option("--y-abs-max", ra.y_abs_max, "relaxed threshold for |y|");
  ratio->add_option("--pair-fraction", ra.pair_fraction, "relaxed pair-moment fraction");
  ratio->add_option("--zone-c", ra.zone_c, "zone proxy multiplier");
  ratio->add_flag("--zone-no-log", ra.zone_no_log, "do not divide the zone bound by ln(n)");
  ratio->add_option("--seed", ra.seed, "echoed into the report header");
  ratio->add_option("--out", ra.out, "output path (default stdout)");
  ratio->add_option("--format", ra.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));

  SweepCliArgs sa;
  CLI::App* sweep = app.add_subcommand("sweep", "run a schedule from a config file");
  sweep->add_option("--config", sa.config, "config path")->required();
  sweep->add_option("--workers", sa.workers, "override [sweep] workers");
  sweep->add_option("--out", sa.out, "override [sweep] out_dir");
  sweep->add_option("--format", sa.format, "csv | json summary on stdout")
      ->check(CLI::IsMember({"csv", "json"}));

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify-lemmas", "run the named validation suites");
  verify->add_option("--seed", va.seed, "seed for the randomized suites");
  verify->add_option("--only", va.only, "run only these suites (repeatable)");
  verify->add_option("--grid-lo", va.grid_lo, "gamma bracket grid start");
  verify->add_option("--grid-hi", va.grid_hi, "gamma bracket grid end");
  verify->add_option("--grid-step", va.grid_step, "gamma bracket grid step");
  verify->add_option("--out", va.out, "output path (default stdout)");
  verify->add_option("--format", va.format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));

  CondArgs ca;
  CLI::App* cond = app.add_subcommand("check-conditions", "regime condition report");
  cond->add_option("--stat", ca.stat, "two_runs | n11 | nk1k2:<k1>,<k2>");
  cond->add_option("--m", ca.m, "block length");
  cond->add_option("--n", ca.n, "number of blocks")->required();
  cond->add_option("--p", ca.p, "Bernoulli success probability")->required();
  cond->add_option("--x", ca.x, "deviation point (default: the mean)");
  cond->add_option("--mode", ca.mode, "strict | relaxed");
  cond->add_option("--e5nu1-max", ca.e5nu1_max, "relaxed threshold for e^{5c0} nu1");
  cond->add_option("--y-abs-max", ca.y_abs_max, "relaxed threshold for |y|");
  cond->add_option("--pair-fraction", ca.pair_fraction, "relaxed pair-moment fraction");
  cond->add_option("--out", ca.out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(exact)) return run_exact(ea);
    if (app.got_subcommand(approx)) return run_approx(aa);
    if (app.got_subcommand(ratio)) return run_ratio_cli(ra);
    if (app.got_subcommand(sweep)) return run_sweep_cli(sa);
    if (app.got_subcommand(verify)) return run_verify(va);
    if (app.got_subcommand(cond)) return run_check_conditions(ca);
  } catch (const InstabilityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const RegimeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const MemoryLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
