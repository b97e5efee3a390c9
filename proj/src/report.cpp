#include "ldev/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <set>
#include <sstream>

#include "ldev/approx_family.hpp"
#include "ldev/errors.hpp"
#include "ldev/exact_dist.hpp"
#include "ldev/io_util.hpp"
#include "ldev/saddle.hpp"

namespace ldev {

namespace {

WindowStatistic default_stat(int theorem) {
  return theorem == 3 ? WindowStatistic::two_runs() : WindowStatistic::n11_event();
}

std::string sanitize_csv(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return out;
}

// JSON has no literal for NaN/inf; emit null for non-finite values.
std::string jnum(double x) { return std::isfinite(x) ? fmt17(x) : "null"; }

std::vector<std::int64_t> build_x_list(const XRange& xr, double mean, double sd,
                                       double zone_threshold, std::int64_t full_top) {
  std::set<std::int64_t> xs;
  auto add = [&](double lo, double hi) {
    const std::int64_t a = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(lo)));
    const std::int64_t b = std::min(full_top, static_cast<std::int64_t>(std::floor(hi)));
    if (b - a > 2000000) {
      throw RegimeError("ratio: x range holds more than 2e6 points; narrow it");
    }
    for (std::int64_t x = a; x <= b; ++x) xs.insert(x);
  };
  switch (xr.kind) {
    case XRange::Kind::absolute:
      add(static_cast<double>(xr.lo), static_cast<double>(xr.hi));
      break;
    case XRange::Kind::mean_pm_sd:
      add(mean - xr.c * sd, mean + xr.c * sd);
      break;
    case XRange::Kind::zone_proxy:
      add(mean - xr.c * zone_threshold, mean + xr.c * zone_threshold);
      break;
    case XRange::Kind::explicit_list:
      for (std::int64_t x : xr.xs) {
        if (x >= 0 && x <= full_top) xs.insert(x);
      }
      break;
    case XRange::Kind::sd_offsets:
      for (double off : xr.offsets) {
        const std::int64_t x = std::llround(mean + off * sd);
        if (x >= 0 && x <= full_top) xs.insert(x);
      }
      break;
  }
  return {xs.begin(), xs.end()};
}

struct CapChoice {
  std::optional<std::int64_t> cap;
  std::string rule_echo;
};

CapChoice resolve_cap(const std::string& rule, double mean, double sd, std::int64_t max_x,
                      std::int64_t full_top) {
  CapChoice out;
  if (rule == "none") {
    out.rule_echo = "none";
    return out;
  }
  std::int64_t cap;
  if (rule == "auto" || rule.empty()) {
    cap = static_cast<std::int64_t>(std::ceil(mean + 12.0 * sd + 30.0));
  } else {
    try {
      std::size_t used = 0;
      cap = std::stoll(rule, &used);
      if (used != rule.size()) throw std::invalid_argument(rule);
    } catch (const std::exception&) {
      throw RegimeError("ratio: cap rule must be auto, none, or an integer: " + rule);
    }
    if (cap < 1) throw RegimeError("ratio: explicit cap must be >= 1");
  }
  cap = std::max(cap, max_x + 1);  // every requested x must stay below the lump
  cap = std::min(cap, full_top);
  out.cap = cap;
  out.rule_echo = (rule == "auto" || rule.empty()) ? "auto" : "explicit";
  return out;
}

std::string resolve_method(const std::string& method, std::int64_t n_terms, bool has_cap) {
  if (method == "dp" || method == "matpow") return method;
  if (method != "auto" && !method.empty()) {
    throw RegimeError("ratio: method must be auto, dp, or matpow: " + method);
  }
  if (n_terms > 5000000 && has_cap) return "matpow";
  return "dp";
}

}  // namespace

RatioReport run_ratio(const RatioArgs& args) {
  if (args.theorem < 1 || args.theorem > 4) {
    throw RegimeError("ratio: theorem must be 1, 2, 3, or 4");
  }
  if (args.n < 1) throw RegimeError("ratio: n must be >= 1");
  if (!(args.p > 0.0 && args.p < 1.0)) throw RegimeError("ratio: p must lie in (0,1)");

  const bool grouped = (args.theorem == 1 || args.theorem == 2);
  const WindowStatistic stat = args.stat.payoff.empty() ? default_stat(args.theorem) : args.stat;
  const int m = grouped ? args.m : 1;
  if (grouped) group_blocks(stat, m);  // validates m >= width-1
  const std::int64_t n_terms = grouped ? args.n * static_cast<std::int64_t>(m) : args.n;
  const std::int64_t full_top = n_terms * static_cast<std::int64_t>(stat.max_payoff());

  // Moments / family setup.
  MomentSet ms;
  double mean = 0.0;
  double sd = 0.0;
  std::optional<ApproxFamily> fam;  // fixed family (thm 1/3/4)
  std::optional<NBParams> nbp;
  std::optional<BIParams> bip;
  if (grouped) {
    ms = block_moments(stat, args.p, m);
    ms.n_blocks = args.n;
    mean = static_cast<double>(args.n) * ms.nu1;
    sd = std::sqrt(mean);
    if (args.theorem == 1) fam = ApproxFamily::poisson(mean);
  } else if (args.theorem == 3) {
    nbp = nb_params(args.n, args.p);
    fam = ApproxFamily::neg_binomial(*nbp);
    mean = fam->mean();
    sd = std::sqrt(fam->variance());
  } else {
    bip = bi_params(args.n, args.p);
    fam = ApproxFamily::binomial(*bip);
    mean = fam->mean();
    sd = std::sqrt(fam->variance());
  }
  if (!(mean > 0.0)) throw RegimeError("ratio: approximating mean must be positive");

  // Zone threshold at the center (independent of x).
  MainTermPrediction center;
  switch (args.theorem) {
    case 1:
      center = predict_main_term_thm1(args.n, ms, mean, args.zone);
      break;
    case 2:
      center = predict_main_term_thm2(args.n, ms, mean, args.zone);
      break;
    case 3:
      center = predict_main_term_thm3(args.n, args.p, mean, args.zone);
      break;
    default:
      center = predict_main_term_thm4(args.n, args.p, mean, args.zone);
      break;
  }

  const std::vector<std::int64_t> xs =
      build_x_list(args.xrange, mean, sd, center.zone_threshold, full_top);

  const std::int64_t max_x = xs.empty() ? static_cast<std::int64_t>(std::ceil(mean)) : xs.back();
  const CapChoice cap = resolve_cap(args.cap_rule, mean, sd, max_x, full_top);
  const std::string method = resolve_method(args.method, n_terms, cap.cap.has_value());

  const BernoulliChainSpec chain{n_terms, args.p};
  LatticePMF pmf;
  if (method == "matpow") {
    if (!cap.cap) throw RegimeError("ratio: matpow needs a finite cap");
    pmf = pmf_matpow(stat, chain, *cap.cap);
  } else {
    pmf = pmf_dp(stat, chain, cap.cap);
  }

  RatioReport rep;
  rep.theorem = args.theorem;
  rep.rows.reserve(xs.size());
  double metric = 0.0;
  double fitted_k = 0.0;
  bool any_row = false;

  for (std::int64_t x : xs) {
    RatioRow row;
    row.x = x;
    const double xd = static_cast<double>(x);
    row.y = (xd - mean) / mean;

    MainTermPrediction pred;
    switch (args.theorem) {
      case 1:
        pred = predict_main_term_thm1(args.n, ms, xd, args.zone);
        break;
      case 2:
        pred = predict_main_term_thm2(args.n, ms, xd, args.zone);
        break;
      case 3:
        pred = predict_main_term_thm3(args.n, args.p, xd, args.zone);
        break;
      default:
        pred = predict_main_term_thm4(args.n, args.p, xd, args.zone);
        break;
    }
    row.zone_ok = pred.zone_ok;
    row.log_main_term = pred.log_main_term;
    row.error_scale = pred.error_scale;
    if (grouped) {
      row.cond_ok = check_conditions(ms, args.n, xd, args.cond).all_pass;
    }

    LogReal exact;
    LogReal approx;
    if (args.theorem == 2) {
      if (xd <= mean) {
        row.skipped = true;
        row.skip_reason = "tail comparison needs x above the mean";
        rep.rows.push_back(row);
        continue;
      }
      const double lam = lambda_star(ms.nu1, row.y);
      row.lambda_star = lam;
      const ApproxFamily zstar = ApproxFamily::poisson(static_cast<double>(args.n) * lam);
      exact = pmf.tail_from(x);
      approx = zstar.tail(x);
      if (!approx.is_zero() && approx.log_value() < args.tuning.tail_floor_log) {
        row.skipped = true;
        row.skip_reason = "approximating tail below certified floor";
        rep.rows.push_back(row);
        continue;
      }
      if (x > 0) row.saddle_a = saddle_poisson_z(static_cast<double>(args.n), ms.nu1, xd).value;
    } else {
      exact = pmf.mass(x);
      approx = fam->pmf(x);
      if (args.theorem == 1) {
        if (x > 0 && xd < static_cast<double>(args.n)) {
          row.saddle_a = saddle_binomial_h(static_cast<double>(args.n), ms.nu1, xd).value;
          row.saddle_b = saddle_poisson_z(static_cast<double>(args.n), ms.nu1, xd).value;
        }
      } else if (args.theorem == 3) {
        if (x > 0) row.saddle_a = saddle_nb_w(nbp->r, nbp->pbar, xd).value;
      } else {
        if (x > 0 && x < bip->trials) {
          row.saddle_a = saddle_bi_htilde(bip->trials, bip->ptilde, xd).value;
        }
      }
    }

    if (approx.is_zero()) {
      row.skipped = true;
      row.skip_reason = "approximating law puts zero mass here";
      rep.rows.push_back(row);
      continue;
    }
    if (exact.is_zero()) {
      row.skipped = true;
      row.skip_reason = "exact law puts zero mass here";
      rep.rows.push_back(row);
      continue;
    }

    row.log_exact = exact.log_value();
    row.log_approx = approx.log_value();
    row.ratio = std::exp(row.log_exact - row.log_approx);
    row.ratio_over_main = std::exp(row.log_exact - row.log_approx - row.log_main_term);
    any_row = true;
    const double dev = std::abs(row.ratio_over_main - 1.0);
    metric = std::max(metric, dev);
    if (grouped && pred.error_scale > 0.0) {
      fitted_k = std::max(fitted_k, dev / pred.error_scale);
    }
    rep.rows.push_back(row);
  }

  rep.metric = any_row ? metric : std::nan("");
  rep.fitted_k = grouped ? fitted_k : 0.0;

  // Header: inputs, law parameters, moments, truncation, outcome.
  auto& hd = rep.header;
  hd.emplace_back("theorem", fmt_int(args.theorem));
  hd.emplace_back("stat", stat.name);
  hd.emplace_back("width", fmt_int(stat.width));
  hd.emplace_back("m", fmt_int(m));
  hd.emplace_back(grouped ? "n_blocks" : "n", fmt_int(args.n));
  hd.emplace_back("n_terms", fmt_int(n_terms));
  hd.emplace_back("p", fmt17(args.p));
  hd.emplace_back("seed", std::to_string(args.seed));
  hd.emplace_back("method", method);
  hd.emplace_back("cap_rule", cap.rule_echo);
  hd.emplace_back("cap", cap.cap ? fmt_int(*cap.cap) : "none");
  hd.emplace_back("truncated", pmf.truncated() ? "1" : "0");
  hd.emplace_back("truncation_log_mass",
                  pmf.truncation_bound().is_zero() ? "-inf" : fmt17(pmf.truncation_bound().log_value()));
  hd.emplace_back("mean", fmt17(mean));
  hd.emplace_back("sd", fmt17(sd));
  if (grouped) {
    hd.emplace_back("nu1", fmt17(ms.nu1));
    hd.emplace_back("nu2", fmt17(ms.nu2));
    hd.emplace_back("ex1x2", fmt17(ms.ex1x2));
    hd.emplace_back("c0", fmt_int(ms.c0));
    hd.emplace_back("gamma", fmt17(gamma_of(ms)));
    hd.emplace_back("cond_mode", args.cond.mode_name);
    hd.emplace_back("family", args.theorem == 1 ? "poisson" : "poisson_per_x");
    if (args.theorem == 1) hd.emplace_back("lambda", fmt17(mean));
    if (args.theorem == 2) hd.emplace_back("tail_floor_log", fmt17(args.tuning.tail_floor_log));
  } else if (args.theorem == 3) {
    hd.emplace_back("family", "neg_binomial");
    hd.emplace_back("r", fmt17(nbp->r));
    hd.emplace_back("qbar", fmt17(nbp->qbar));
    hd.emplace_back("pbar", fmt17(nbp->pbar));
  } else {
    hd.emplace_back("family", "binomial");
    hd.emplace_back("trials", fmt_int(bip->trials));
    hd.emplace_back("ptilde", fmt17(bip->ptilde));
    hd.emplace_back("alpha", fmt17(bip->alpha));
  }
  hd.emplace_back("zone_bound", fmt17(center.zone_bound));
  hd.emplace_back("zone_threshold", fmt17(center.zone_threshold));
  hd.emplace_back("zone_c", fmt17(args.zone.c));
  hd.emplace_back("zone_log_divisor", args.zone.divide_by_log_n ? "1" : "0");
  hd.emplace_back("metric_kind", grouped ? "max_abs_ratio_over_main_minus_1" : "max_abs_ratio_minus_1");
  hd.emplace_back("metric", fmt17(rep.metric));
  if (grouped) hd.emplace_back("fitted_k", fmt17(rep.fitted_k));
  return rep;
}

std::string RatioReport::to_csv() const {
  std::ostringstream os;
  os << "# ldev-csv schema=1 kind=ratio\n";
  for (const auto& kv : header) os << "# " << kv.first << "=" << sanitize_csv(kv.second) << "\n";
  os << "x,y,log_exact,log_approx,ratio,log_main_term,ratio_over_main,error_scale,"
        "lambda_star,saddle_a,saddle_b,cond_ok,zone_ok,skipped,skip_reason\n";
  for (const RatioRow& r : rows) {
    os << r.x << ',' << fmt17(r.y) << ',' << fmt17(r.log_exact) << ',' << fmt17(r.log_approx)
       << ',' << fmt17(r.ratio) << ',' << fmt17(r.log_main_term) << ','
       << fmt17(r.ratio_over_main) << ',' << fmt17(r.error_scale) << ',' << fmt17(r.lambda_star)
       << ',' << fmt17(r.saddle_a) << ',' << fmt17(r.saddle_b) << ',' << (r.cond_ok ? 1 : 0)
       << ',' << (r.zone_ok ? 1 : 0) << ',' << (r.skipped ? 1 : 0) << ','
       << sanitize_csv(r.skip_reason) << "\n";
  }
  return os.str();
}

std::string RatioReport::to_json() const {
  std::ostringstream os;
  os << "{\"schema\":1,\"kind\":\"ratio\",\"theorem\":" << theorem << ",\"header\":{";
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) os << ',';
    os << '"' << json_escape(header[i].first) << "\":\"" << json_escape(header[i].second) << '"';
  }
  os << "},\"rows\":[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const RatioRow& r = rows[i];
    if (i) os << ',';
    os << "{\"x\":" << r.x << ",\"y\":" << jnum(r.y) << ",\"log_exact\":" << jnum(r.log_exact)
       << ",\"log_approx\":" << jnum(r.log_approx) << ",\"ratio\":" << jnum(r.ratio)
       << ",\"log_main_term\":" << jnum(r.log_main_term)
       << ",\"ratio_over_main\":" << jnum(r.ratio_over_main)
       << ",\"error_scale\":" << jnum(r.error_scale)
       << ",\"lambda_star\":" << jnum(r.lambda_star) << ",\"saddle_a\":" << jnum(r.saddle_a)
       << ",\"saddle_b\":" << jnum(r.saddle_b) << ",\"cond_ok\":" << (r.cond_ok ? "true" : "false")
       << ",\"zone_ok\":" << (r.zone_ok ? "true" : "false")
       << ",\"skipped\":" << (r.skipped ? "true" : "false") << ",\"skip_reason\":\""
       << json_escape(r.skip_reason) << "\"}";
  }
  os << "],\"metric\":" << jnum(metric) << ",\"fitted_k\":" << jnum(fitted_k) << "}";
  return os.str();
}

}  // namespace ldev
