#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "ldev/errors.hpp"
#include "ldev/io_util.hpp"
#include "ldev/report.hpp"

namespace ldev {

namespace {

WindowStatistic parse_stat(const std::string& s) {
  if (s == "two_runs" || s == "two-runs") return WindowStatistic::two_runs();
  if (s == "n11") return WindowStatistic::n11_event();
  const std::string prefix = "nk1k2:";
  if (s.rfind(prefix, 0) == 0) {
    const std::string rest = s.substr(prefix.size());
    const std::size_t comma = rest.find(',');
    if (comma != std::string::npos) {
      try {
        const int k1 = std::stoi(rest.substr(0, comma));
        const int k2 = std::stoi(rest.substr(comma + 1));
        return WindowStatistic::nk1k2_event(k1, k2);
      } catch (const std::exception&) {
      }
    }
    throw RegimeError("sweep: nk1k2 statistic needs the form nk1k2:<k1>,<k2>");
  }
  throw RegimeError("sweep: unknown statistic " + s + " (two_runs | n11 | nk1k2:<k1>,<k2>)");
}

XRange parse_xrange(const Config& cfg) {
  XRange xr;
  const std::string kind = cfg.get_or("xrange", "kind", "mean_pm_sd");
  if (kind == "absolute") {
    xr.kind = XRange::Kind::absolute;
    xr.lo = cfg.get_int("xrange", "lo");
    xr.hi = cfg.get_int("xrange", "hi");
  } else if (kind == "mean_pm_sd") {
    xr.kind = XRange::Kind::mean_pm_sd;
    xr.c = cfg.get_double_or("xrange", "c", 2.0);
  } else if (kind == "zone_proxy") {
    xr.kind = XRange::Kind::zone_proxy;
    xr.c = cfg.get_double_or("xrange", "c", 1.0);
  } else if (kind == "explicit" || kind == "explicit_list") {
    xr.kind = XRange::Kind::explicit_list;
    std::istringstream in(cfg.get("xrange", "xs"));
    std::int64_t v;
    while (in >> v) xr.xs.push_back(v);
    if (xr.xs.empty()) throw RegimeError("sweep: explicit xrange needs xs = <ints>");
  } else if (kind == "sd_offsets") {
    xr.kind = XRange::Kind::sd_offsets;
    std::istringstream in(cfg.get("xrange", "offsets"));
    double v;
    while (in >> v) xr.offsets.push_back(v);
    if (xr.offsets.empty()) throw RegimeError("sweep: sd_offsets xrange needs offsets = <reals>");
  } else {
    throw RegimeError("sweep: unknown xrange kind " + kind);
  }
  return xr;
}

ConditionThresholds parse_conditions(const Config& cfg) {
  const std::string mode = cfg.get_or("conditions", "mode", "strict");
  if (mode == "strict") return ConditionThresholds::strict();
  if (mode != "relaxed") throw RegimeError("sweep: conditions mode must be strict or relaxed");
  const ConditionThresholds base = ConditionThresholds::strict();
  return ConditionThresholds::relaxed(
      cfg.get_double_or("conditions", "e5nu1_max", base.e5nu1_max),
      cfg.get_double_or("conditions", "y_abs_max", base.y_abs_max),
      cfg.get_double_or("conditions", "pair_fraction", base.pair_fraction));
}

}  // namespace

SweepConfigData SweepConfigData::from_config(const Config& cfg) {
  SweepConfigData out;
  out.base.theorem = static_cast<int>(cfg.get_int_or("sweep", "theorem", 2));
  if (cfg.has("sweep", "stat")) out.base.stat = parse_stat(cfg.get("sweep", "stat"));
  out.base.m = static_cast<int>(cfg.get_int_or("sweep", "m", 1));
  out.base.method = cfg.get_or("sweep", "method", "auto");
  out.base.cap_rule = cfg.get_or("sweep", "cap", "auto");
  out.base.seed = static_cast<std::uint64_t>(cfg.get_int_or("sweep", "seed", 0));
  out.base.xrange = parse_xrange(cfg);
  out.base.cond = parse_conditions(cfg);
  out.base.zone.c = cfg.get_double_or("zone", "c", 1.0);
  if (cfg.has("zone", "log_divisor")) {
    const std::string v = cfg.get("zone", "log_divisor");
    if (v == "true" || v == "1") {
      out.base.zone.divide_by_log_n = true;
    } else if (v == "false" || v == "0") {
      out.base.zone.divide_by_log_n = false;
    } else {
      throw RegimeError("sweep: [zone] log_divisor must be true/false");
    }
  }
  out.base.tuning = Tuning::from_config(cfg);
  out.out_dir = cfg.get_or("sweep", "out_dir", "");
  out.workers = static_cast<int>(cfg.get_int_or("sweep", "workers", 1));
  if (out.workers < 1) throw RegimeError("sweep: workers must be >= 1");

  for (const std::string& line : cfg.get_all("schedule", "point")) {
    std::istringstream in(line);
    SweepPoint pt;
    if (!(in >> pt.n >> pt.p)) {
      throw RegimeError("sweep: schedule point must be `point = <n> <p>`: " + line);
    }
    std::string extra;
    if (in >> extra) {
      throw RegimeError("sweep: trailing text in schedule point: " + line);
    }
    out.schedule.push_back(pt);
  }
  if (out.schedule.empty()) throw RegimeError("sweep: schedule has no points");
  return out;
}

SweepResult run_sweep(const SweepConfigData& cfg) {
  const std::size_t count = cfg.schedule.size();
  SweepResult out;
  out.points.resize(count);

  std::atomic<std::size_t> cursor{0};
  auto work = [&]() {
    while (true) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= count) break;
      SweepPointOutcome& o = out.points[i];
      o.point = cfg.schedule[i];
      RatioArgs a = cfg.base;
      a.n = o.point.n;
      a.p = o.point.p;
      try {
        o.report = run_ratio(a);
        bool usable = false;
        for (const RatioRow& r : o.report.rows) {
          if (!r.skipped) usable = true;
        }
        if (usable) {
          o.ok = true;
          o.metric = o.report.metric;
        } else {
          o.skipped = true;
          o.error = "no usable rows in the requested range";
        }
      } catch (const Error& e) {
        o.error = e.what();
      }
    }
  };

  const int workers = std::max(1, std::min<int>(cfg.workers, static_cast<int>(count)));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  out.any_error = false;
  bool all_ok = true;
  for (const SweepPointOutcome& o : out.points) {
    if (!o.ok && !o.skipped) out.any_error = true;
    if (!o.ok) all_ok = false;
  }
  out.strictly_decreasing = all_ok && !out.points.empty();
  for (std::size_t i = 1; i < out.points.size() && out.strictly_decreasing; ++i) {
    if (!(out.points[i].metric < out.points[i - 1].metric)) out.strictly_decreasing = false;
  }

  if (!cfg.out_dir.empty()) {
    const std::string dir = resolve_out_path(cfg.out_dir);
    ensure_directory(dir);
    for (std::size_t i = 0; i < out.points.size(); ++i) {
      const SweepPointOutcome& o = out.points[i];
      if (!o.ok && !o.skipped) continue;  // no report to write
      char name[32];
      std::snprintf(name, sizeof(name), "point_%02zu", i);
      write_text_file(dir + "/" + name + ".csv", o.report.to_csv());
      write_text_file(dir + "/" + name + ".json", o.report.to_json());
    }
    write_text_file(dir + "/summary.csv", out.summary_csv());
    write_text_file(dir + "/summary.json", out.summary_json());
  }
  return out;
}

namespace {

std::string sweep_sanitize(const std::string& s) {
  std::string v = s;
  for (char& c : v) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return v;
}

}  // namespace

std::string SweepResult::summary_csv() const {
  std::ostringstream os;
  os << "# ldev-csv schema=1 kind=sweep-summary\n";
  os << "# strictly_decreasing=" << (strictly_decreasing ? 1 : 0) << "\n";
  os << "# any_error=" << (any_error ? 1 : 0) << "\n";
  os << "index,n,p,status,metric,fitted_k,detail\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    const SweepPointOutcome& o = points[i];
    const char* status = o.ok ? "ok" : (o.skipped ? "skipped" : "error");
    os << i << ',' << o.point.n << ',' << fmt17(o.point.p) << ',' << status << ','
       << fmt17(o.metric) << ',' << fmt17(o.report.fitted_k) << ',' << sweep_sanitize(o.error)
       << "\n";
  }
  return os.str();
}

std::string SweepResult::summary_json() const {
  std::ostringstream os;
  os << "{\"schema\":1,\"kind\":\"sweep-summary\",\"strictly_decreasing\":"
     << (strictly_decreasing ? "true" : "false")
     << ",\"any_error\":" << (any_error ? "true" : "false") << ",\"points\":[";
  for (std::size_t i = 0; i < points.size(); ++i) {
    const SweepPointOutcome& o = points[i];
    if (i) os << ',';
    os << "{\"index\":" << i << ",\"n\":" << o.point.n << ",\"p\":" << fmt17(o.point.p)
       << ",\"status\":\"" << (o.ok ? "ok" : (o.skipped ? "skipped" : "error"))
       << "\",\"metric\":" << (std::isfinite(o.metric) ? fmt17(o.metric) : "null")
       << ",\"fitted_k\":"
       << (std::isfinite(o.report.fitted_k) ? fmt17(o.report.fitted_k) : "null")
       << ",\"detail\":\"" << json_escape(o.error) << "\"}";
  }
  os << "]}";
  return os.str();
}

}  // namespace ldev
