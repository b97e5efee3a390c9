#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "ldev/config.hpp"
#include "ldev/errors.hpp"
#include "ldev/exact_dist.hpp"
#include "ldev/io_util.hpp"
#include "ldev/report.hpp"
#include "ldev/window_stat.hpp"

using namespace ldev;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(bool(in));
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("line-oriented config grammar") {
  SUBCASE("sections, comments, trimming, repeated keys") {
    Config cfg = Config::parse_string(
        "rootkey = 5\n"
        "\n"
        "# a full-line comment\n"
        "[alpha]\n"
        "  key =  spaced value \t\n"
        "num = 2.5 # trailing comment\n"
        "multi = first\n"
        "multi = second\n"
        "[ beta ]\n"
        "count = -7\n");
    CHECK(cfg.get("", "rootkey") == "5");
    CHECK(cfg.get("alpha", "key") == "spaced value");
    CHECK(cfg.get_double("alpha", "num") == 2.5);
    // Last value wins for scalar lookups; get_all preserves order.
    CHECK(cfg.get("alpha", "multi") == "second");
    std::vector<std::string> all = cfg.get_all("alpha", "multi");
    REQUIRE(all.size() == 2);
    CHECK(all[0] == "first");
    CHECK(all[1] == "second");
    CHECK(cfg.get_int("beta", "count") == -7);
    CHECK(cfg.has("beta", "count"));
    CHECK_FALSE(cfg.has("beta", "missing"));
    CHECK(cfg.get_or("beta", "missing", "fallback") == "fallback");
    CHECK(cfg.get_double_or("beta", "missing", 1.25) == 1.25);
    CHECK(cfg.get_int_or("beta", "missing", 9) == 9);
    CHECK(cfg.get_all("gamma", "anything").empty());
  }

  SUBCASE("malformed input is rejected with the line number") {
    CHECK_THROWS_AS(Config::parse_string("[unterminated\n"), RegimeError);
    CHECK_THROWS_AS(Config::parse_string("[]\n"), RegimeError);
    CHECK_THROWS_AS(Config::parse_string("no equals sign\n"), RegimeError);
    CHECK_THROWS_AS(Config::parse_string("= value without key\n"), RegimeError);
    CHECK_THROWS_AS(Config::parse_file("/nonexistent/path/to.cfg"), RegimeError);
    Config cfg = Config::parse_string("[s]\nk = 1.5x\nj = 12abc\nmissing_nums = text\n");
    CHECK_THROWS_AS(cfg.get_double("s", "k"), RegimeError);
    CHECK_THROWS_AS(cfg.get_int("s", "j"), RegimeError);
    CHECK_THROWS_AS(cfg.get_double("s", "missing_nums"), RegimeError);
    CHECK_THROWS_AS(cfg.get("s", "absent"), RegimeError);
  }

  SUBCASE("tuning block: defaults and overrides") {
    Tuning def = Tuning::from_config(Config::parse_string(""));
    CHECK(def.bi_variance_slack == 6.0);
    CHECK(def.zone_c == 1.0);
    CHECK(def.zone_log_divisor);
    CHECK(def.tail_floor_log == -644.5);

    Tuning t = Tuning::from_config(Config::parse_string(
        "[tuning]\n"
        "bi_variance_slack = 3.5\n"
        "zone_c = 0.5\n"
        "zone_log_divisor = false\n"
        "tail_floor_log = -100\n"));
    CHECK(t.bi_variance_slack == 3.5);
    CHECK(t.zone_c == 0.5);
    CHECK_FALSE(t.zone_log_divisor);
    CHECK(t.tail_floor_log == -100.0);

    CHECK(Tuning::from_config(Config::parse_string("[tuning]\nzone_log_divisor = 1\n"))
              .zone_log_divisor);
    CHECK_FALSE(Tuning::from_config(Config::parse_string("[tuning]\nzone_log_divisor = 0\n"))
                    .zone_log_divisor);
    CHECK_THROWS_AS(Tuning::from_config(Config::parse_string("[tuning]\nzone_log_divisor = maybe\n")),
                    RegimeError);
  }
}

TEST_CASE("seventeen-digit decimal round-trips and JSON escaping") {
  SUBCASE("fmt17 round-trips doubles bit-exactly") {
    const double xs[] = {0.1,
                         1.0 / 3.0,
                         -2.5e-10,
                         1e-300,
                         std::numeric_limits<double>::max(),
                         std::numeric_limits<double>::denorm_min(),
                         123456789.12345679,
                         -0.0,
                         6.0};
    for (double x : xs) {
      const std::string s = fmt17(x);
      const double back = std::stod(s);
      CHECK(std::memcmp(&back, &x, sizeof(double)) == 0);
    }
    CHECK(fmt17(std::nan("")) == "nan");
    CHECK(fmt17(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(fmt17(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(fmt_int(-12345) == "-12345");
  }

  SUBCASE("escaping covers quotes, backslashes, and control bytes") {
    CHECK(json_escape("a\"b\\c") == "a\\\"b\\\\c");
    CHECK(json_escape("line\nbreak\tand\rreturn") == "line\\nbreak\\tand\\rreturn");
    CHECK(json_escape(std::string(1, '\x01')) == "\\u0001");
    CHECK(json_escape("plain") == "plain");
  }
}

TEST_CASE("output paths honor the default output directory variable") {
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / "ldev_io_test";
  fs::remove_all(base);

  SUBCASE("relative paths are prefixed only while the variable is set") {
    REQUIRE(setenv("LDEV_OUT_DIR", base.string().c_str(), 1) == 0);
    CHECK(resolve_out_path("rel.csv") == (base / "rel.csv").string());
    CHECK(resolve_out_path("/abs/path.csv") == "/abs/path.csv");
    REQUIRE(unsetenv("LDEV_OUT_DIR") == 0);
    CHECK(resolve_out_path("rel.csv") == "rel.csv");
    CHECK_THROWS_AS(resolve_out_path(""), RegimeError);
  }

  SUBCASE("file writing creates parent directories") {
    const fs::path target = base / "nested" / "dir" / "out.txt";
    write_text_file(target.string(), "payload\n");
    CHECK(slurp(target.string()) == "payload\n");
    ensure_directory((base / "made" / "by" / "hand").string());
    CHECK(fs::is_directory(base / "made" / "by" / "hand"));
  }

  fs::remove_all(base);
}

TEST_CASE("PMF files carry the versioned schema header") {
  LatticePMF pmf = pmf_dp(WindowStatistic::two_runs(), {2, 0.5});

  SUBCASE("the two-window half-chance table") {
    REQUIRE(pmf.min_support() == 0);
    REQUIRE(pmf.max_support() == 2);
    CHECK(pmf.mass(0).linear() == 0.625);
    CHECK(pmf.mass(1).linear() == 0.25);
    CHECK(pmf.mass(2).linear() == 0.125);
  }

  SUBCASE("CSV form") {
    std::ostringstream os;
    pmf.write_csv(os);
    const std::string text = os.str();
    CHECK(text.rfind("# ldev-csv schema=1 kind=pmf\n", 0) == 0);
    CHECK(text.find("x,log_prob,prob\n") != std::string::npos);
    CHECK(text.find("0,") != std::string::npos);
    CHECK(text.find(",0.625\n") != std::string::npos);
    CHECK(text.find(",0.25\n") != std::string::npos);
    CHECK(text.find(",0.125\n") != std::string::npos);
    CHECK(text.find("truncated=0") != std::string::npos);
  }

  SUBCASE("JSON form parses and reproduces the masses") {
    std::ostringstream os;
    pmf.write_json(os);
    auto j = nlohmann::json::parse(os.str());
    CHECK(j.at("schema").get<int>() == 1);
    CHECK(j.at("kind").get<std::string>() == "pmf");
    CHECK(j.at("offset").get<std::int64_t>() == 0);
    CHECK_FALSE(j.at("truncated").get<bool>());
    auto masses = j.at("masses").get<std::vector<double>>();
    REQUIRE(masses.size() == 3);
    CHECK(masses[0] == 0.625);
    CHECK(masses[1] == 0.25);
    CHECK(masses[2] == 0.125);
  }
}

TEST_CASE("sweep configs parse into a schedule with defaults and overrides") {
  SUBCASE("fully specified") {
    Config cfg = Config::parse_string(
        "[sweep]\n"
        "theorem = 3\n"
        "stat = two-runs\n"
        "m = 1\n"
        "method = dp\n"
        "cap = none\n"
        "seed = 7\n"
        "out_dir = sweep_out\n"
        "workers = 2\n"
        "[xrange]\n"
        "kind = sd_offsets\n"
        "offsets = -2 0 2\n"
        "[conditions]\n"
        "mode = relaxed\n"
        "e5nu1_max = 1.5\n"
        "y_abs_max = 0.3\n"
        "pair_fraction = 0.2\n"
        "[zone]\n"
        "c = 2.0\n"
        "log_divisor = false\n"
        "[tuning]\n"
        "bi_variance_slack = 5.5\n"
        "[schedule]\n"
        "point = 100 0.05\n"
        "point = 1000 0.025\n");
    SweepConfigData sc = SweepConfigData::from_config(cfg);
    CHECK(sc.base.theorem == 3);
    CHECK(sc.base.stat.name == "two_runs");
    CHECK(sc.base.m == 1);
    CHECK(sc.base.method == "dp");
    CHECK(sc.base.cap_rule == "none");
    CHECK(sc.base.seed == 7);
    CHECK(sc.out_dir == "sweep_out");
    CHECK(sc.workers == 2);
    CHECK(sc.base.xrange.kind == XRange::Kind::sd_offsets);
    REQUIRE(sc.base.xrange.offsets.size() == 3);
    CHECK(sc.base.xrange.offsets[1] == 0.0);
    CHECK(sc.base.cond.mode_name == "relaxed");
    CHECK(sc.base.cond.e5nu1_max == 1.5);
    CHECK(sc.base.cond.y_abs_max == 0.3);
    CHECK(sc.base.cond.pair_fraction == 0.2);
    CHECK(sc.base.zone.c == 2.0);
    CHECK_FALSE(sc.base.zone.divide_by_log_n);
    CHECK(sc.base.tuning.bi_variance_slack == 5.5);
    REQUIRE(sc.schedule.size() == 2);
    CHECK(sc.schedule[0].n == 100);
    CHECK(sc.schedule[0].p == 0.05);
    CHECK(sc.schedule[1].n == 1000);
    CHECK(sc.schedule[1].p == 0.025);
  }

  SUBCASE("defaults for everything but the schedule") {
    SweepConfigData sc = SweepConfigData::from_config(
        Config::parse_string("[schedule]\npoint = 50 0.1\n"));
    CHECK(sc.base.theorem == 2);
    CHECK(sc.base.m == 1);
    CHECK(sc.base.method == "auto");
    CHECK(sc.base.cap_rule == "auto");
    CHECK(sc.workers == 1);
    CHECK(sc.out_dir.empty());
    CHECK(sc.base.xrange.kind == XRange::Kind::mean_pm_sd);
    CHECK(sc.base.xrange.c == 2.0);
    CHECK(sc.base.cond.mode_name == "strict");
    CHECK(sc.base.zone.c == 1.0);
    CHECK(sc.base.zone.divide_by_log_n);
  }

  SUBCASE("alternate x-range kinds") {
    SweepConfigData abs = SweepConfigData::from_config(Config::parse_string(
        "[xrange]\nkind = absolute\nlo = 3\nhi = 9\n[schedule]\npoint = 10 0.2\n"));
    CHECK(abs.base.xrange.kind == XRange::Kind::absolute);
    CHECK(abs.base.xrange.lo == 3);
    CHECK(abs.base.xrange.hi == 9);
    SweepConfigData ex = SweepConfigData::from_config(Config::parse_string(
        "[xrange]\nkind = explicit\nxs = 1 4 9\n[schedule]\npoint = 10 0.2\n"));
    CHECK(ex.base.xrange.kind == XRange::Kind::explicit_list);
    REQUIRE(ex.base.xrange.xs.size() == 3);
    CHECK(ex.base.xrange.xs[2] == 9);
    SweepConfigData zp = SweepConfigData::from_config(Config::parse_string(
        "[xrange]\nkind = zone_proxy\nc = 0.75\n[schedule]\npoint = 10 0.2\n"));
    CHECK(zp.base.xrange.kind == XRange::Kind::zone_proxy);
    CHECK(zp.base.xrange.c == 0.75);
  }

  SUBCASE("invalid sweep configs are refused") {
    CHECK_THROWS_AS(SweepConfigData::from_config(Config::parse_string("")), RegimeError);
    CHECK_THROWS_AS(
        SweepConfigData::from_config(Config::parse_string("[schedule]\npoint = 12\n")),
        RegimeError);
    CHECK_THROWS_AS(SweepConfigData::from_config(
                        Config::parse_string("[schedule]\npoint = 12 0.1 extra\n")),
                    RegimeError);
    CHECK_THROWS_AS(SweepConfigData::from_config(Config::parse_string(
                        "[sweep]\nstat = bogus\n[schedule]\npoint = 12 0.1\n")),
                    RegimeError);
    CHECK_THROWS_AS(SweepConfigData::from_config(Config::parse_string(
                        "[xrange]\nkind = bogus\n[schedule]\npoint = 12 0.1\n")),
                    RegimeError);
    CHECK_THROWS_AS(SweepConfigData::from_config(Config::parse_string(
                        "[xrange]\nkind = explicit\n[schedule]\npoint = 12 0.1\n")),
                    RegimeError);
    CHECK_THROWS_AS(SweepConfigData::from_config(Config::parse_string(
                        "[sweep]\nworkers = 0\n[schedule]\npoint = 12 0.1\n")),
                    RegimeError);
    CHECK_THROWS_AS(SweepConfigData::from_config(Config::parse_string(
                        "[conditions]\nmode = sorta\n[schedule]\npoint = 12 0.1\n")),
                    RegimeError);
    CHECK_THROWS_AS(SweepConfigData::from_config(Config::parse_string(
                        "[sweep]\nstat = nk1k2:31\n[schedule]\npoint = 12 0.1\n")),
                    RegimeError);
  }

  SUBCASE("statistic spellings accepted by the parser") {
    SweepConfigData a = SweepConfigData::from_config(Config::parse_string(
        "[sweep]\nstat = n11\n[schedule]\npoint = 12 0.1\n"));
    CHECK(a.base.stat.name == "n11");
    SweepConfigData b = SweepConfigData::from_config(Config::parse_string(
        "[sweep]\nstat = nk1k2:2,1\n[schedule]\npoint = 12 0.1\n"));
    CHECK(b.base.stat.name == "nk1k2:2,1");
    CHECK(b.base.stat.width == 3);
  }
}
