#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ldev {

// Line-oriented config: `[section]` headers, `key = value` pairs, `#`
// comments, repeated keys allowed (collected in order).  No dependence on
// any language-specific config ecosystem; the exact grammar is documented in
// the README.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;
  // Last value wins for scalar lookups; throws RegimeError when missing and
  // no fallback is given.
  std::string get(const std::string& section, const std::string& key) const;
  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double_or(const std::string& section, const std::string& key, double fallback) const;
  std::int64_t get_int(const std::string& section, const std::string& key) const;
  std::int64_t get_int_or(const std::string& section, const std::string& key,
                          std::int64_t fallback) const;
  // All values recorded for a repeated key, in file order.
  std::vector<std::string> get_all(const std::string& section, const std::string& key) const;

 private:
  // section -> key -> values in order of appearance
  std::map<std::string, std::map<std::string, std::vector<std::string>>> data_;
};

// Tunable constants that are spec choices rather than derived truths; kept
// in one place, overridable from [tuning] sections, echoed into reports.
struct Tuning {
  double bi_variance_slack = 6.0;  // |N ptilde^2 - (3n-2) alpha^2| <= slack * alpha^2
  double zone_c = 1.0;             // zone proxy multiplier
  bool zone_log_divisor = true;    // divide zone bound by ln(n)
  double tail_floor_log = -644.5;  // ~log(1e-280): certified tail-zone floor

  static Tuning from_config(const Config& cfg);
};

}  // namespace ldev
