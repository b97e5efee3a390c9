#include "ldev/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "ldev/errors.hpp"

namespace ldev {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RegimeError("config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str());
}

Config Config::parse_string(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  std::string section;  // keys before any [section] live in ""
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw RegimeError("config: unterminated section header at line " + std::to_string(lineno));
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) {
        throw RegimeError("config: empty section name at line " + std::to_string(lineno));
      }
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw RegimeError("config: expected key = value at line " + std::to_string(lineno));
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw RegimeError("config: empty key at line " + std::to_string(lineno));
    }
    cfg.data_[section][key].push_back(value);
  }
  return cfg;
}

bool Config::has(const std::string& section, const std::string& key) const {
  const auto s = data_.find(section);
  if (s == data_.end()) return false;
  return s->second.find(key) != s->second.end();
}

std::string Config::get(const std::string& section, const std::string& key) const {
  const auto s = data_.find(section);
  if (s != data_.end()) {
    const auto k = s->second.find(key);
    if (k != s->second.end() && !k->second.empty()) return k->second.back();
  }
  throw RegimeError("config: missing [" + section + "] " + key);
}

std::string Config::get_or(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
  return has(section, key) ? get(section, key) : fallback;
}

double Config::get_double(const std::string& section, const std::string& key) const {
  const std::string v = get(section, key);
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    throw RegimeError("config: [" + section + "] " + key + " is not a number: " + v);
  }
  if (used != v.size()) {
    throw RegimeError("config: [" + section + "] " + key + " has trailing junk: " + v);
  }
  return out;
}

double Config::get_double_or(const std::string& section, const std::string& key,
                             double fallback) const {
  return has(section, key) ? get_double(section, key) : fallback;
}

std::int64_t Config::get_int(const std::string& section, const std::string& key) const {
  const std::string v = get(section, key);
  std::size_t used = 0;
  long long out = 0;
  try {
    out = std::stoll(v, &used);
  } catch (const std::exception&) {
    throw RegimeError("config: [" + section + "] " + key + " is not an integer: " + v);
  }
  if (used != v.size()) {
    throw RegimeError("config: [" + section + "] " + key + " has trailing junk: " + v);
  }
  return static_cast<std::int64_t>(out);
}

std::int64_t Config::get_int_or(const std::string& section, const std::string& key,
                                std::int64_t fallback) const {
  return has(section, key) ? get_int(section, key) : fallback;
}

std::vector<std::string> Config::get_all(const std::string& section, const std::string& key) const {
  const auto s = data_.find(section);
  if (s == data_.end()) return {};
  const auto k = s->second.find(key);
  if (k == s->second.end()) return {};
  return k->second;
}

Tuning Tuning::from_config(const Config& cfg) {
  Tuning t;
  t.bi_variance_slack = cfg.get_double_or("tuning", "bi_variance_slack", t.bi_variance_slack);
  t.zone_c = cfg.get_double_or("tuning", "zone_c", t.zone_c);
  if (cfg.has("tuning", "zone_log_divisor")) {
    const std::string v = cfg.get("tuning", "zone_log_divisor");
    if (v == "true" || v == "1") {
      t.zone_log_divisor = true;
    } else if (v == "false" || v == "0") {
      t.zone_log_divisor = false;
    } else {
      throw RegimeError("config: [tuning] zone_log_divisor must be true/false");
    }
  }
  t.tail_floor_log = cfg.get_double_or("tuning", "tail_floor_log", t.tail_floor_log);
  return t;
}

}  // namespace ldev
