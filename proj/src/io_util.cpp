#include "ldev/io_util.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "ldev/errors.hpp"

namespace ldev {

std::string fmt17(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string fmt_int(std::int64_t x) { return std::to_string(x); }

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 8);
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string resolve_out_path(const std::string& path) {
  if (path.empty()) throw RegimeError("resolve_out_path: empty path");
  std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  const char* base = std::getenv("LDEV_OUT_DIR");
  if (base == nullptr || base[0] == '\0') return path;
  return (std::filesystem::path(base) / p).string();
}

void ensure_directory(const std::string& path) {
  if (path.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) throw RegimeError("ensure_directory: " + path + ": " + ec.message());
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) ensure_directory(p.parent_path().string());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw RegimeError("write_text_file: cannot open " + path);
  out << content;
  if (!out) throw RegimeError("write_text_file: short write to " + path);
}

}  // namespace ldev
