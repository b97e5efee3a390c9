#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace ldev {

// Decimal with 17 significant digits: round-trips any double, byte-stable
// across runs.
std::string fmt17(double x);

std::string fmt_int(std::int64_t x);

// JSON string escaping for the few hand-emitted documents.
std::string json_escape(const std::string& s);

// Resolve an output path: absolute paths pass through; relative paths are
// prefixed by $LDEV_OUT_DIR when it is set.
std::string resolve_out_path(const std::string& path);

// mkdir -p
void ensure_directory(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace ldev
