#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace splinter {

// Minimal key = value file format shared by profiles, configs and reports.
// One pair per line, '#' starts a comment, blank lines ignored. Keys may
// repeat; consumers that want a single value take the last occurrence.
struct kv_file {
  std::vector<std::pair<std::string, std::string>> items;

  static kv_file parse(std::istream& in);
  static kv_file parse_string(std::string_view text);

  void set(std::string_view key, std::string_view value);
  const std::string* find(std::string_view key) const;  // last occurrence or nullptr
  std::vector<std::string> find_all(std::string_view key) const;
  std::string get_or(std::string_view key, std::string_view fallback) const;

  std::string dump() const;
  void write(std::ostream& out) const;
};

std::string_view trim(std::string_view s);

// Parses the "# key = value" comment headers that follow the magic line of
// a versioned artifact file. Sets `first_body` to the index of the first
// non-header line (lines.size() when everything is header).
kv_file parse_hash_headers(const std::vector<std::string>& lines, std::size_t& first_body);

// FNV-1a 64-bit, used for config hashes, profile fingerprints and file
// checksums. Not cryptographic; it only guards against accidental drift.
std::uint64_t fnv1a(std::string_view data);
std::uint64_t fnv1a_step(std::uint64_t state, std::string_view data);
constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ull;

std::string hex64(std::uint64_t value);
std::uint64_t parse_hex64(std::string_view text);

// Strict numeric parsing; raises config_error naming `what` on junk.
std::int64_t parse_int(std::string_view text, std::string_view what);
std::uint64_t parse_uint(std::string_view text, std::string_view what);
double parse_double(std::string_view text, std::string_view what);
bool parse_bool(std::string_view text, std::string_view what);

// Reads a whole file, raising io_error when it cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

// Splits on '\n', dropping a trailing '\r' per line. A trailing newline
// does not produce an empty final line.
std::vector<std::string> split_lines(std::string_view text);

std::string format_double(double value);

}  // namespace splinter
