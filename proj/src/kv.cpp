#include "splinter/kv.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "splinter/errors.hpp"

namespace splinter {

std::string_view trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

kv_file kv_file::parse(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str());
}

kv_file kv_file::parse_string(std::string_view text) {
  kv_file out;
  std::size_t line_no = 0;
  for (const std::string& raw : split_lines(text)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw config_error("line " + std::to_string(line_no) + ": expected key = value");
    std::string key{trim(line.substr(0, eq))};
    std::string value{trim(line.substr(eq + 1))};
    if (key.empty())
      throw config_error("line " + std::to_string(line_no) + ": empty key");
    out.items.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

kv_file parse_hash_headers(const std::vector<std::string>& lines, std::size_t& first_body) {
  kv_file kv;
  first_body = lines.size();
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::string_view line = trim(lines[i]);
    if (line.empty()) continue;
    if (line.front() != '#') {
      first_body = i;
      break;
    }
    std::string_view rest = trim(line.substr(1));
    std::size_t eq = rest.find('=');
    if (eq == std::string_view::npos) continue;
    kv.set(trim(rest.substr(0, eq)), trim(rest.substr(eq + 1)));
  }
  return kv;
}

void kv_file::set(std::string_view key, std::string_view value) {
  items.emplace_back(std::string{key}, std::string{value});
}

const std::string* kv_file::find(std::string_view key) const {
  const std::string* hit = nullptr;
  for (const auto& [k, v] : items)
    if (k == key) hit = &v;
  return hit;
}

std::vector<std::string> kv_file::find_all(std::string_view key) const {
  std::vector<std::string> out;
  for (const auto& [k, v] : items)
    if (k == key) out.push_back(v);
  return out;
}

std::string kv_file::get_or(std::string_view key, std::string_view fallback) const {
  const std::string* v = find(key);
  return v ? *v : std::string{fallback};
}

std::string kv_file::dump() const {
  std::string out;
  for (const auto& [k, v] : items) {
    out += k;
    out += " = ";
    out += v;
    out += '\n';
  }
  return out;
}

void kv_file::write(std::ostream& out) const {
  std::string text = dump();
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

std::uint64_t fnv1a_step(std::uint64_t state, std::string_view data) {
  for (unsigned char c : data) {
    state ^= c;
    state *= 0x100000001b3ull;
  }
  return state;
}

std::uint64_t fnv1a(std::string_view data) { return fnv1a_step(kFnvOffset, data); }

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::uint64_t parse_hex64(std::string_view text) {
  if (text.empty() || text.size() > 16) throw format_error("bad hex value");
  std::uint64_t v = 0;
  for (char c : text) {
    v <<= 4;
    if (c >= '0' && c <= '9')
      v |= static_cast<std::uint64_t>(c - '0');
    else if (c >= 'a' && c <= 'f')
      v |= static_cast<std::uint64_t>(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F')
      v |= static_cast<std::uint64_t>(c - 'A' + 10);
    else
      throw format_error("bad hex value");
  }
  return v;
}

namespace {

[[noreturn]] void bad_number(std::string_view what, std::string_view text) {
  throw config_error(std::string{what} + ": cannot parse '" + std::string{text} + "'");
}

}  // namespace

std::int64_t parse_int(std::string_view text, std::string_view what) {
  text = trim(text);
  std::int64_t v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || p != text.data() + text.size()) bad_number(what, text);
  return v;
}

std::uint64_t parse_uint(std::string_view text, std::string_view what) {
  text = trim(text);
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || p != text.data() + text.size()) bad_number(what, text);
  return v;
}

double parse_double(std::string_view text, std::string_view what) {
  std::string buf{trim(text)};
  if (buf.empty()) bad_number(what, text);
  errno = 0;
  char* end = nullptr;
  double v = std::strtod(buf.c_str(), &end);
  if (errno != 0 || end != buf.c_str() + buf.size()) bad_number(what, text);
  return v;
}

bool parse_bool(std::string_view text, std::string_view what) {
  std::string_view t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  bad_number(what, text);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw io_error("read failed for " + path);
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::filesystem::path parent = std::filesystem::path{path}.parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(parent, ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open " + path + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw io_error("write failed for " + path);
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    if (start == text.size()) {
      break;
    }
    std::size_t nl = text.find('\n', start);
    std::size_t end = (nl == std::string_view::npos) ? text.size() : nl;
    std::size_t len = end - start;
    if (len > 0 && text[end - 1] == '\r') --len;
    lines.emplace_back(text.substr(start, len));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return lines;
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

}  // namespace splinter
