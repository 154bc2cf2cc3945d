#include "splinter/unicode.hpp"

#include <cstdio>

#include "splinter/errors.hpp"

namespace splinter {

namespace {

[[noreturn]] void bad_byte(std::size_t offset) {
  throw unicode_error("invalid UTF-8 sequence at byte offset " + std::to_string(offset));
}

}  // namespace

char32_t decode_codepoint(std::string_view bytes, std::size_t& i) {
  const std::size_t start = i;
  const auto next = [&]() -> std::uint8_t {
    if (i >= bytes.size()) bad_byte(start);
    std::uint8_t b = static_cast<std::uint8_t>(bytes[i]);
    if ((b & 0xC0) != 0x80) bad_byte(start);
    ++i;
    return b & 0x3F;
  };

  std::uint8_t lead = static_cast<std::uint8_t>(bytes[i++]);
  if (lead < 0x80) return lead;
  if (lead < 0xC2) bad_byte(start);  // continuation byte or overlong 2-byte lead
  if (lead < 0xE0) {
    char32_t cp = (static_cast<char32_t>(lead & 0x1F) << 6) | next();
    return cp;
  }
  if (lead < 0xF0) {
    char32_t cp = static_cast<char32_t>(lead & 0x0F) << 12;
    cp |= static_cast<char32_t>(next()) << 6;
    cp |= next();
    if (cp < 0x800) bad_byte(start);
    if (cp >= 0xD800 && cp <= 0xDFFF) bad_byte(start);
    return cp;
  }
  if (lead < 0xF5) {
    char32_t cp = static_cast<char32_t>(lead & 0x07) << 18;
    cp |= static_cast<char32_t>(next()) << 12;
    cp |= static_cast<char32_t>(next()) << 6;
    cp |= next();
    if (cp < 0x10000 || cp > 0x10FFFF) bad_byte(start);
    return cp;
  }
  bad_byte(start);
}

std::u32string decode_utf8(std::string_view bytes) {
  std::u32string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  while (i < bytes.size()) out.push_back(decode_codepoint(bytes, i));
  return out;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp >= 0xD800 && cp <= 0xDFFF)
    throw unicode_error("cannot encode surrogate " + codepoint_name(cp));
  if (cp > 0x10FFFF) throw unicode_error("codepoint out of range: " + codepoint_name(cp));
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode_utf8(std::u32string_view codepoints) {
  std::string out;
  out.reserve(codepoints.size() * 2);
  for (char32_t cp : codepoints) append_utf8(out, cp);
  return out;
}

std::string encode_utf8(char32_t cp) {
  std::string out;
  append_utf8(out, cp);
  return out;
}

int utf8_length(char32_t cp) {
  if (cp < 0x80) return 1;
  if (cp < 0x800) return 2;
  if (cp < 0x10000) return 3;
  return 4;
}

bool is_ascii_space(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\v' || cp == U'\f' || cp == U'\r';
}

std::string codepoint_name(char32_t cp) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "U+%04X", static_cast<unsigned>(cp));
  return buf;
}

}  // namespace splinter
