#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace splinter {

// Strict UTF-8 codec. Overlong encodings, surrogate codepoints, values
// above U+10FFFF and truncated sequences all raise unicode_error; we never
// silently substitute U+FFFD because downstream artifacts must be byte
// reproducible.

// Decodes one codepoint starting at byte offset `i` and advances `i` past it.
char32_t decode_codepoint(std::string_view bytes, std::size_t& i);

std::u32string decode_utf8(std::string_view bytes);

void append_utf8(std::string& out, char32_t cp);

std::string encode_utf8(std::u32string_view codepoints);

std::string encode_utf8(char32_t cp);

// Number of bytes the codepoint occupies when encoded.
int utf8_length(char32_t cp);

// True for the ASCII whitespace characters used as word delimiters:
// space, tab, LF, VT, FF, CR.
bool is_ascii_space(char32_t cp);

// Formats a codepoint as U+XXXX (at least four hex digits, uppercase).
std::string codepoint_name(char32_t cp);

}  // namespace splinter
