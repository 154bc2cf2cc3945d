#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "splinter/config.hpp"
#include "splinter/errors.hpp"
#include "splinter/kv.hpp"
#include "splinter/unicode.hpp"

using namespace splinter;

TEST_CASE("utf8 encode and decode agree on hand-picked codepoints") {
  // One codepoint per encoded length, plus block and script edges.
  struct {
    char32_t cp;
    const char* bytes;
  } cases[] = {
      {U'A', "A"},
      {0x05D0, "\xD7\x90"},        // aleph
      {0x05EA, "\xD7\xAA"},        // tav
      {0xE000, "\xEE\x80\x80"},    // private block start
      {0xE001, "\xEE\x80\x81"},
      {0x2028, "\xE2\x80\xA8"},    // line separator, not ASCII space
      {0x10FFFF, "\xF4\x8F\xBF\xBF"},
  };
  for (const auto& c : cases) {
    CAPTURE(codepoint_name(c.cp));
    CHECK(encode_utf8(c.cp) == c.bytes);
    CHECK(decode_utf8(c.bytes) == std::u32string(1, c.cp));
    CHECK(utf8_length(c.cp) == static_cast<int>(std::string{c.bytes}.size()));
  }
}

TEST_CASE("utf8 decoder rejects malformed input") {
  const char* bad[] = {
      "\xC0\x80",          // overlong NUL
      "\xE0\x80\x80",      // overlong
      "\xD7",              // truncated two-byte
      "\xE2\x80",          // truncated three-byte
      "\xED\xA0\x80",      // UTF-16 surrogate
      "\xF4\x90\x80\x80",  // above U+10FFFF
      "\x80",              // stray continuation
      "\xFF",              // invalid lead
  };
  for (const char* b : bad) {
    CAPTURE(b);
    CHECK_THROWS_AS(decode_utf8(b), unicode_error);
  }
}

TEST_CASE("utf8 round trip across the whole mixed string") {
  std::string text = "abc \xD7\x90\xD7\x91\xD7\x92 123 \xEE\x80\x85!";
  CHECK(encode_utf8(decode_utf8(text)) == text);
}

TEST_CASE("ascii space covers exactly the six control separators") {
  CHECK(is_ascii_space(U' '));
  CHECK(is_ascii_space(U'\t'));
  CHECK(is_ascii_space(U'\n'));
  CHECK(is_ascii_space(U'\v'));
  CHECK(is_ascii_space(U'\f'));
  CHECK(is_ascii_space(U'\r'));
  CHECK_FALSE(is_ascii_space(U'a'));
  CHECK_FALSE(is_ascii_space(0x00A0));  // no-break space stays in words
  CHECK_FALSE(is_ascii_space(0x2028));
}

TEST_CASE("fnv1a matches published 64-bit test vectors") {
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("hex64 is fixed-width and parses back") {
  CHECK(hex64(0) == "0000000000000000");
  CHECK(hex64(0xdeadbeefULL) == "00000000deadbeef");
  CHECK(parse_hex64(hex64(0x123456789abcdef0ULL)) == 0x123456789abcdef0ULL);
  CHECK_THROWS_AS(parse_hex64("xyz"), format_error);
}

TEST_CASE("kv files round trip and keep duplicate keys in order") {
  kv_file kv;
  kv.set("alpha", "1");
  kv.items.emplace_back("range", "a");
  kv.items.emplace_back("range", "b");
  kv_file back = kv_file::parse_string(kv.dump());
  CHECK(back.items == kv.items);
  CHECK(back.find_all("range") == std::vector<std::string>{"a", "b"});
  CHECK(back.get_or("missing", "fallback") == "fallback");
}

TEST_CASE("strict number parsing rejects trailing garbage") {
  CHECK(parse_int("-42", "k") == -42);
  CHECK(parse_uint("42", "k") == 42);
  CHECK(parse_double("2.5", "k") == doctest::Approx(2.5));
  CHECK_THROWS_AS(parse_int("12x", "k"), config_error);
  CHECK_THROWS_AS(parse_uint("", "k"), config_error);
  CHECK_THROWS_AS(parse_uint("-1", "k"), config_error);
  CHECK_THROWS_AS(parse_double("1.2.3", "k"), config_error);
  CHECK(parse_bool("yes", "k"));
  CHECK_FALSE(parse_bool("off", "k"));
  CHECK_THROWS_AS(parse_bool("maybe", "k"), config_error);
}

namespace {
void apply1(pipeline_config& cfg, const std::string& key, const std::string& value) {
  kv_file kv;
  kv.set(key, value);
  cfg.apply_kv(kv);
}
}  // namespace

TEST_CASE("pipeline config hash tracks effective values, not formatting") {
  pipeline_config a, b;
  CHECK(a.hash() == b.hash());
  apply1(b, "breadth", "3");  // same as default
  CHECK(a.hash() == b.hash());
  apply1(b, "breadth", "4");
  CHECK(a.hash() != b.hash());
  apply1(b, "breadth", "3");
  CHECK(a.hash() == b.hash());
}

TEST_CASE("pipeline config rejects unknown keys and bad grids") {
  pipeline_config cfg;
  CHECK_THROWS_AS(apply1(cfg, "no_such_key", "1"), config_error);
  apply1(cfg, "vocab_sizes", "100, 200, 400");
  CHECK(cfg.vocab_sizes == std::vector<std::uint64_t>{100, 200, 400});
  apply1(cfg, "vocab_sizes", "400,200");
  CHECK_THROWS_AS(cfg.validate(), config_error);
}
