#include "splinter/profile.hpp"

#include <algorithm>
#include <sstream>

#include "splinter/errors.hpp"
#include "splinter/kv.hpp"
#include "splinter/unicode.hpp"

namespace splinter {

bool language_profile::in_script(char32_t cp) const {
  for (const codepoint_range& r : script_ranges) {
    if (cp < r.lo) return false;
    if (cp <= r.hi) return true;
  }
  return false;
}

bool language_profile::is_diacritic(char32_t cp) const {
  return std::binary_search(diacritics.begin(), diacritics.end(), cp);
}

bool language_profile::is_delimiter(char32_t cp) const {
  return is_ascii_space(cp) || extra_delimiters.find(cp) != std::u32string::npos;
}

char32_t language_profile::base_for_final(char32_t cp) const {
  for (const final_letter_pair& p : final_letters)
    if (p.final_form == cp) return p.base_form;
  return 0;
}

char32_t language_profile::final_for_base(char32_t cp) const {
  for (const final_letter_pair& p : final_letters)
    if (p.base_form == cp) return p.final_form;
  return 0;
}

void language_profile::validate() const {
  if (name.empty()) throw config_error("profile: name must not be empty");
  if (script_ranges.empty()) throw config_error("profile: script_ranges must not be empty");
  for (std::size_t i = 0; i < script_ranges.size(); ++i) {
    const codepoint_range& r = script_ranges[i];
    if (r.lo > r.hi)
      throw config_error("profile: inverted script range " + codepoint_name(r.lo) + ".." +
                         codepoint_name(r.hi));
    if (i > 0 && script_ranges[i - 1].hi >= r.lo)
      throw config_error("profile: script ranges must be sorted and disjoint");
  }
  if (!std::is_sorted(diacritics.begin(), diacritics.end()))
    throw config_error("profile: diacritics must be sorted");
  if (std::adjacent_find(diacritics.begin(), diacritics.end()) != diacritics.end())
    throw config_error("profile: duplicate diacritic");
  for (const final_letter_pair& p : final_letters) {
    if (!in_script(p.final_form) || !in_script(p.base_form))
      throw config_error("profile: final letter pair outside script");
    if (p.final_form == p.base_form)
      throw config_error("profile: degenerate final letter pair");
  }
  for (std::size_t i = 0; i < final_letters.size(); ++i) {
    for (std::size_t j = i + 1; j < final_letters.size(); ++j) {
      const final_letter_pair& a = final_letters[i];
      const final_letter_pair& b = final_letters[j];
      if (a.final_form == b.final_form || a.base_form == b.base_form ||
          a.final_form == b.base_form || a.base_form == b.final_form)
        throw config_error("profile: final letter pairs must form a bijection");
    }
  }
  if (min_word_frequency == 0) throw config_error("profile: min_word_frequency must be >= 1");
  if (min_core_length == 0) throw config_error("profile: min_core_length must be >= 1");
}

std::string language_profile::canonical_dump() const {
  kv_file kv;
  kv.set("profile_version", "1");
  kv.set("name", name);
  for (const codepoint_range& r : script_ranges)
    kv.set("script_range", hex64(r.lo).substr(12) + ".." + hex64(r.hi).substr(12));
  for (char32_t cp : diacritics) kv.set("diacritic", hex64(cp).substr(12));
  for (const final_letter_pair& p : final_letters)
    kv.set("final_pair", hex64(p.final_form).substr(12) + " " + hex64(p.base_form).substr(12));
  std::string delims;
  for (char32_t cp : extra_delimiters) {
    if (!delims.empty()) delims += ' ';
    delims += hex64(cp).substr(12);
  }
  kv.set("delimiters", delims);
  kv.set("min_word_frequency", std::to_string(min_word_frequency));
  kv.set("min_core_length", std::to_string(min_core_length));
  return kv.dump();
}

std::uint64_t language_profile::fingerprint() const { return fnv1a(canonical_dump()); }

namespace {

language_profile make_hebrew() {
  language_profile p;
  p.name = "hebrew";
  p.script_ranges = {{0x05D0, 0x05EA}};
  for (char32_t cp = 0x0591; cp <= 0x05BD; ++cp) p.diacritics.push_back(cp);
  p.diacritics.push_back(0x05BF);
  p.diacritics.push_back(0x05C1);
  p.diacritics.push_back(0x05C2);
  p.diacritics.push_back(0x05C4);
  p.diacritics.push_back(0x05C5);
  p.diacritics.push_back(0x05C7);
  p.final_letters = {
      {0x05DA, 0x05DB},  // kaf
      {0x05DD, 0x05DE},  // mem
      {0x05DF, 0x05E0},  // nun
      {0x05E3, 0x05E4},  // pe
      {0x05E5, 0x05E6},  // tsadi
  };
  return p;
}

language_profile make_arabic() {
  language_profile p;
  p.name = "arabic";
  p.script_ranges = {{0x0621, 0x063A}, {0x0641, 0x064A}};
  return p;
}

language_profile make_malay() {
  language_profile p;
  p.name = "malay";
  p.script_ranges = {{U'A', U'Z'}, {U'a', U'z'}};
  return p;
}

char32_t parse_cp(std::string_view text) {
  return static_cast<char32_t>(parse_hex64(trim(text)));
}

codepoint_range parse_range(std::string_view text) {
  std::size_t dots = text.find("..");
  if (dots == std::string_view::npos) {
    char32_t cp = parse_cp(text);
    return {cp, cp};
  }
  return {parse_cp(text.substr(0, dots)), parse_cp(text.substr(dots + 2))};
}

}  // namespace

const std::vector<std::string>& builtin_profile_names() {
  static const std::vector<std::string> names = {"hebrew", "arabic", "malay"};
  return names;
}

language_profile builtin_profile(std::string_view name) {
  language_profile p;
  if (name == "hebrew")
    p = make_hebrew();
  else if (name == "arabic")
    p = make_arabic();
  else if (name == "malay")
    p = make_malay();
  else
    throw config_error("unknown built-in profile '" + std::string{name} + "'");
  p.validate();
  return p;
}

language_profile parse_profile(std::string_view text) {
  kv_file kv = kv_file::parse_string(text);
  language_profile p;
  const std::string* version = kv.find("profile_version");
  if (version && parse_uint(*version, "profile_version") != 1)
    throw format_error("unsupported profile_version " + *version);
  p.name = kv.get_or("name", "");
  try {
    for (const std::string& v : kv.find_all("script_range"))
      p.script_ranges.push_back(parse_range(v));
    for (const std::string& v : kv.find_all("diacritic")) {
      codepoint_range r = parse_range(v);
      for (char32_t cp = r.lo; cp <= r.hi; ++cp) p.diacritics.push_back(cp);
    }
    for (const std::string& v : kv.find_all("final_pair")) {
      std::istringstream ss{v};
      std::string fin, base;
      if (!(ss >> fin >> base)) throw config_error("profile: final_pair needs two codepoints");
      p.final_letters.push_back({parse_cp(fin), parse_cp(base)});
    }
    if (const std::string* v = kv.find("delimiters")) {
      p.extra_delimiters.clear();
      std::istringstream ss{*v};
      std::string tok;
      while (ss >> tok) p.extra_delimiters.push_back(parse_cp(tok));
    }
  } catch (const format_error& e) {
    throw config_error("profile: " + std::string{e.what()});
  }
  if (const std::string* v = kv.find("min_word_frequency"))
    p.min_word_frequency = static_cast<std::uint32_t>(parse_uint(*v, "min_word_frequency"));
  if (const std::string* v = kv.find("min_core_length"))
    p.min_core_length = static_cast<std::uint32_t>(parse_uint(*v, "min_core_length"));
  std::sort(p.script_ranges.begin(), p.script_ranges.end(),
            [](const codepoint_range& a, const codepoint_range& b) { return a.lo < b.lo; });
  std::sort(p.diacritics.begin(), p.diacritics.end());
  p.diacritics.erase(std::unique(p.diacritics.begin(), p.diacritics.end()), p.diacritics.end());
  std::sort(p.final_letters.begin(), p.final_letters.end(),
            [](const final_letter_pair& a, const final_letter_pair& b) {
              return a.final_form < b.final_form;
            });
  p.validate();
  return p;
}

language_profile load_profile(const std::string& path) {
  try {
    return parse_profile(read_file(path));
  } catch (const config_error& e) {
    throw config_error(path + ": " + e.what());
  }
}

void save_profile(const language_profile& profile, const std::string& path) {
  write_file(path, profile.canonical_dump());
}

language_profile resolve_profile(const std::string& name_or_path) {
  const auto& names = builtin_profile_names();
  if (std::find(names.begin(), names.end(), name_or_path) != names.end())
    return builtin_profile(name_or_path);
  return load_profile(name_or_path);
}

}  // namespace splinter
