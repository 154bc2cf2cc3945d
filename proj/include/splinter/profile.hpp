#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace splinter {

struct codepoint_range {
  char32_t lo = 0;
  char32_t hi = 0;  // inclusive

  bool contains(char32_t cp) const { return cp >= lo && cp <= hi; }
};

// A (final form, base form) letter pair; the base form is the canonical
// stored shape, the final form only appears at the end of surface words.
struct final_letter_pair {
  char32_t final_form = 0;
  char32_t base_form = 0;
};

// Everything language specific the pipeline needs: which codepoints count
// as script letters, which marks get stripped, positional letter variants
// and the two corpus thresholds.
struct language_profile {
  std::string name;
  std::vector<codepoint_range> script_ranges;       // sorted by lo, disjoint
  std::vector<char32_t> diacritics;                 // sorted
  std::vector<final_letter_pair> final_letters;     // sorted by final_form
  std::uint32_t min_word_frequency = 10;
  std::uint32_t min_core_length = 3;
  std::u32string extra_delimiters = U".-,:\"()";    // besides ASCII whitespace

  bool in_script(char32_t cp) const;
  bool is_diacritic(char32_t cp) const;
  bool is_delimiter(char32_t cp) const;

  // 0 when the codepoint has no mapping in that direction.
  char32_t base_for_final(char32_t cp) const;
  char32_t final_for_base(char32_t cp) const;

  // Raises config_error when ranges overlap, pairs collide or a threshold
  // is zero.
  void validate() const;

  // Stable across field ordering and formatting: hashes the canonical dump.
  std::uint64_t fingerprint() const;
  std::string canonical_dump() const;
};

// Built-in profiles: "hebrew", "arabic", "malay".
const std::vector<std::string>& builtin_profile_names();
language_profile builtin_profile(std::string_view name);

language_profile parse_profile(std::string_view text);
language_profile load_profile(const std::string& path);
void save_profile(const language_profile& profile, const std::string& path);

// Resolves either a built-in name or a path to a profile file.
language_profile resolve_profile(const std::string& name_or_path);

}  // namespace splinter
