#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "splinter/profile.hpp"

namespace splinter {

// A word occurrence inside a text buffer; offsets are byte positions and
// [begin, end) spans exactly the word's UTF-8 bytes.
struct word_span {
  std::u32string word;
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Splits on ASCII whitespace plus the given delimiter codepoints. Every
// non-delimiter codepoint belongs to exactly one span; delimiters never do.
std::vector<word_span> split_words(std::string_view text, std::u32string_view delimiters);
std::vector<word_span> split_words(std::string_view text, const language_profile& profile);

// Deletes every codepoint in the profile's diacritic set, leaving all other
// codepoints untouched. Idempotent.
std::string normalize_text(std::string_view raw, const language_profile& profile);

// Words whose surface form ends in a base letter even where a final form
// is expected, keyed by normalized spelling.
using final_letter_exceptions = std::unordered_set<std::u32string>;

// Rewrites positional variants to their base form everywhere in the word.
std::u32string normalize_final_letters(std::u32string_view word, const language_profile& profile);

// Restores the final form of the last letter, unless the word is a known
// exception. Inverse of normalize_final_letters on well-formed words.
std::u32string denormalize_final_letters(std::u32string_view word,
                                         const language_profile& profile,
                                         const final_letter_exceptions& exceptions);

struct word_frequency_table {
  // Normalized word -> occurrence count, every count >= the threshold the
  // table was built with.
  std::unordered_map<std::u32string, std::uint64_t> entries;
  // Length -> words of that length, sorted by codepoints. Exact partition
  // of the keys of `entries`.
  std::map<std::uint32_t, std::vector<std::u32string>> by_length;
  std::uint64_t profile_fingerprint = 0;
  std::uint32_t min_word_frequency = 0;

  std::uint64_t freq(const std::u32string& word) const {
    auto it = entries.find(word);
    return it == entries.end() ? 0 : it->second;
  }
  bool contains(const std::u32string& word) const { return entries.count(word) != 0; }
  std::size_t size() const { return entries.size(); }

  void validate() const;
};

// Applies the frequency threshold to raw counts and builds the length
// index. Raises empty_table_error when nothing survives.
word_frequency_table build_frequency_table(
    const std::unordered_map<std::u32string, std::uint64_t>& raw_counts,
    const language_profile& profile);

// Convenience for tests and small inputs: counts a flat occurrence list.
word_frequency_table build_frequency_table(const std::vector<std::u32string>& occurrences,
                                           const language_profile& profile);

struct ingest_result {
  word_frequency_table table;
  final_letter_exceptions exceptions;
  std::uint64_t total_words = 0;     // in-script occurrences before thresholding
  std::uint64_t distinct_raw = 0;    // distinct normalized words before thresholding
};

// Full ingestion for raw text: strips diacritics, splits, keeps words made
// entirely of script letters, normalizes final letters and counts. A word
// becomes a final-letter exception when most of its surface occurrences
// end in a base letter that has a final form. `threads` only affects wall
// time, never the result.
ingest_result ingest_lines(const std::vector<std::string>& lines,
                           const language_profile& profile, unsigned threads = 1);

void save_frequency_table(const word_frequency_table& table, std::ostream& out);
void save_frequency_table(const word_frequency_table& table, const std::string& path);
word_frequency_table load_frequency_table(std::istream& in);
word_frequency_table load_frequency_table_file(const std::string& path);

void save_exceptions(const final_letter_exceptions& exceptions, const std::string& path);
final_letter_exceptions load_exceptions(const std::string& path);

}  // namespace splinter
