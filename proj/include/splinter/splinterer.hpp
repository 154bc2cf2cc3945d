#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "splinter/corpus.hpp"
#include "splinter/reduction.hpp"

namespace splinter {

// A word taken apart: applying `reductions` in order to `core` (each one
// inserting its letter back) rebuilds the original word.
struct splintered_word {
  std::u32string core;
  std::vector<reduction> reductions;
};

// Bijection between reductions and codepoints in a private block. The
// block's first codepoint is reserved as a verbatim marker for words that
// must pass through untouched; assigned composites start right after it.
// Keying on (index, letter) lets one composite serve every word length,
// which is what makes signed indices shrink the alphabet.
struct composite_alphabet {
  char32_t block_base = 0xE000;
  std::uint32_t block_size = 6400;
  std::vector<reduction> composites;  // slot i <-> block_base + 1 + i
  std::vector<codepoint_range> script_ranges;
  std::uint64_t profile_fingerprint = 0;

  char32_t marker() const { return block_base; }
  bool in_block(char32_t cp) const {
    return cp >= block_base && cp < block_base + block_size;
  }
  std::size_t size() const { return composites.size(); }

  std::optional<char32_t> surrogate_for(const reduction& r) const;
  // Assigns the next free slot when the reduction is new.
  char32_t intern(const reduction& r);
  std::optional<reduction> reduction_for(char32_t cp) const;

  bool in_script(char32_t cp) const;
  void validate() const;

 private:
  std::unordered_map<std::uint64_t, std::uint32_t> lookup_;
  static std::uint64_t key(const reduction& r);
  void reindex();
  friend composite_alphabet load_alphabet(std::istream&);
  friend composite_alphabet make_alphabet(const language_profile&, char32_t, std::uint32_t);
};

composite_alphabet make_alphabet(const language_profile& profile, char32_t block_base = 0xE000,
                                 std::uint32_t block_size = 6400);

// Deterministic alphabet covering exactly the reductions of the map, in
// (length, rank) order. Running the splinterer with this alphabet frozen
// can never hit a missing composite.
composite_alphabet alphabet_from_map(const reduction_map& map, const language_profile& profile,
                                     char32_t block_base = 0xE000,
                                     std::uint32_t block_size = 6400);

void save_alphabet(const composite_alphabet& alphabet, std::ostream& out);
void save_alphabet(const composite_alphabet& alphabet, const std::string& path);
composite_alphabet load_alphabet(std::istream& in);
composite_alphabet load_alphabet_file(const std::string& path);

// Picks the next reduction for the word by expanding a scoring tree: each
// node branches into the `breadth` best-ranked reductions that fire on it,
// a path's score is the product of the relative weights along it, and
// paths stopping early (at min_core_length or a dead end) are padded with
// weight 1. Returns the first step of the best-scoring path at `depth`,
// ties going to the path found first in rank order, or nullopt when no
// reduction fires on the word itself.
std::optional<reduction> select_reduction(const std::u32string& word, const reduction_map& map,
                                          unsigned breadth = 3, unsigned depth = 3);

// Repeats select_reduction down to min_core_length or until no reduction
// fires. The returned reductions are in reconstruction order (the reverse
// of removal order).
splintered_word encode_word(const std::u32string& word, const reduction_map& map,
                            unsigned breadth = 3, unsigned depth = 3);

// Rebuilds the original word; raises range_error when a reduction cannot
// be placed.
std::u32string decode_word(const splintered_word& sw);

// core followed by one composite per reduction, in order. When `frozen`,
// an unregistered reduction raises unknown_composite_error instead of
// extending the alphabet.
std::u32string to_surface(const splintered_word& sw, composite_alphabet& alphabet,
                          bool frozen = true);

// Splits a surface form back into core letters and reductions. Raises
// unknown_composite_error for unassigned block codepoints and
// mixed_script_error for codepoints that are neither script nor block.
splintered_word from_surface(std::u32string_view surface, const composite_alphabet& alphabet);

struct splinter_stats {
  std::uint64_t words_total = 0;       // all whitespace/delimiter separated words
  std::uint64_t words_in_script = 0;
  std::uint64_t words_splintered = 0;  // at least one reduction removed
  std::uint64_t words_marked = 0;      // emitted verbatim behind the marker
  std::uint64_t early_stops = 0;       // no reduction fired above min_core_length
  std::uint64_t reductions_removed = 0;
};

struct splinter_options {
  unsigned breadth = 3;
  unsigned depth = 3;
  // When frozen, words needing an unregistered composite raise; otherwise
  // the alphabet grows on demand.
  bool frozen = false;
  const final_letter_exceptions* exceptions = nullptr;
  splinter_stats* stats = nullptr;
};

// Rewrites every all-script word to its surface form, leaving everything
// else byte for byte intact. Words that would not survive the round trip
// (and words already containing block codepoints) are emitted verbatim
// behind the marker, so unsplinter_text always restores the input exactly.
std::string splinter_text(std::string_view text, const reduction_map& map,
                          composite_alphabet& alphabet, const language_profile& profile,
                          const splinter_options& options = {});

// Exact inverse of splinter_text over the same alphabet and exceptions.
std::string unsplinter_text(std::string_view text, const composite_alphabet& alphabet,
                            const language_profile& profile,
                            const final_letter_exceptions* exceptions = nullptr);

}  // namespace splinter
