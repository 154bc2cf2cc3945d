#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "splinter/corpus.hpp"

namespace splinter {

// One single-letter deletion: remove `letter` at the position encoded by
// `index`. A negative index counts from the end of the word the reduction
// applies to (-1 is the last letter), which lets the same reduction serve
// several word lengths.
struct reduction {
  std::int32_t index = 0;
  char32_t letter = 0;

  friend auto operator<=>(const reduction&, const reduction&) = default;
};

// Canonical index for deleting position `pos` of a word with `length`
// letters. With signed indices, positions in the front half keep their
// absolute value and the back half counts from the end; the midpoint of
// odd lengths stays absolute.
std::int32_t canonical_index(std::size_t pos, std::size_t length, bool signed_indices);

// The absolute deletion position inside a word of `length` letters, or
// nullopt when the index falls outside it.
std::optional<std::size_t> resolve_index(std::int32_t index, std::size_t length);

// True when the reduction can fire on the word: the index resolves and the
// word carries the reduction's letter there.
bool applicable(const reduction& r, const std::u32string& word);

// The word with the reduction's position removed. Pre: applicable().
std::u32string apply_reduction(const reduction& r, const std::u32string& word);

// Inserts the reduction's letter back. For growing a word of length m the
// valid positions are 0..m (negative indices count from the new end).
// Raises range_error when the position falls outside that range.
std::u32string undo_reduction(const reduction& r, const std::u32string& word);

// undo_reduction with the position clamped into range instead of raising.
std::u32string undo_reduction_clamped(const reduction& r, const std::u32string& word);

struct scored_reduction {
  reduction red;
  std::uint64_t score = 0;

  friend bool operator==(const scored_reduction&, const scored_reduction&) = default;
};

// Deterministic rank order inside one length bucket: higher score first,
// then smaller absolute position, then smaller letter codepoint.
bool rank_less(const scored_reduction& a, const scored_reduction& b, std::size_t length);

struct reduction_map {
  // Word length -> reductions in rank order. Keys only exist for lengths
  // that produced at least one selected reduction.
  std::map<std::uint32_t, std::vector<scored_reduction>> per_length;
  // Sum of scores per length, the normalization divisor for beam weights.
  std::map<std::uint32_t, std::uint64_t> score_sums;
  bool signed_indices = true;
  std::uint32_t min_core_length = 3;
  std::string language;
  std::uint64_t profile_fingerprint = 0;

  const std::vector<scored_reduction>* bucket(std::uint32_t length) const {
    auto it = per_length.find(length);
    return it == per_length.end() ? nullptr : &it->second;
  }

  // Score / per-length sum; the relative weight used by the selector.
  double weight(const scored_reduction& sr, std::uint32_t length) const;

  void rebuild_sums();
  void validate() const;
};

struct train_options {
  bool signed_indices = true;
  std::uint32_t min_core_length = 3;
  unsigned threads = 1;
  std::string language;
};

// Every reduction of `word` whose result exists in the table, scored by
// the resulting word's frequency, in rank order. Positions deleting equal
// letters produce distinct reductions unless their canonical index
// coincides; coinciding ones keep a single entry (their results are the
// same word, so the score is identical).
std::vector<scored_reduction> enumerate_valid_reductions(const std::u32string& word,
                                                         const word_frequency_table& table,
                                                         bool signed_indices);

// Two passes over the table. First, every valid deletion of every word
// accumulates the resulting word's frequency onto its reduction, ranking
// the candidates. Second, each word credits only the best-ranked candidate
// that actually fires on it and lands on an in-table word, producing the
// final per-length ranking.
reduction_map train_reduction_map(const word_frequency_table& table,
                                  const train_options& options = {});

void save_reduction_map(const reduction_map& map, std::ostream& out);
void save_reduction_map(const reduction_map& map, const std::string& path);
reduction_map load_reduction_map(std::istream& in);
reduction_map load_reduction_map_file(const std::string& path);

}  // namespace splinter
