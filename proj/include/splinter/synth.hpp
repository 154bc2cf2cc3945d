#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace splinter {

// Deterministic generator for a Hebrew-like test corpus: triliteral roots
// crossed with affix templates, Zipf-weighted, mixed with Latin words,
// numbers, punctuation and a handful of borrowed words that keep a base
// letter in final position. The same parameters always produce the same
// bytes; randomness comes only from the seeded engine, never from the
// standard library's distributions.
struct synth_params {
  std::uint32_t roots = 24;
  double scale = 0.05;    // multiplies every frequency
  std::uint32_t seed = 42;
  double latin_share = 0.04;   // chance of a Latin word after each word
  double number_share = 0.01;
  double diacritic_share = 0.002;  // chance a word carries a vowel point
  bool include_borrowed = true;
  // Emits a few words containing private-use codepoints, which the
  // splinterer must escape.
  bool sprinkle_private_block = false;
};

struct synth_output {
  std::vector<std::string> lines;
  // Distinct in-script forms in normalized spelling, most frequent first.
  std::vector<std::u32string> word_forms;
  std::uint64_t word_occurrences = 0;
  std::size_t bytes = 0;
};

synth_output synth_corpus(const synth_params& params);

// Lexical decision stimuli over the generated forms plus letter-shuffled
// nonwords, with response times and accuracies that degrade with length.
std::string synth_lexical_csv(const synth_params& params, std::size_t words,
                              std::size_t nonwords);

}  // namespace splinter
