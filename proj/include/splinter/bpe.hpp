#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "splinter/profile.hpp"

namespace splinter {

// A segmented token. id >= 0 refers to the model vocabulary; id == -1 is
// the fallback class for codepoints unseen at training time, with `text`
// carrying the codepoint so concatenation still reproduces the word.
struct token {
  std::int64_t id = -1;
  std::string text;
};

constexpr std::int64_t kFallbackId = -1;

struct tokenizer_model {
  // id -> token text (UTF-8). Special tokens first, then the base alphabet
  // (one token per distinct codepoint, ascending), then merged tokens in
  // creation order.
  std::vector<std::string> vocab;
  // Merge rules in creation order, each pairing two existing ids.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> merges;
  std::uint32_t num_specials = 0;
  std::uint32_t base_size = 0;

  std::int64_t id_of(std::string_view text) const;  // -1 when absent
  // Rank of a merge rule, -1 when the pair was never merged.
  std::int64_t rank_of(std::uint32_t left, std::uint32_t right) const;

  // Rebuilds the lookup structures after vocab/merges change; train and
  // load call this, so users only need it when assembling models by hand.
  void index();
  void validate() const;

 private:
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::unordered_map<std::uint64_t, std::uint32_t> merge_rank_;
};

struct bpe_options {
  std::vector<std::string> special_tokens;  // reserved ids, never merged
  unsigned threads = 1;
};

// Learns merges greedily: the most frequent adjacent pair wins each round,
// ties broken by smaller left id, then smaller right id. Words never merge
// across their boundaries. Stops when the vocabulary reaches vocab_size or
// no pair occurs twice. Raises vocab_too_small_error when vocab_size
// cannot even hold the specials plus the base alphabet, empty_corpus_error
// when no words are given.
tokenizer_model train_bpe(const std::map<std::u32string, std::uint64_t>& word_counts,
                          std::size_t vocab_size, const bpe_options& options = {});

// Convenience: splits lines into words with the profile's delimiters and
// counts them (every word, no frequency threshold), then trains.
tokenizer_model train_bpe_lines(const std::vector<std::string>& lines, std::size_t vocab_size,
                                const language_profile& profile, const bpe_options& options = {});

// Applies the learned merges to one word, earliest-learned first. The
// concatenated token texts always equal the word.
std::vector<token> segment_word(const std::u32string& word, const tokenizer_model& model);

// Caches segmentations by word; safe because segmentation is pure.
class segmenter {
 public:
  explicit segmenter(const tokenizer_model& model) : model_(model) {}
  const std::vector<token>& segment(const std::u32string& word);

 private:
  const tokenizer_model& model_;
  std::unordered_map<std::u32string, std::vector<token>> cache_;
};

void save_bpe_model(const tokenizer_model& model, std::ostream& out);
void save_bpe_model(const tokenizer_model& model, const std::string& path);
tokenizer_model load_bpe_model(std::istream& in);
tokenizer_model load_bpe_model_file(const std::string& path);

// Tokenized text exchange format: one output line per input line, words
// separated by U+001E, tokens inside a word by U+001F. Both separators are
// forbidden inside tokens.
constexpr char kWordSep = '\x1e';
constexpr char kTokenSep = '\x1f';

struct tokenized_line {
  std::vector<std::vector<std::string>> words;
};

std::string format_tokenized_line(const tokenized_line& line);
tokenized_line parse_tokenized_line(std::string_view line);

// Tokenizes every word of every line with the profile's splitter. Only
// tokens are kept; delimiters are dropped.
std::vector<tokenized_line> tokenize_lines(const std::vector<std::string>& lines,
                                           const tokenizer_model& model,
                                           const language_profile& profile);

}  // namespace splinter
