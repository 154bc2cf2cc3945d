#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "splinter/bpe.hpp"
#include "splinter/splinterer.hpp"

namespace splinter {

struct token_distribution {
  std::unordered_map<std::string, std::uint64_t> counts;
  std::uint64_t total = 0;

  void add(std::string_view token_text, std::uint64_t n = 1);
};

token_distribution distribution_from(const std::vector<tokenized_line>& lines);

struct renyi_result {
  double efficiency = 0.0;
  double entropy = 0.0;  // nats
  // True when the distribution has a single token type; the efficiency is
  // reported as 0 instead of dividing by log(1).
  bool degenerate = false;
};

// Renyi entropy of order alpha over the empirical token distribution,
// normalized by log of the number of observed types. alpha == 1 falls back
// to Shannon entropy. Raises empty_corpus_error on an empty distribution
// and config_error for alpha <= 0.
renyi_result renyi_efficiency(const token_distribution& dist, double alpha);

struct fertility_stats_t {
  double tokens_per_word = 0.0;
  double pct_words_4plus_tokens = 0.0;  // share of words split into >= 4 tokens, percent
  double pct_single_codepoint_tokens = 0.0;  // share of tokens that are one codepoint, percent
  std::uint64_t words = 0;
  std::uint64_t tokens = 0;
};

fertility_stats_t fertility_stats(const std::vector<tokenized_line>& lines);

struct neighbor_stats_t {
  double average = 0.0;   // mean distinct-neighbor count
  std::uint64_t types = 0;  // observed token types
  // Highest distinct-neighbor counts first (ties by token text), at most
  // the requested number of entries.
  std::vector<std::pair<std::string, std::uint32_t>> top;
};

// For every token type, counts the distinct types seen within `window`
// positions on either side in the per-line token stream; lines do not see
// each other. The average divides by the observed type count unless an
// explicit denominator (e.g. the model vocabulary size) is given.
neighbor_stats_t distinct_neighbors(const std::vector<tokenized_line>& lines, unsigned window = 2,
                                    std::size_t top_n = 200,
                                    std::optional<std::uint64_t> denominator = std::nullopt);

struct lexical_decision_record {
  std::string stimulus;
  bool is_word = false;
  double accuracy = 0.0;
  double response_time = 0.0;
};

// CSV with a "stimulus,lexicality,accuracy,rt" header. lexicality is
// "word" or "nonword", accuracy must lie in [0, 1] and rt must be > 0;
// anything else raises format_error.
std::vector<lexical_decision_record> parse_lexical_csv(std::string_view text);
std::vector<lexical_decision_record> load_lexical_csv(const std::string& path);

// Index layout of the four setups in plausibility_result arrays.
enum plausibility_setup : std::size_t {
  kWordAccuracy = 0,
  kWordResponseTime = 1,
  kNonwordAccuracy = 2,
  kNonwordResponseTime = 3,
};

struct plausibility_result {
  double score = 0.0;  // mean absolute correlation over the four setups
  std::array<double, 4> correlations{};
  std::array<bool, 4> zero_variance{};
};

// Pearson correlation between a per-stimulus predictor (e.g. token count)
// and the behavioral measure, separately for words/nonwords and
// accuracy/rt. Any setup with fewer than 3 records raises
// insufficient_data_error; zero variance on either side yields 0 for that
// setup and sets its flag.
plausibility_result cognitive_plausibility(
    const std::vector<lexical_decision_record>& records,
    const std::function<double(const std::string&)>& predictor);

// Share of the splintered model's tokens whose linearization (composites
// folded back into the letters, insertion positions clamped into range) is
// a token of the vanilla model, in percent of the splintered vocabulary.
double vocab_intersection(const tokenizer_model& vanilla, const tokenizer_model& splintered,
                          const composite_alphabet& alphabet);

// The linearization used by vocab_intersection, exposed for inspection.
std::string linearize_token(std::string_view token_text, const composite_alphabet& alphabet);

}  // namespace splinter
