#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "splinter/bpe.hpp"
#include "splinter/errors.hpp"
#include "splinter/synth.hpp"
#include "splinter/unicode.hpp"

using namespace splinter;

namespace {

std::map<std::u32string, std::uint64_t> counts_of(
    std::initializer_list<std::pair<const char32_t*, std::uint64_t>> rows) {
  std::map<std::u32string, std::uint64_t> counts;
  for (const auto& [word, count] : rows) counts[word] = count;
  return counts;
}

std::string concat(const std::vector<token>& tokens) {
  std::string out;
  for (const token& t : tokens) out += t.text;
  return out;
}

}  // namespace

TEST_CASE("base vocabulary lists distinct codepoints in ascending order") {
  // No pair repeats, so training stops at the bare alphabet.
  tokenizer_model model = train_bpe(counts_of({{U"cab", 1}}), 4);
  REQUIRE(model.vocab.size() == 3);
  CHECK(model.vocab[0] == "a");
  CHECK(model.vocab[1] == "b");
  CHECK(model.vocab[2] == "c");
  CHECK(model.base_size == 3);
  CHECK(model.merges.empty());
}

TEST_CASE("merges happen most-frequent-first with id tie-breaks") {
  // "ab" appears 5 times, "bc" 3 times: ab merges first.
  tokenizer_model model = train_bpe(counts_of({{U"abc", 3}, {U"ab", 2}}), 5);
  REQUIRE(model.merges.size() == 2);
  CHECK(model.vocab[3] == "ab");
  // After (a,b), the pair (ab, c) occurs 3 times and wins the next round.
  CHECK(model.vocab[4] == "abc");

  // A dead tie: (a,b) occurs twice ("ab" once, inside "baba" once) and
  // (b,a) occurs twice inside "baba". The smaller left id (a) must win.
  tokenizer_model tie = train_bpe(counts_of({{U"ab", 1}, {U"baba", 1}}), 3);
  CHECK(tie.vocab.back() == "ab");
}

TEST_CASE("training matches the recount-from-scratch oracle on synthetic text") {
  synth_params params;
  params.scale = 0.15;
  synth_output corpus = synth_corpus(params);
  language_profile hebrew = builtin_profile("hebrew");

  std::map<std::u32string, std::uint64_t> counts;
  for (const std::string& line : corpus.lines)
    for (const word_span& span : split_words(line, hebrew)) ++counts[span.word];

  for (std::size_t vocab_size : {70u, 120u, 300u}) {
    CAPTURE(vocab_size);
    tokenizer_model got = train_bpe(counts, vocab_size);
    tokenizer_model want = oracles::oracle_train_bpe(counts, vocab_size);
    got.validate();
    CHECK(got.vocab == want.vocab);
    CHECK(got.merges == want.merges);
    CHECK(got.base_size == want.base_size);
  }
}

TEST_CASE("training is thread-count invariant") {
  synth_params params;
  params.scale = 0.15;
  synth_output corpus = synth_corpus(params);
  language_profile hebrew = builtin_profile("hebrew");
  bpe_options one, four;
  one.threads = 1;
  four.threads = 4;
  tokenizer_model a = train_bpe_lines(corpus.lines, 150, hebrew, one);
  tokenizer_model b = train_bpe_lines(corpus.lines, 150, hebrew, four);
  CHECK(a.vocab == b.vocab);
  CHECK(a.merges == b.merges);
}

TEST_CASE("special tokens reserve the lowest ids and never merge") {
  bpe_options options;
  options.special_tokens = {"<pad>", "<eos>"};
  tokenizer_model model = train_bpe(counts_of({{U"aaaa", 6}}), 5, options);
  CHECK(model.vocab[0] == "<pad>");
  CHECK(model.vocab[1] == "<eos>");
  CHECK(model.num_specials == 2);
  CHECK(model.id_of("<pad>") == 0);
  for (const auto& [l, r] : model.merges) {
    CHECK(l >= model.num_specials);
    CHECK(r >= model.num_specials);
  }
}

TEST_CASE("training stops early when no pair repeats") {
  tokenizer_model model = train_bpe(counts_of({{U"abcdef", 1}}), 100);
  CHECK(model.vocab.size() == 6);  // just the alphabet, every pair unique
  CHECK(model.merges.empty());
}

TEST_CASE("a vocabulary that cannot hold the alphabet plus one merge raises") {
  CHECK_THROWS_AS(train_bpe(counts_of({{U"abcd", 2}}), 3), vocab_too_small_error);
  // The boundary is strict: room for the base alphabet alone is not enough.
  CHECK_THROWS_AS(train_bpe(counts_of({{U"ab", 2}}), 2), vocab_too_small_error);
  bpe_options options;
  options.special_tokens = {"<pad>"};
  CHECK_THROWS_AS(train_bpe(counts_of({{U"abcd", 2}}), 5, options), vocab_too_small_error);
  CHECK_THROWS_AS(train_bpe({}, 10), empty_corpus_error);
}

TEST_CASE("segmentation replays merges like the reference and concatenates back") {
  synth_params params;
  params.scale = 0.15;
  synth_output corpus = synth_corpus(params);
  language_profile hebrew = builtin_profile("hebrew");
  tokenizer_model model = train_bpe_lines(corpus.lines, 180, hebrew);

  for (const std::u32string& word : corpus.word_forms) {
    std::vector<token> got = segment_word(word, model);
    std::vector<std::string> want = oracles::oracle_segment(word, model);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].text == want[i]);
      CHECK(got[i].id == model.id_of(got[i].text));
    }
    CHECK(concat(got) == encode_utf8(word));
  }
}

TEST_CASE("unseen codepoints fall back to single-codepoint tokens with id -1") {
  tokenizer_model model = train_bpe(counts_of({{U"abab", 4}}), 3);
  std::vector<token> tokens = segment_word(U"aXb", model);
  REQUIRE(tokens.size() == 3);
  CHECK(tokens[0].id == model.id_of("a"));
  CHECK(tokens[1].id == kFallbackId);
  CHECK(tokens[1].text == "X");
  CHECK(tokens[2].id == model.id_of("b"));
  CHECK(concat(tokens) == "aXb");
}

TEST_CASE("the segmenter cache returns the same segmentation") {
  tokenizer_model model = train_bpe(counts_of({{U"abab", 4}, {U"abc", 2}}), 6);
  segmenter seg{model};
  const std::vector<token>& first = seg.segment(U"ababc");
  std::vector<token> direct = segment_word(U"ababc", model);
  REQUIRE(first.size() == direct.size());
  for (std::size_t i = 0; i < first.size(); ++i) CHECK(first[i].text == direct[i].text);
  CHECK(&seg.segment(U"ababc") == &first);  // cached object, not recomputed
}

TEST_CASE("models survive save and load, including hostile token bytes") {
  bpe_options options;
  options.special_tokens = {"<pad>", "with\ttab"};
  tokenizer_model model = train_bpe(counts_of({{U"abab", 4}, {U"abcd", 3}}), 8, options);
  std::ostringstream out;
  save_bpe_model(model, out);
  std::istringstream in{out.str()};
  tokenizer_model back = load_bpe_model(in);
  back.validate();
  CHECK(back.vocab == model.vocab);
  CHECK(back.merges == model.merges);
  CHECK(back.num_specials == model.num_specials);
  CHECK(back.base_size == model.base_size);
  std::ostringstream again;
  save_bpe_model(back, again);
  CHECK(again.str() == out.str());

  std::string tampered = out.str();
  tampered[tampered.size() / 2] ^= 1;
  std::istringstream bad{tampered};
  CHECK_THROWS_AS(load_bpe_model(bad), format_error);

  // The exchange separator byte can never appear inside any token; model
  // validation rejects it before the model can even be built.
  bpe_options hostile;
  hostile.special_tokens = {"with\x1fsep"};
  CHECK_THROWS_AS(train_bpe(counts_of({{U"abab", 4}}), 5, hostile), format_error);
}

TEST_CASE("exchange lines round trip and reject separator bytes in tokens") {
  tokenized_line line;
  line.words = {{"ab", "c"}, {"d"}, {"e", "f", "g"}};
  tokenized_line back = parse_tokenized_line(format_tokenized_line(line));
  CHECK(back.words == line.words);

  tokenized_line bad;
  bad.words = {{std::string{"a"} + kTokenSep}};
  CHECK_THROWS_AS(format_tokenized_line(bad), format_error);
}

TEST_CASE("tokenize_lines keeps one output line per input line") {
  language_profile hebrew = builtin_profile("hebrew");
  tokenizer_model model = train_bpe(counts_of({{U"אב", 4}}), 3);
  std::vector<std::string> lines = {encode_utf8(U"אב א"), "", "latin only"};
  std::vector<tokenized_line> tokenized = tokenize_lines(lines, model, hebrew);
  REQUIRE(tokenized.size() == 3);
  CHECK(tokenized[0].words.size() == 2);
  CHECK(tokenized[1].words.empty());
  CHECK(tokenized[2].words.size() == 2);  // fallback tokens, still tokenized
}
