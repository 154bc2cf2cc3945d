#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "splinter/errors.hpp"
#include "splinter/splinterer.hpp"
#include "splinter/synth.hpp"

using namespace splinter;

namespace {

language_profile hebrew() { return builtin_profile("hebrew"); }

struct trained {
  word_frequency_table table;
  final_letter_exceptions exceptions;
  reduction_map map;
  std::vector<std::u32string> forms;
};

trained train_from_synth(double scale, bool signed_indices = true) {
  synth_params params;
  params.scale = scale;
  synth_output corpus = synth_corpus(params);
  ingest_result ingested = ingest_lines(corpus.lines, hebrew());
  train_options opt;
  opt.signed_indices = signed_indices;
  opt.language = "hebrew";
  trained t;
  t.map = train_reduction_map(ingested.table, opt);
  t.table = std::move(ingested.table);
  t.exceptions = std::move(ingested.exceptions);
  t.forms = corpus.word_forms;
  return t;
}

}  // namespace

TEST_CASE("selection equals exhaustive path enumeration across breadth and depth") {
  trained t = train_from_synth(0.3);
  std::size_t disagreements = 0, selections = 0;
  for (unsigned breadth : {1u, 2u, 3u, 4u})
    for (unsigned depth : {1u, 2u, 3u, 4u})
      for (const std::u32string& word : t.forms) {
        std::optional<reduction> got = select_reduction(word, t.map, breadth, depth);
        oracles::o_selection want = oracles::oracle_select(word, t.map, breadth, depth);
        ++selections;
        if (got != want.first) ++disagreements;
      }
  CHECK(selections > 4000);
  CHECK(disagreements == 0);
}

TEST_CASE("breadth one, depth one degenerates to first firing reduction") {
  trained t = train_from_synth(0.3);
  for (const std::u32string& word : t.forms)
    CHECK(select_reduction(word, t.map, 1, 1) == oracles::oracle_greedy(word, t.map));
}

TEST_CASE("widening the beam never worsens the chosen path score") {
  trained t = train_from_synth(0.3);
  for (const std::u32string& word : t.forms) {
    double prev = -1.0;
    for (unsigned breadth : {1u, 2u, 3u, 4u, 8u}) {
      oracles::o_selection sel = oracles::oracle_select(word, t.map, breadth, 3);
      if (!sel.first) continue;
      CHECK(sel.score >= prev);
      prev = sel.score;
    }
  }
}

TEST_CASE("encode stops at the core length and decode rebuilds the word") {
  trained t = train_from_synth(0.3);
  std::size_t reduced_words = 0;
  for (const std::u32string& word : t.forms) {
    splintered_word sw = encode_word(word, t.map);
    CHECK(sw.core.size() + sw.reductions.size() == word.size());
    CHECK(sw.core.size() >= std::min<std::size_t>(word.size(), t.map.min_core_length));
    CHECK(decode_word(sw) == word);
    if (!sw.reductions.empty()) ++reduced_words;
  }
  // The templated corpus must actually exercise the encoder.
  CHECK(reduced_words * 2 > t.forms.size());
}

TEST_CASE("a hand-built template map recovers the planted root") {
  // Words built from root letters (positions vary) with one template
  // inserting l at the front and w before the last letter.
  reduction_map map;
  map.signed_indices = false;
  map.min_core_length = 3;
  // length 5 bucket: remove w at position 3; length 4: remove l at 0.
  map.per_length[5] = {{{3, 0x05D5}, 10}};
  map.per_length[4] = {{{0, 0x05DC}, 10}};
  map.rebuild_sums();
  map.validate();

  std::u32string word = U"לעבוד";
  splintered_word sw = encode_word(word, map);
  CHECK(sw.core == U"עבד");
  REQUIRE(sw.reductions.size() == 2);
  // Reconstruction order: first insertion back is the outermost removal.
  CHECK(sw.reductions[0] == reduction{0, 0x05DC});
  CHECK(sw.reductions[1] == reduction{3, 0x05D5});
  CHECK(decode_word(sw) == word);
}

TEST_CASE("surface encoding is reversible and alphabets can be frozen") {
  trained t = train_from_synth(0.3);
  composite_alphabet growing = make_alphabet(hebrew());
  for (const std::u32string& word : t.forms) {
    splintered_word sw = encode_word(word, t.map);
    std::u32string surface = to_surface(sw, growing, false);
    splintered_word back = from_surface(surface, growing);
    CHECK(back.core == sw.core);
    CHECK(back.reductions == sw.reductions);
  }

  composite_alphabet derived = alphabet_from_map(t.map, hebrew());
  derived.validate();
  // The derived alphabet covers everything the growing run needed.
  CHECK(derived.size() >= growing.size());
  for (const reduction& r : growing.composites) CHECK(derived.surrogate_for(r).has_value());

  composite_alphabet empty = make_alphabet(hebrew());
  splintered_word needs{U"עבד", {reduction{0, 0x05DC}}};
  CHECK_THROWS_AS(to_surface(needs, empty, true), unknown_composite_error);
}

TEST_CASE("from_surface rejects junk codepoints") {
  composite_alphabet alphabet = make_alphabet(hebrew());
  alphabet.intern(reduction{0, 0x05DC});
  std::u32string unassigned{U"עבד"};
  unassigned += static_cast<char32_t>(alphabet.block_base + 7);
  CHECK_THROWS_AS(from_surface(unassigned, alphabet), unknown_composite_error);
  CHECK_THROWS_AS(from_surface(U"עxyz", alphabet), mixed_script_error);
}

TEST_CASE("signed indices shrink the composite alphabet on suffix templates") {
  trained with_sign = train_from_synth(0.3, true);
  trained without = train_from_synth(0.3, false);
  composite_alphabet a = alphabet_from_map(with_sign.map, hebrew());
  composite_alphabet b = alphabet_from_map(without.map, hebrew());
  CHECK(a.size() < b.size());
}

TEST_CASE("alphabets survive save and load byte-exactly") {
  trained t = train_from_synth(0.3);
  composite_alphabet alphabet = alphabet_from_map(t.map, hebrew());
  std::ostringstream out;
  save_alphabet(alphabet, out);
  std::istringstream in{out.str()};
  composite_alphabet back = load_alphabet(in);
  back.validate();
  CHECK(back.composites == alphabet.composites);
  CHECK(back.block_base == alphabet.block_base);
  CHECK(back.block_size == alphabet.block_size);
  CHECK(back.profile_fingerprint == alphabet.profile_fingerprint);
  std::ostringstream again;
  save_alphabet(back, again);
  CHECK(again.str() == out.str());

  std::string tampered = out.str();
  tampered[tampered.rfind("e0")] = 'f';
  std::istringstream bad{tampered};
  CHECK_THROWS_AS(load_alphabet(bad), format_error);
}

TEST_CASE("splinter_text keeps every byte it does not own") {
  trained t = train_from_synth(0.3);
  composite_alphabet alphabet = alphabet_from_map(t.map, hebrew());
  language_profile profile = hebrew();
  splinter_options options;
  options.frozen = true;
  options.exceptions = &t.exceptions;

  // Tabs, CRLF, doubled spaces, numbers, Latin and a no-trailing-newline
  // tail all pass through untouched.
  std::string text = "12.5\tmixed\r\nkeep  spacing " +
                     encode_utf8(U"הכתב") + "\r\nlast";
  std::string splintered = splinter_text(text, t.map, alphabet, profile, options);
  CHECK(unsplinter_text(splintered, alphabet, profile, &t.exceptions) == text);

  // Non-script bytes are byte-identical in the output, not just restored.
  CHECK(splintered.substr(0, 24) == text.substr(0, 24));
}

TEST_CASE("full corpus round trips byte-exactly, including planted traps") {
  synth_params params;
  params.scale = 0.4;
  params.sprinkle_private_block = true;  // words that collide with the block
  params.diacritic_share = 0.01;
  synth_output corpus = synth_corpus(params);
  ingest_result ingested = ingest_lines(corpus.lines, hebrew());
  reduction_map map = train_reduction_map(ingested.table, {});
  composite_alphabet alphabet = alphabet_from_map(map, hebrew());
  language_profile profile = hebrew();

  std::string text;
  for (const std::string& line : corpus.lines) {
    text += line;
    text += '\n';
  }

  splinter_stats stats;
  splinter_options options;
  options.frozen = true;
  options.exceptions = &ingested.exceptions;
  options.stats = &stats;
  std::string splintered = splinter_text(text, map, alphabet, profile, options);
  CHECK(unsplinter_text(splintered, alphabet, profile, &ingested.exceptions) == text);
  CHECK(stats.words_splintered > 0);
  // The planted private-block words must take the verbatim escape hatch.
  CHECK(stats.words_marked > 0);
  CHECK(stats.words_in_script < stats.words_total);
}

TEST_CASE("splintering with a stale map never breaks the round trip") {
  // Train on one corpus, splinter a different one: unknown words reduce
  // differently or not at all, but restoration stays exact.
  trained t = train_from_synth(0.2);
  synth_params params;
  params.scale = 0.25;
  params.seed = 99;
  synth_output other = synth_corpus(params);
  composite_alphabet alphabet = alphabet_from_map(t.map, hebrew());
  language_profile profile = hebrew();

  std::string text;
  for (const std::string& line : other.lines) {
    text += line;
    text += '\n';
  }
  splinter_options options;
  options.frozen = true;
  options.exceptions = &t.exceptions;
  std::string splintered = splinter_text(text, t.map, alphabet, profile, options);
  CHECK(unsplinter_text(splintered, alphabet, profile, &t.exceptions) == text);
}

TEST_CASE("marker escape survives words that already contain the marker") {
  trained t = train_from_synth(0.2);
  composite_alphabet alphabet = alphabet_from_map(t.map, hebrew());
  language_profile profile = hebrew();
  std::string marker = encode_utf8(alphabet.marker());
  std::string text = marker + " " + marker + marker + "x " +
                     encode_utf8(U"הכתב") + marker + "\n";
  splinter_options options;
  options.frozen = true;
  std::string splintered = splinter_text(text, t.map, alphabet, profile, options);
  CHECK(unsplinter_text(splintered, alphabet, profile, nullptr) == text);
}
