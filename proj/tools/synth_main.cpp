#include <CLI11.hpp>
#include <iostream>

#include "splinter/kv.hpp"
#include "splinter/synth.hpp"

// Deterministic generator for test corpora: templated Hebrew-script word
// families with Zipfian frequencies plus controlled noise (Latin words,
// numbers, diacritics, optional private-block characters).
int main(int argc, char** argv) {
  using namespace splinter;
  CLI::App app{"synth-fixture: deterministic corpus and lexical CSV generator"};
  synth_params params;
  std::string corpus_out, lexical_out;
  std::size_t stimuli_words = 40, stimuli_nonwords = 40;
  app.add_option("--output", corpus_out, "corpus path")->required();
  app.add_option("--lexical", lexical_out, "lexical decision CSV path (optional)");
  app.add_option("--roots", params.roots, "word families")->capture_default_str();
  app.add_option("--scale", params.scale, "size multiplier")->capture_default_str();
  app.add_option("--seed", params.seed, "RNG seed")->capture_default_str();
  app.add_option("--latin-share", params.latin_share, "share of Latin words")
      ->capture_default_str();
  app.add_option("--number-share", params.number_share, "share of number tokens")
      ->capture_default_str();
  app.add_option("--diacritic-share", params.diacritic_share, "share of pointed words")
      ->capture_default_str();
  app.add_flag("--pua", params.sprinkle_private_block,
               "sprinkle private-use characters to exercise the verbatim marker");
  app.add_option("--stimuli-words", stimuli_words, "real words in the CSV")
      ->capture_default_str();
  app.add_option("--stimuli-nonwords", stimuli_nonwords, "nonwords in the CSV")
      ->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    synth_output out = synth_corpus(params);
    std::string text;
    text.reserve(out.bytes);
    for (const std::string& line : out.lines) {
      text += line;
      text += '\n';
    }
    write_file(corpus_out, text);
    if (!lexical_out.empty())
      write_file(lexical_out, synth_lexical_csv(params, stimuli_words, stimuli_nonwords));
    std::cerr << "lines " << out.lines.size() << ", distinct forms " << out.word_forms.size()
              << ", occurrences " << out.word_occurrences << ", bytes " << text.size() << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
