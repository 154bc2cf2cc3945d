#include "splinter/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>

#include "splinter/corpus.hpp"
#include "splinter/profile.hpp"
#include "splinter/unicode.hpp"

namespace splinter {

namespace {

// Draws routed through explicit arithmetic so results do not depend on the
// standard library's distribution implementations.
struct det_rng {
  std::mt19937 engine;

  explicit det_rng(std::uint32_t seed) : engine(seed) {}

  std::uint32_t below(std::uint32_t n) { return engine() % n; }

  double unit() { return static_cast<double>(engine() >> 5) * (1.0 / 134217728.0); }

  bool chance(double p) { return unit() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(static_cast<std::uint32_t>(i))]);
  }
};

// Base Hebrew letters (no final forms).
constexpr char32_t kLetters[] = {
    0x05D0, 0x05D1, 0x05D2, 0x05D3, 0x05D4, 0x05D5, 0x05D6, 0x05D7, 0x05D8, 0x05D9, 0x05DB,
    0x05DC, 0x05DE, 0x05E0, 0x05E1, 0x05E2, 0x05E4, 0x05E6, 0x05E7, 0x05E8, 0x05E9, 0x05EA,
};
constexpr std::size_t kLetterCount = sizeof(kLetters) / sizeof(kLetters[0]);

constexpr char32_t L = 0x05DC;   // lamed
constexpr char32_t M = 0x05DE;   // mem
constexpr char32_t W = 0x05D5;   // vav
constexpr char32_t H = 0x05D4;   // he
constexpr char32_t Y = 0x05D9;   // yod
constexpr char32_t T = 0x05EA;   // tav
constexpr char32_t B = 0x05D1;   // bet
constexpr char32_t N = 0x05E0;   // nun
constexpr char32_t SH = 0x05E9;  // shin

struct word_template {
  // '1'..'3' are root slots, anything else is a literal letter.
  std::u32string pattern;
  double weight;
};

// Each non-root template reaches a shorter one by deleting a single
// letter, so trained reductions can walk forms down to their roots.
const std::vector<word_template>& templates() {
  static const std::vector<word_template> t = {
      {U"123", 1000},
      {{char32_t(H), U'1', U'2', U'3'}, 300},
      {{char32_t(M), U'1', U'2', U'3'}, 260},
      {{char32_t(L), U'1', U'2', U'3'}, 240},
      {{char32_t(B), U'1', U'2', U'3'}, 220},
      {{char32_t(N), U'1', U'2', U'3'}, 120},
      {{char32_t(SH), U'1', U'2', U'3'}, 100},
      {{U'1', U'2', U'3', char32_t(M)}, 200},
      {{U'1', U'2', U'3', char32_t(T)}, 170},
      {{U'1', U'2', U'3', char32_t(H)}, 160},
      {{U'1', U'2', U'3', char32_t(N)}, 110},
      {{U'1', char32_t(W), U'2', U'3'}, 280},
      {{U'1', char32_t(Y), U'2', U'3'}, 90},
      {{U'1', U'2', U'3', char32_t(Y), char32_t(M)}, 150},
      {{U'1', U'2', U'3', char32_t(W), char32_t(T)}, 130},
      {{U'1', U'2', U'3', char32_t(Y), char32_t(T)}, 40},
      {{char32_t(M), U'1', U'2', U'3', char32_t(M)}, 60},
      {{char32_t(H), U'1', U'2', U'3', char32_t(M)}, 55},
      {{char32_t(L), U'1', char32_t(W), U'2', U'3'}, 70},
      {{char32_t(M), U'1', char32_t(W), U'2', U'3'}, 50},
      {{char32_t(H), U'1', U'2', U'3', char32_t(W), char32_t(T)}, 45},
  };
  return t;
}

// Borrowed spellings that end in a base letter on the surface; mem, pe and
// tsadi here have final forms a native word would use.
const std::vector<std::u32string>& borrowed_words() {
  static const std::vector<std::u32string> words = {
      {0x05E7, 0x05D8, 0x05E9, 0x05D5, 0x05E4},          // qof tet shin vav pe
      {0x05D0, 0x05DC, 0x05D1, 0x05D5, 0x05DE},          // aleph lamed bet vav mem
      {0x05D1, 0x05DC, 0x05D5, 0x05D2, 0x05E6},          // bet lamed vav gimel tsadi
  };
  return words;
}

const std::vector<std::string>& latin_words() {
  static const std::vector<std::string> words = {
      "the",  "data",  "web",    "info",  "news",  "mail", "site",  "code",
      "file", "user",  "page",   "link",  "blog",  "wiki", "photo", "video",
      "http", "www",   "com",    "net",   "org",   "api",  "sql",   "html",
  };
  return words;
}

std::u32string instantiate(const word_template& t, const std::u32string& root) {
  std::u32string out;
  out.reserve(t.pattern.size());
  for (char32_t cp : t.pattern) {
    if (cp >= U'1' && cp <= U'3')
      out.push_back(root[cp - U'1']);
    else
      out.push_back(cp);
  }
  return out;
}

struct form_table {
  std::vector<std::u32string> forms;     // normalized spelling
  std::vector<std::uint64_t> counts;
  std::vector<bool> borrowed;
};

form_table build_forms(const synth_params& params, det_rng& rng) {
  std::set<std::u32string> seen_roots;
  std::vector<std::u32string> roots;
  while (roots.size() < params.roots) {
    std::u32string root;
    for (int i = 0; i < 3; ++i) root.push_back(kLetters[rng.below(kLetterCount)]);
    if (root[0] == root[1] && root[1] == root[2]) continue;
    if (seen_roots.insert(root).second) roots.push_back(root);
  }

  form_table table;
  std::set<std::u32string> seen_forms;
  for (std::size_t ri = 0; ri < roots.size(); ++ri) {
    double zipf = 1.0 / std::pow(static_cast<double>(ri + 1), 1.1);
    for (const word_template& t : templates()) {
      std::u32string form = instantiate(t, roots[ri]);
      std::uint64_t count =
          static_cast<std::uint64_t>(std::llround(t.weight * zipf * params.scale));
      if (count == 0) continue;
      if (!seen_forms.insert(form).second) {
        // Collision across roots: add to the existing entry.
        for (std::size_t i = 0; i < table.forms.size(); ++i)
          if (table.forms[i] == form) {
            table.counts[i] += count;
            break;
          }
        continue;
      }
      table.forms.push_back(std::move(form));
      table.counts.push_back(count);
      table.borrowed.push_back(false);
    }
  }
  if (params.include_borrowed) {
    std::uint64_t count = std::max<std::uint64_t>(
        12, static_cast<std::uint64_t>(std::llround(140.0 * params.scale)));
    for (const std::u32string& w : borrowed_words()) {
      if (!seen_forms.insert(w).second) continue;
      table.forms.push_back(w);
      table.counts.push_back(count);
      table.borrowed.push_back(true);
    }
  }
  return table;
}

}  // namespace

synth_output synth_corpus(const synth_params& params) {
  det_rng rng(params.seed);
  language_profile hebrew = builtin_profile("hebrew");
  form_table table = build_forms(params, rng);

  // Occurrence list over form indices, shuffled once.
  std::vector<std::uint32_t> occurrences;
  for (std::size_t i = 0; i < table.forms.size(); ++i)
    for (std::uint64_t c = 0; c < table.counts[i]; ++c)
      occurrences.push_back(static_cast<std::uint32_t>(i));
  rng.shuffle(occurrences);

  final_letter_exceptions no_exceptions;
  synth_output out;
  std::string line;
  std::size_t words_in_line = 0;
  std::size_t line_target = 8 + rng.below(7);
  const char* kPunct[] = {".", ",", ":", "\""};

  auto flush_line = [&] {
    if (line.empty()) return;
    if (rng.chance(0.7)) line += " .";
    out.bytes += line.size() + 1;
    out.lines.push_back(std::move(line));
    line.clear();
    words_in_line = 0;
    line_target = 8 + rng.below(7);
  };
  auto push_word = [&](const std::string& w) {
    if (!line.empty()) line += ' ';
    line += w;
    ++words_in_line;
    if (words_in_line >= line_target) flush_line();
  };

  for (std::uint32_t fi : occurrences) {
    std::u32string surface = table.borrowed[fi]
                                 ? table.forms[fi]
                                 : denormalize_final_letters(table.forms[fi], hebrew, no_exceptions);
    if (rng.chance(params.diacritic_share) && surface.size() > 2)
      surface.insert(1 + rng.below(static_cast<std::uint32_t>(surface.size() - 1)), 1,
                     char32_t(0x05B0));
    std::string w = encode_utf8(surface);
    if (rng.chance(0.02)) w = "\"" + w + "\"";
    else if (rng.chance(0.015)) w = "(" + w + ")";
    push_word(w);
    ++out.word_occurrences;

    if (rng.chance(params.latin_share))
      push_word(latin_words()[rng.below(static_cast<std::uint32_t>(latin_words().size()))]);
    if (rng.chance(params.number_share)) push_word(std::to_string(1900 + rng.below(200)));
    if (rng.chance(0.08)) {
      if (!line.empty()) {
        line += ' ';
        line += kPunct[rng.below(4)];
      }
    }
    if (params.sprinkle_private_block && rng.chance(0.0004)) {
      std::string pua;
      append_utf8(pua, char32_t(0xE000 + 1 + rng.below(64)));
      append_utf8(pua, char32_t(0x05D0 + rng.below(10)));
      push_word(pua);
    }
  }
  flush_line();

  // Most frequent first, ties by spelling, for stable stimulus picks.
  std::vector<std::size_t> order(table.forms.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (table.counts[a] != table.counts[b]) return table.counts[a] > table.counts[b];
    return table.forms[a] < table.forms[b];
  });
  for (std::size_t i : order) out.word_forms.push_back(table.forms[i]);
  return out;
}

std::string synth_lexical_csv(const synth_params& params, std::size_t words,
                              std::size_t nonwords) {
  det_rng rng(params.seed ^ 0x9E3779B9u);
  language_profile hebrew = builtin_profile("hebrew");
  synth_output corpus = synth_corpus(params);
  final_letter_exceptions no_exceptions;

  std::set<std::u32string> known(corpus.word_forms.begin(), corpus.word_forms.end());
  std::string csv = "stimulus,lexicality,accuracy,rt\n";
  char buf[160];

  auto emit = [&](const std::u32string& surface, bool is_word) {
    double len = static_cast<double>(surface.size());
    double rt = 430.0 + 52.0 * len + (rng.unit() - 0.5) * 60.0 + (is_word ? 0.0 : 90.0);
    double acc = 1.03 - 0.045 * len + (rng.unit() - 0.5) * 0.08 - (is_word ? 0.0 : 0.05);
    acc = std::clamp(acc, 0.5, 1.0);
    std::snprintf(buf, sizeof(buf), "%s,%s,%.3f,%.0f\n", encode_utf8(surface).c_str(),
                  is_word ? "word" : "nonword", acc, rt);
    csv += buf;
  };

  std::size_t picked = 0;
  for (const std::u32string& form : corpus.word_forms) {
    if (picked == words) break;
    emit(denormalize_final_letters(form, hebrew, no_exceptions), true);
    ++picked;
  }
  std::size_t made = 0;
  while (made < nonwords) {
    std::u32string nw;
    std::size_t len = 3 + rng.below(5);
    for (std::size_t i = 0; i < len; ++i) nw.push_back(kLetters[rng.below(kLetterCount)]);
    if (known.count(nw) != 0) continue;
    emit(nw, false);
    ++made;
  }
  return csv;
}

}  // namespace splinter
