#include "splinter/splinterer.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "splinter/errors.hpp"
#include "splinter/kv.hpp"
#include "splinter/unicode.hpp"

namespace splinter {

std::uint64_t composite_alphabet::key(const reduction& r) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(r.index)) << 32) |
         static_cast<std::uint32_t>(r.letter);
}

std::optional<char32_t> composite_alphabet::surrogate_for(const reduction& r) const {
  auto it = lookup_.find(key(r));
  if (it == lookup_.end()) return std::nullopt;
  return block_base + 1 + it->second;
}

char32_t composite_alphabet::intern(const reduction& r) {
  auto it = lookup_.find(key(r));
  if (it != lookup_.end()) return block_base + 1 + it->second;
  if (composites.size() + 1 >= block_size)
    throw config_error("composite block exhausted (" + std::to_string(block_size) +
                       " codepoints)");
  std::uint32_t slot = static_cast<std::uint32_t>(composites.size());
  composites.push_back(r);
  lookup_.emplace(key(r), slot);
  return block_base + 1 + slot;
}

std::optional<reduction> composite_alphabet::reduction_for(char32_t cp) const {
  if (!in_block(cp) || cp == block_base) return std::nullopt;
  std::size_t slot = cp - block_base - 1;
  if (slot >= composites.size()) return std::nullopt;
  return composites[slot];
}

bool composite_alphabet::in_script(char32_t cp) const {
  for (const codepoint_range& r : script_ranges) {
    if (cp < r.lo) return false;
    if (cp <= r.hi) return true;
  }
  return false;
}

void composite_alphabet::reindex() {
  lookup_.clear();
  for (std::size_t i = 0; i < composites.size(); ++i)
    lookup_.emplace(key(composites[i]), static_cast<std::uint32_t>(i));
}

void composite_alphabet::validate() const {
  if (block_size < 2) throw config_error("alphabet: block_size must be at least 2");
  if (block_base + block_size - 1 > 0x10FFFF)
    throw config_error("alphabet: block exceeds the codepoint space");
  if (composites.size() + 1 > block_size)
    throw config_error("alphabet: more composites than the block can hold");
  for (const codepoint_range& r : script_ranges)
    if (r.lo < block_base + block_size && block_base <= r.hi)
      throw config_error("alphabet: composite block overlaps the script");
  if (lookup_.size() != composites.size())
    throw format_error("alphabet: duplicate reduction");
}

composite_alphabet make_alphabet(const language_profile& profile, char32_t block_base,
                                 std::uint32_t block_size) {
  composite_alphabet a;
  a.block_base = block_base;
  a.block_size = block_size;
  a.script_ranges = profile.script_ranges;
  a.profile_fingerprint = profile.fingerprint();
  a.validate();
  return a;
}

composite_alphabet alphabet_from_map(const reduction_map& map, const language_profile& profile,
                                     char32_t block_base, std::uint32_t block_size) {
  composite_alphabet a = make_alphabet(profile, block_base, block_size);
  for (const auto& [length, bucket] : map.per_length)
    for (const scored_reduction& sr : bucket) a.intern(sr.red);
  return a;
}

namespace {

constexpr std::string_view kAlphabetMagic = "# splinter-alphabet v1";

std::string alphabet_body(const composite_alphabet& alphabet) {
  std::string body;
  for (std::size_t i = 0; i < alphabet.composites.size(); ++i) {
    const reduction& r = alphabet.composites[i];
    body += hex64(alphabet.block_base + 1 + static_cast<char32_t>(i)).substr(10);
    body += '\t';
    body += std::to_string(r.index);
    body += '\t';
    body += hex64(r.letter).substr(10);
    body += '\n';
  }
  return body;
}

}  // namespace

void save_alphabet(const composite_alphabet& alphabet, std::ostream& out) {
  std::string body = alphabet_body(alphabet);
  out << kAlphabetMagic << '\n';
  out << "# profile_fingerprint = " << hex64(alphabet.profile_fingerprint) << '\n';
  out << "# block_base = " << hex64(alphabet.block_base).substr(10) << '\n';
  out << "# block_size = " << alphabet.block_size << '\n';
  for (const codepoint_range& r : alphabet.script_ranges)
    out << "# script_range = " << hex64(r.lo).substr(10) << ".." << hex64(r.hi).substr(10) << '\n';
  out << "# entries = " << alphabet.composites.size() << '\n';
  out << "# checksum = " << hex64(fnv1a(body)) << '\n';
  out << body;
}

void save_alphabet(const composite_alphabet& alphabet, const std::string& path) {
  std::ostringstream ss;
  save_alphabet(alphabet, ss);
  write_file(path, ss.str());
}

composite_alphabet load_alphabet(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  std::vector<std::string> lines = split_lines(buf.str());
  if (lines.empty() || trim(lines[0]) != kAlphabetMagic)
    throw format_error("alphabet: bad or missing version line");

  std::size_t first_body = 0;
  kv_file headers = parse_hash_headers(lines, first_body);
  const std::string* fp = headers.find("profile_fingerprint");
  const std::string* base = headers.find("block_base");
  const std::string* size = headers.find("block_size");
  const std::string* checksum = headers.find("checksum");
  if (!fp || !base || !size || !checksum) throw format_error("alphabet: missing header field");

  composite_alphabet a;
  a.profile_fingerprint = parse_hex64(*fp);
  a.block_base = static_cast<char32_t>(parse_hex64(*base));
  a.block_size = static_cast<std::uint32_t>(parse_uint(*size, "block_size"));
  for (const std::string& v : headers.find_all("script_range")) {
    std::size_t dots = v.find("..");
    if (dots == std::string::npos) throw format_error("alphabet: malformed script_range");
    a.script_ranges.push_back({static_cast<char32_t>(parse_hex64(trim(std::string_view{v}.substr(0, dots)))),
                               static_cast<char32_t>(parse_hex64(trim(std::string_view{v}.substr(dots + 2))))});
  }

  std::string body;
  for (std::size_t i = first_body; i < lines.size(); ++i) {
    body += lines[i];
    body += '\n';
    std::istringstream row{lines[i]};
    std::string surrogate_s, index_s, letter_s;
    if (!(row >> surrogate_s >> index_s >> letter_s))
      throw format_error("alphabet: malformed row at line " + std::to_string(i + 1));
    char32_t surrogate = static_cast<char32_t>(parse_hex64(surrogate_s));
    char32_t expected = a.block_base + 1 + static_cast<char32_t>(a.composites.size());
    if (surrogate != expected)
      throw format_error("alphabet: surrogate out of sequence at line " + std::to_string(i + 1));
    reduction r;
    r.index = static_cast<std::int32_t>(parse_int(index_s, "index"));
    r.letter = static_cast<char32_t>(parse_hex64(letter_s));
    a.composites.push_back(r);
  }
  if (parse_hex64(*checksum) != fnv1a(body)) throw format_error("alphabet: checksum mismatch");
  if (const std::string* n = headers.find("entries"))
    if (parse_uint(*n, "entries") != a.composites.size())
      throw format_error("alphabet: entry count mismatch");
  a.reindex();
  a.validate();
  return a;
}

composite_alphabet load_alphabet_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  try {
    return load_alphabet(in);
  } catch (const format_error& e) {
    throw format_error(path + ": " + e.what());
  }
}

namespace {

struct path_search {
  const reduction_map& map;
  unsigned breadth;
  unsigned depth;
  double best_score = -1.0;
  reduction best_first{};
  bool found = false;

  // Depth-first in rank order with strict improvement, so among equal
  // scores the path discovered first (the better-ranked one) wins.
  void expand(const std::u32string& word, unsigned level, double score, const reduction& first) {
    if (word.size() <= map.min_core_length || level == depth) {
      leaf(score, first);
      return;
    }
    const std::vector<scored_reduction>* bucket = map.bucket(static_cast<std::uint32_t>(word.size()));
    unsigned taken = 0;
    if (bucket) {
      for (const scored_reduction& sr : *bucket) {
        if (!applicable(sr.red, word)) continue;
        expand(apply_reduction(sr.red, word), level + 1,
               score * map.weight(sr, static_cast<std::uint32_t>(word.size())), first);
        if (++taken == breadth) break;
      }
    }
    // Dead end: no reduction fires here, the path keeps its score.
    if (taken == 0) leaf(score, first);
  }

  void leaf(double score, const reduction& first) {
    if (score > best_score) {
      best_score = score;
      best_first = first;
      found = true;
    }
  }
};

}  // namespace

std::optional<reduction> select_reduction(const std::u32string& word, const reduction_map& map,
                                          unsigned breadth, unsigned depth) {
  if (breadth == 0 || depth == 0)
    throw config_error("selector breadth and depth must be at least 1");
  if (word.size() <= map.min_core_length) return std::nullopt;
  const std::vector<scored_reduction>* bucket = map.bucket(static_cast<std::uint32_t>(word.size()));
  if (!bucket) return std::nullopt;

  path_search search{map, breadth, depth};
  unsigned taken = 0;
  for (const scored_reduction& sr : *bucket) {
    if (!applicable(sr.red, word)) continue;
    search.expand(apply_reduction(sr.red, word), 1,
                  map.weight(sr, static_cast<std::uint32_t>(word.size())), sr.red);
    if (++taken == breadth) break;
  }
  if (!search.found) return std::nullopt;
  return search.best_first;
}

splintered_word encode_word(const std::u32string& word, const reduction_map& map,
                            unsigned breadth, unsigned depth) {
  splintered_word sw;
  std::u32string current{word};
  std::vector<reduction> removed;
  while (current.size() > map.min_core_length) {
    std::optional<reduction> r = select_reduction(current, map, breadth, depth);
    if (!r) break;
    removed.push_back(*r);
    current = apply_reduction(*r, current);
  }
  sw.core = std::move(current);
  sw.reductions.assign(removed.rbegin(), removed.rend());
  return sw;
}

std::u32string decode_word(const splintered_word& sw) {
  std::u32string word = sw.core;
  for (const reduction& r : sw.reductions) word = undo_reduction(r, word);
  return word;
}

std::u32string to_surface(const splintered_word& sw, composite_alphabet& alphabet, bool frozen) {
  std::u32string out = sw.core;
  for (const reduction& r : sw.reductions) {
    if (frozen) {
      std::optional<char32_t> cp = alphabet.surrogate_for(r);
      if (!cp)
        throw unknown_composite_error("no composite for reduction " + std::to_string(r.index) +
                                      ":" + encode_utf8(r.letter));
      out.push_back(*cp);
    } else {
      out.push_back(alphabet.intern(r));
    }
  }
  return out;
}

splintered_word from_surface(std::u32string_view surface, const composite_alphabet& alphabet) {
  splintered_word sw;
  for (char32_t cp : surface) {
    if (alphabet.in_block(cp)) {
      std::optional<reduction> r = alphabet.reduction_for(cp);
      if (!r)
        throw unknown_composite_error("unassigned composite " + codepoint_name(cp));
      sw.reductions.push_back(*r);
    } else if (alphabet.in_script(cp)) {
      sw.core.push_back(cp);
    } else {
      throw mixed_script_error("foreign codepoint " + codepoint_name(cp) + " in surface form");
    }
  }
  return sw;
}

namespace {

const final_letter_exceptions& no_exceptions() {
  static const final_letter_exceptions empty;
  return empty;
}

}  // namespace

std::string splinter_text(std::string_view text, const reduction_map& map,
                          composite_alphabet& alphabet, const language_profile& profile,
                          const splinter_options& options) {
  const final_letter_exceptions& exceptions =
      options.exceptions ? *options.exceptions : no_exceptions();
  splinter_stats local_stats;
  splinter_stats& stats = options.stats ? *options.stats : local_stats;

  std::string out;
  out.reserve(text.size() + text.size() / 4);
  std::size_t copied = 0;
  for (const word_span& span : split_words(text, profile)) {
    out.append(text.substr(copied, span.begin - copied));
    copied = span.end;
    ++stats.words_total;

    bool has_block = false;
    bool all_script = true;
    for (char32_t cp : span.word) {
      if (alphabet.in_block(cp)) has_block = true;
      if (!profile.in_script(cp)) all_script = false;
    }

    if (has_block) {
      // The word collides with the composite block; hide it behind the
      // marker so the inverse pass cannot misread it.
      ++stats.words_marked;
      append_utf8(out, alphabet.marker());
      out.append(text.substr(span.begin, span.end - span.begin));
      continue;
    }
    if (!all_script) {
      out.append(text.substr(span.begin, span.end - span.begin));
      continue;
    }

    ++stats.words_in_script;
    std::u32string norm = normalize_final_letters(span.word, profile);
    if (denormalize_final_letters(norm, profile, exceptions) != span.word) {
      // Final letter handling would not restore this spelling; emit it
      // verbatim rather than lose it.
      ++stats.words_marked;
      append_utf8(out, alphabet.marker());
      out.append(text.substr(span.begin, span.end - span.begin));
      continue;
    }

    splintered_word sw = encode_word(norm, map, options.breadth, options.depth);
    if (!sw.reductions.empty()) ++stats.words_splintered;
    if (sw.core.size() > map.min_core_length && norm.size() > map.min_core_length)
      ++stats.early_stops;
    stats.reductions_removed += sw.reductions.size();
    out += encode_utf8(to_surface(sw, alphabet, options.frozen));
  }
  out.append(text.substr(copied));
  return out;
}

std::string unsplinter_text(std::string_view text, const composite_alphabet& alphabet,
                            const language_profile& profile,
                            const final_letter_exceptions* exceptions) {
  const final_letter_exceptions& exc = exceptions ? *exceptions : no_exceptions();

  std::string out;
  out.reserve(text.size());
  std::size_t copied = 0;
  for (const word_span& span : split_words(text, profile)) {
    out.append(text.substr(copied, span.begin - copied));
    copied = span.end;

    if (!span.word.empty() && span.word[0] == alphabet.marker()) {
      out += encode_utf8(std::u32string_view{span.word}.substr(1));
      continue;
    }
    bool has_block = false;
    bool all_script = true;
    for (char32_t cp : span.word) {
      if (alphabet.in_block(cp)) has_block = true;
      if (!alphabet.in_script(cp)) all_script = false;
    }
    if (!has_block && !all_script) {
      out.append(text.substr(span.begin, span.end - span.begin));
      continue;
    }
    splintered_word sw = from_surface(span.word, alphabet);
    out += encode_utf8(denormalize_final_letters(decode_word(sw), profile, exc));
  }
  out.append(text.substr(copied));
  return out;
}

}  // namespace splinter
