#include "splinter/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <thread>

#include "splinter/errors.hpp"
#include "splinter/kv.hpp"
#include "splinter/unicode.hpp"

namespace splinter {

std::vector<word_span> split_words(std::string_view text, std::u32string_view delimiters) {
  std::vector<word_span> spans;
  std::u32string current;
  std::size_t word_begin = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t cp_begin = i;
    char32_t cp = decode_codepoint(text, i);
    bool is_delim = is_ascii_space(cp) || delimiters.find(cp) != std::u32string_view::npos;
    if (is_delim) {
      if (!current.empty()) {
        spans.push_back({std::move(current), word_begin, cp_begin});
        current.clear();
      }
    } else {
      if (current.empty()) word_begin = cp_begin;
      current.push_back(cp);
    }
  }
  if (!current.empty()) spans.push_back({std::move(current), word_begin, text.size()});
  return spans;
}

std::vector<word_span> split_words(std::string_view text, const language_profile& profile) {
  return split_words(text, profile.extra_delimiters);
}

std::string normalize_text(std::string_view raw, const language_profile& profile) {
  std::string out;
  out.reserve(raw.size());
  std::size_t i = 0;
  while (i < raw.size()) {
    std::size_t begin = i;
    char32_t cp = decode_codepoint(raw, i);
    if (!profile.is_diacritic(cp)) out.append(raw.substr(begin, i - begin));
  }
  return out;
}

std::u32string normalize_final_letters(std::u32string_view word,
                                       const language_profile& profile) {
  std::u32string out{word};
  for (char32_t& cp : out) {
    char32_t base = profile.base_for_final(cp);
    if (base != 0) cp = base;
  }
  return out;
}

std::u32string denormalize_final_letters(std::u32string_view word,
                                         const language_profile& profile,
                                         const final_letter_exceptions& exceptions) {
  std::u32string out{word};
  if (out.empty()) return out;
  if (exceptions.count(out) != 0) return out;
  char32_t fin = profile.final_for_base(out.back());
  if (fin != 0) out.back() = fin;
  return out;
}

void word_frequency_table::validate() const {
  std::size_t indexed = 0;
  for (const auto& [length, words] : by_length) {
    if (words.empty()) throw format_error("frequency table: empty length bucket");
    if (!std::is_sorted(words.begin(), words.end()))
      throw format_error("frequency table: length bucket not sorted");
    for (const std::u32string& w : words) {
      if (w.size() != length) throw format_error("frequency table: word in wrong bucket");
      auto it = entries.find(w);
      if (it == entries.end()) throw format_error("frequency table: indexed word missing");
      if (it->second < min_word_frequency)
        throw format_error("frequency table: count below threshold");
      ++indexed;
    }
  }
  if (indexed != entries.size()) throw format_error("frequency table: index out of sync");
}

word_frequency_table build_frequency_table(
    const std::unordered_map<std::u32string, std::uint64_t>& raw_counts,
    const language_profile& profile) {
  word_frequency_table table;
  table.profile_fingerprint = profile.fingerprint();
  table.min_word_frequency = profile.min_word_frequency;
  for (const auto& [word, count] : raw_counts) {
    if (count < profile.min_word_frequency) continue;
    if (word.empty()) throw config_error("frequency table: empty word");
    for (char32_t cp : word)
      if (!profile.in_script(cp))
        throw config_error("frequency table: word contains non-script codepoint " +
                           codepoint_name(cp));
    table.entries.emplace(word, count);
    table.by_length[static_cast<std::uint32_t>(word.size())].push_back(word);
  }
  if (table.entries.empty())
    throw empty_table_error("no words meet the frequency threshold of " +
                            std::to_string(profile.min_word_frequency));
  for (auto& [length, words] : table.by_length) std::sort(words.begin(), words.end());
  table.validate();
  return table;
}

word_frequency_table build_frequency_table(const std::vector<std::u32string>& occurrences,
                                           const language_profile& profile) {
  std::unordered_map<std::u32string, std::uint64_t> counts;
  for (const std::u32string& w : occurrences) ++counts[w];
  return build_frequency_table(counts, profile);
}

namespace {

struct ingest_shard {
  std::unordered_map<std::u32string, std::uint64_t> counts;
  // word -> (occurrences ending in a base letter, occurrences ending in a
  // final form)
  std::unordered_map<std::u32string, std::pair<std::uint64_t, std::uint64_t>> votes;
  std::uint64_t total_words = 0;
};

void ingest_into(ingest_shard& shard, const std::vector<std::string>& lines, std::size_t begin,
                 std::size_t end, const language_profile& profile) {
  for (std::size_t li = begin; li < end; ++li) {
    std::string stripped = normalize_text(lines[li], profile);
    for (word_span& span : split_words(stripped, profile)) {
      bool in_script = true;
      for (char32_t cp : span.word)
        if (!profile.in_script(cp)) {
          in_script = false;
          break;
        }
      if (!in_script) continue;
      ++shard.total_words;
      char32_t last = span.word.back();
      std::u32string norm = normalize_final_letters(span.word, profile);
      if (profile.final_for_base(last) != 0)
        ++shard.votes[norm].first;
      else if (profile.base_for_final(last) != 0)
        ++shard.votes[norm].second;
      ++shard.counts[std::move(norm)];
    }
  }
}

}  // namespace

ingest_result ingest_lines(const std::vector<std::string>& lines,
                           const language_profile& profile, unsigned threads) {
  profile.validate();
  if (threads == 0) threads = 1;
  std::size_t shard_count = std::min<std::size_t>(threads, std::max<std::size_t>(lines.size(), 1));

  std::vector<ingest_shard> shards(shard_count);
  if (shard_count <= 1) {
    ingest_into(shards[0], lines, 0, lines.size(), profile);
  } else {
    std::vector<std::thread> workers;
    std::size_t chunk = (lines.size() + shard_count - 1) / shard_count;
    for (std::size_t s = 0; s < shard_count; ++s) {
      std::size_t begin = s * chunk;
      std::size_t end = std::min(lines.size(), begin + chunk);
      workers.emplace_back([&, s, begin, end] { ingest_into(shards[s], lines, begin, end, profile); });
    }
    for (std::thread& w : workers) w.join();
  }

  ingest_shard merged = std::move(shards[0]);
  for (std::size_t s = 1; s < shards.size(); ++s) {
    merged.total_words += shards[s].total_words;
    for (auto& [word, count] : shards[s].counts) merged.counts[word] += count;
    for (auto& [word, v] : shards[s].votes) {
      auto& acc = merged.votes[word];
      acc.first += v.first;
      acc.second += v.second;
    }
  }

  ingest_result result;
  result.total_words = merged.total_words;
  result.distinct_raw = merged.counts.size();
  result.table = build_frequency_table(merged.counts, profile);
  for (const auto& [word, v] : merged.votes)
    if (v.first > v.second) result.exceptions.insert(word);
  return result;
}

namespace {

constexpr std::string_view kFreqMagic = "# splinter-freq v1";
constexpr std::string_view kExceptionsMagic = "# splinter-exceptions v1";

std::string table_body(const word_frequency_table& table) {
  std::vector<std::pair<std::u32string, std::uint64_t>> rows(table.entries.begin(),
                                                             table.entries.end());
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::string body;
  for (const auto& [word, count] : rows) {
    body += encode_utf8(word);
    body += '\t';
    body += std::to_string(count);
    body += '\n';
  }
  return body;
}

}  // namespace

void save_frequency_table(const word_frequency_table& table, std::ostream& out) {
  std::string body = table_body(table);
  out << kFreqMagic << '\n';
  out << "# profile_fingerprint = " << hex64(table.profile_fingerprint) << '\n';
  out << "# min_word_frequency = " << table.min_word_frequency << '\n';
  out << "# entries = " << table.entries.size() << '\n';
  out << "# checksum = " << hex64(fnv1a(body)) << '\n';
  out << body;
}

void save_frequency_table(const word_frequency_table& table, const std::string& path) {
  std::ostringstream ss;
  save_frequency_table(table, ss);
  write_file(path, ss.str());
}

word_frequency_table load_frequency_table(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  std::vector<std::string> lines = split_lines(text);
  if (lines.empty() || trim(lines[0]) != kFreqMagic)
    throw format_error("frequency table: bad or missing version line");

  std::size_t first_body = 0;
  kv_file headers = parse_hash_headers(lines, first_body);
  const std::string* fp = headers.find("profile_fingerprint");
  const std::string* minf = headers.find("min_word_frequency");
  const std::string* checksum = headers.find("checksum");
  if (!fp || !minf || !checksum) throw format_error("frequency table: missing header field");

  word_frequency_table table;
  table.profile_fingerprint = parse_hex64(*fp);
  table.min_word_frequency = static_cast<std::uint32_t>(parse_uint(*minf, "min_word_frequency"));

  std::string body;
  for (std::size_t i = first_body; i < lines.size(); ++i) {
    body += lines[i];
    body += '\n';
    std::string_view line = lines[i];
    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0)
      throw format_error("frequency table: malformed row at line " + std::to_string(i + 1));
    std::u32string word = decode_utf8(line.substr(0, tab));
    std::uint64_t count = parse_uint(line.substr(tab + 1), "count");
    if (!table.entries.emplace(word, count).second)
      throw format_error("frequency table: duplicate word at line " + std::to_string(i + 1));
    table.by_length[static_cast<std::uint32_t>(word.size())].push_back(std::move(word));
  }
  if (parse_hex64(*checksum) != fnv1a(body))
    throw format_error("frequency table: checksum mismatch");
  if (const std::string* n = headers.find("entries"))
    if (parse_uint(*n, "entries") != table.entries.size())
      throw format_error("frequency table: entry count mismatch");
  if (table.entries.empty()) throw empty_table_error("frequency table: no entries");
  for (auto& [length, words] : table.by_length) std::sort(words.begin(), words.end());
  table.validate();
  return table;
}

word_frequency_table load_frequency_table_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  try {
    return load_frequency_table(in);
  } catch (const format_error& e) {
    throw format_error(path + ": " + e.what());
  }
}

void save_exceptions(const final_letter_exceptions& exceptions, const std::string& path) {
  std::vector<std::u32string> sorted(exceptions.begin(), exceptions.end());
  std::sort(sorted.begin(), sorted.end());
  std::string body;
  for (const std::u32string& w : sorted) {
    body += encode_utf8(w);
    body += '\n';
  }
  std::string out{kExceptionsMagic};
  out += "\n# entries = " + std::to_string(sorted.size());
  out += "\n# checksum = " + hex64(fnv1a(body)) + "\n";
  out += body;
  write_file(path, out);
}

final_letter_exceptions load_exceptions(const std::string& path) {
  std::vector<std::string> lines = split_lines(read_file(path));
  if (lines.empty() || trim(lines[0]) != kExceptionsMagic)
    throw format_error(path + ": bad or missing version line");
  std::size_t first_body = 0;
  kv_file headers = parse_hash_headers(lines, first_body);
  const std::string* checksum = headers.find("checksum");
  if (!checksum) throw format_error(path + ": missing checksum");
  std::string body;
  final_letter_exceptions out;
  for (std::size_t i = first_body; i < lines.size(); ++i) {
    body += lines[i];
    body += '\n';
    out.insert(decode_utf8(lines[i]));
  }
  if (parse_hex64(*checksum) != fnv1a(body)) throw format_error(path + ": checksum mismatch");
  return out;
}

}  // namespace splinter
