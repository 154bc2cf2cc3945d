#include "splinter/reduction.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "splinter/errors.hpp"
#include "splinter/kv.hpp"
#include "splinter/unicode.hpp"

namespace splinter {

std::int32_t canonical_index(std::size_t pos, std::size_t length, bool signed_indices) {
  if (!signed_indices) return static_cast<std::int32_t>(pos);
  // Front half (including the midpoint of odd lengths) stays absolute, the
  // back half counts from the end.
  if (pos < (length + 1) / 2) return static_cast<std::int32_t>(pos);
  return static_cast<std::int32_t>(pos) - static_cast<std::int32_t>(length);
}

std::optional<std::size_t> resolve_index(std::int32_t index, std::size_t length) {
  if (index >= 0) {
    std::size_t p = static_cast<std::size_t>(index);
    if (p < length) return p;
    return std::nullopt;
  }
  std::int64_t p = static_cast<std::int64_t>(length) + index;
  if (p < 0) return std::nullopt;
  return static_cast<std::size_t>(p);
}

bool applicable(const reduction& r, const std::u32string& word) {
  std::optional<std::size_t> p = resolve_index(r.index, word.size());
  return p && word[*p] == r.letter;
}

std::u32string apply_reduction(const reduction& r, const std::u32string& word) {
  std::optional<std::size_t> p = resolve_index(r.index, word.size());
  std::u32string out{word};
  out.erase(*p, 1);
  return out;
}

namespace {

std::int64_t insertion_position(const reduction& r, std::size_t m) {
  // Inserting into a word of length m yields length m + 1, so a negative
  // index is relative to the grown word.
  return r.index >= 0 ? r.index : static_cast<std::int64_t>(m) + 1 + r.index;
}

}  // namespace

std::u32string undo_reduction(const reduction& r, const std::u32string& word) {
  std::int64_t p = insertion_position(r, word.size());
  if (p < 0 || p > static_cast<std::int64_t>(word.size()))
    throw range_error("cannot insert " + encode_utf8(r.letter) + " at index " +
                      std::to_string(r.index) + " into a word of length " +
                      std::to_string(word.size()));
  std::u32string out{word};
  out.insert(static_cast<std::size_t>(p), 1, r.letter);
  return out;
}

std::u32string undo_reduction_clamped(const reduction& r, const std::u32string& word) {
  std::int64_t p = insertion_position(r, word.size());
  p = std::clamp<std::int64_t>(p, 0, static_cast<std::int64_t>(word.size()));
  std::u32string out{word};
  out.insert(static_cast<std::size_t>(p), 1, r.letter);
  return out;
}

bool rank_less(const scored_reduction& a, const scored_reduction& b, std::size_t length) {
  if (a.score != b.score) return a.score > b.score;
  std::size_t pa = resolve_index(a.red.index, length).value_or(length);
  std::size_t pb = resolve_index(b.red.index, length).value_or(length);
  if (pa != pb) return pa < pb;
  return a.red.letter < b.red.letter;
}

double reduction_map::weight(const scored_reduction& sr, std::uint32_t length) const {
  auto it = score_sums.find(length);
  if (it == score_sums.end() || it->second == 0) return 0.0;
  return static_cast<double>(sr.score) / static_cast<double>(it->second);
}

void reduction_map::rebuild_sums() {
  score_sums.clear();
  for (const auto& [length, bucket] : per_length) {
    std::uint64_t sum = 0;
    for (const scored_reduction& sr : bucket) sum += sr.score;
    score_sums[length] = sum;
  }
}

void reduction_map::validate() const {
  if (per_length.empty()) throw empty_map_error("reduction map has no entries");
  for (const auto& [length, bucket] : per_length) {
    if (length < min_core_length + 1)
      throw format_error("reduction map: bucket below min_core_length + 1");
    if (bucket.empty()) throw format_error("reduction map: empty length bucket");
    std::uint64_t sum = 0;
    for (std::size_t i = 0; i < bucket.size(); ++i) {
      const scored_reduction& sr = bucket[i];
      if (sr.score == 0) throw format_error("reduction map: zero score");
      std::optional<std::size_t> p = resolve_index(sr.red.index, length);
      if (!p) throw format_error("reduction map: index out of range for its length");
      if (canonical_index(*p, length, signed_indices) != sr.red.index)
        throw format_error("reduction map: non-canonical index");
      if (i > 0 && rank_less(sr, bucket[i - 1], length))
        throw format_error("reduction map: bucket not in rank order");
      if (i > 0 && !rank_less(bucket[i - 1], sr, length))
        throw format_error("reduction map: duplicate rank entry");
      sum += sr.score;
    }
    auto it = score_sums.find(length);
    if (it == score_sums.end() || it->second != sum)
      throw format_error("reduction map: score sum out of sync");
  }
  if (score_sums.size() != per_length.size())
    throw format_error("reduction map: score sum out of sync");
}

std::vector<scored_reduction> enumerate_valid_reductions(const std::u32string& word,
                                                         const word_frequency_table& table,
                                                         bool signed_indices) {
  std::vector<scored_reduction> out;
  const std::size_t n = word.size();
  for (std::size_t p = 0; p < n; ++p) {
    std::u32string shorter{word};
    shorter.erase(p, 1);
    std::uint64_t f = table.freq(shorter);
    if (f == 0) continue;
    out.push_back({{canonical_index(p, n, signed_indices), word[p]}, f});
  }
  std::sort(out.begin(), out.end(),
            [n](const scored_reduction& a, const scored_reduction& b) { return rank_less(a, b, n); });
  return out;
}

namespace {

using reduction_acc = std::map<reduction, std::uint64_t>;

std::vector<scored_reduction> ranked(const reduction_acc& acc, std::size_t length) {
  std::vector<scored_reduction> out;
  out.reserve(acc.size());
  for (const auto& [red, score] : acc) out.push_back({red, score});
  std::sort(out.begin(), out.end(), [length](const scored_reduction& a, const scored_reduction& b) {
    return rank_less(a, b, length);
  });
  return out;
}

std::vector<scored_reduction> train_length(std::uint32_t length,
                                           const std::vector<std::u32string>& words,
                                           const word_frequency_table& table,
                                           bool signed_indices) {
  // Pass 1: every valid deletion votes with the resulting word's frequency.
  reduction_acc candidates;
  for (const std::u32string& word : words) {
    for (std::size_t p = 0; p < word.size(); ++p) {
      std::u32string shorter{word};
      shorter.erase(p, 1);
      std::uint64_t f = table.freq(shorter);
      if (f == 0) continue;
      candidates[{canonical_index(p, length, signed_indices), word[p]}] += f;
    }
  }
  if (candidates.empty()) return {};
  std::vector<scored_reduction> order = ranked(candidates, length);

  // Pass 2: each word credits the best-ranked candidate that fires on it
  // and lands on an in-table word.
  reduction_acc selected;
  for (const std::u32string& word : words) {
    for (const scored_reduction& sr : order) {
      if (!applicable(sr.red, word)) continue;
      std::uint64_t f = table.freq(apply_reduction(sr.red, word));
      if (f == 0) continue;
      selected[sr.red] += f;
      break;
    }
  }
  return ranked(selected, length);
}

}  // namespace

reduction_map train_reduction_map(const word_frequency_table& table,
                                  const train_options& options) {
  table.validate();
  reduction_map map;
  map.signed_indices = options.signed_indices;
  map.min_core_length = options.min_core_length;
  map.language = options.language;
  map.profile_fingerprint = table.profile_fingerprint;

  std::vector<std::uint32_t> lengths;
  for (const auto& [length, words] : table.by_length)
    if (length >= options.min_core_length + 1) lengths.push_back(length);

  std::vector<std::vector<scored_reduction>> buckets(lengths.size());
  unsigned threads = std::max(1u, options.threads);
  if (threads <= 1 || lengths.size() <= 1) {
    for (std::size_t i = 0; i < lengths.size(); ++i)
      buckets[i] = train_length(lengths[i], table.by_length.at(lengths[i]), table,
                                options.signed_indices);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next.fetch_add(1); i < lengths.size(); i = next.fetch_add(1))
        buckets[i] = train_length(lengths[i], table.by_length.at(lengths[i]), table,
                                  options.signed_indices);
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(threads, lengths.size()); ++t)
      pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  for (std::size_t i = 0; i < lengths.size(); ++i)
    if (!buckets[i].empty()) map.per_length.emplace(lengths[i], std::move(buckets[i]));

  if (map.per_length.empty())
    throw empty_map_error("training selected no reductions; corpus has no single-letter overlaps");
  map.rebuild_sums();
  map.validate();
  return map;
}

namespace {

constexpr std::string_view kMapMagic = "# splinter-map v1";

std::string map_body(const reduction_map& map) {
  std::string body;
  for (const auto& [length, bucket] : map.per_length) {
    for (const scored_reduction& sr : bucket) {
      body += std::to_string(length);
      body += '\t';
      body += std::to_string(sr.red.index);
      body += '\t';
      body += hex64(sr.red.letter).substr(12);
      body += '\t';
      body += std::to_string(sr.score);
      body += '\n';
    }
  }
  return body;
}

}  // namespace

void save_reduction_map(const reduction_map& map, std::ostream& out) {
  std::string body = map_body(map);
  std::size_t entries = 0;
  for (const auto& [length, bucket] : map.per_length) entries += bucket.size();
  out << kMapMagic << '\n';
  out << "# language = " << map.language << '\n';
  out << "# profile_fingerprint = " << hex64(map.profile_fingerprint) << '\n';
  out << "# signed_indices = " << (map.signed_indices ? "true" : "false") << '\n';
  out << "# min_core_length = " << map.min_core_length << '\n';
  out << "# lengths = " << map.per_length.size() << '\n';
  out << "# entries = " << entries << '\n';
  out << "# checksum = " << hex64(fnv1a(body)) << '\n';
  out << body;
}

void save_reduction_map(const reduction_map& map, const std::string& path) {
  std::ostringstream ss;
  save_reduction_map(map, ss);
  write_file(path, ss.str());
}

reduction_map load_reduction_map(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  std::vector<std::string> lines = split_lines(buf.str());
  if (lines.empty() || trim(lines[0]) != kMapMagic)
    throw format_error("reduction map: bad or missing version line");

  std::size_t first_body = lines.size();
  kv_file headers = parse_hash_headers(lines, first_body);

  const std::string* fp = headers.find("profile_fingerprint");
  const std::string* signed_idx = headers.find("signed_indices");
  const std::string* checksum = headers.find("checksum");
  if (!fp || !signed_idx || !checksum) throw format_error("reduction map: missing header field");

  reduction_map map;
  map.language = headers.get_or("language", "");
  map.profile_fingerprint = parse_hex64(*fp);
  map.signed_indices = parse_bool(*signed_idx, "signed_indices");
  map.min_core_length =
      static_cast<std::uint32_t>(parse_uint(headers.get_or("min_core_length", "3"), "min_core_length"));

  std::string body;
  std::size_t entries = 0;
  for (std::size_t i = first_body; i < lines.size(); ++i) {
    body += lines[i];
    body += '\n';
    std::istringstream row{lines[i]};
    std::string length_s, index_s, letter_s, score_s;
    if (!(row >> length_s >> index_s >> letter_s >> score_s))
      throw format_error("reduction map: malformed row at line " + std::to_string(i + 1));
    std::uint32_t length = static_cast<std::uint32_t>(parse_uint(length_s, "length"));
    scored_reduction sr;
    sr.red.index = static_cast<std::int32_t>(parse_int(index_s, "index"));
    sr.red.letter = static_cast<char32_t>(parse_hex64(letter_s));
    sr.score = parse_uint(score_s, "score");
    map.per_length[length].push_back(sr);
    ++entries;
  }
  if (parse_hex64(*checksum) != fnv1a(body)) throw format_error("reduction map: checksum mismatch");
  if (const std::string* n = headers.find("entries"))
    if (parse_uint(*n, "entries") != entries) throw format_error("reduction map: entry count mismatch");
  if (map.per_length.empty()) throw empty_map_error("reduction map: no entries");
  map.rebuild_sums();
  map.validate();
  return map;
}

reduction_map load_reduction_map_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  try {
    return load_reduction_map(in);
  } catch (const format_error& e) {
    throw format_error(path + ": " + e.what());
  }
}

}  // namespace splinter
