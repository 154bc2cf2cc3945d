#include "splinter/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "splinter/errors.hpp"
#include "splinter/kv.hpp"
#include "splinter/unicode.hpp"

namespace splinter {

void token_distribution::add(std::string_view token_text, std::uint64_t n) {
  counts[std::string{token_text}] += n;
  total += n;
}

token_distribution distribution_from(const std::vector<tokenized_line>& lines) {
  token_distribution dist;
  for (const tokenized_line& line : lines)
    for (const std::vector<std::string>& word : line.words)
      for (const std::string& t : word) dist.add(t);
  return dist;
}

renyi_result renyi_efficiency(const token_distribution& dist, double alpha) {
  if (alpha <= 0.0) throw config_error("renyi alpha must be positive");
  if (dist.total == 0 || dist.counts.empty())
    throw empty_corpus_error("renyi efficiency: empty token distribution");

  renyi_result result;
  const double total = static_cast<double>(dist.total);
  if (std::abs(alpha - 1.0) < 1e-12) {
    double h = 0.0;
    for (const auto& [text, count] : dist.counts) {
      double p = static_cast<double>(count) / total;
      h -= p * std::log(p);
    }
    result.entropy = h;
  } else {
    double sum = 0.0;
    for (const auto& [text, count] : dist.counts)
      sum += std::pow(static_cast<double>(count) / total, alpha);
    result.entropy = std::log(sum) / (1.0 - alpha);
  }

  std::size_t types = dist.counts.size();
  if (types < 2) {
    result.degenerate = true;
    result.efficiency = 0.0;
  } else {
    result.efficiency = result.entropy / std::log(static_cast<double>(types));
  }
  return result;
}

fertility_stats_t fertility_stats(const std::vector<tokenized_line>& lines) {
  fertility_stats_t stats;
  std::uint64_t words_4plus = 0;
  std::uint64_t single_cp = 0;
  for (const tokenized_line& line : lines) {
    for (const std::vector<std::string>& word : line.words) {
      ++stats.words;
      stats.tokens += word.size();
      if (word.size() >= 4) ++words_4plus;
      for (const std::string& t : word) {
        std::size_t pos = 0;
        if (!t.empty()) {
          decode_codepoint(t, pos);
          if (pos == t.size()) ++single_cp;
        }
      }
    }
  }
  if (stats.words == 0) throw empty_corpus_error("fertility: no words");
  stats.tokens_per_word = static_cast<double>(stats.tokens) / static_cast<double>(stats.words);
  stats.pct_words_4plus_tokens =
      100.0 * static_cast<double>(words_4plus) / static_cast<double>(stats.words);
  stats.pct_single_codepoint_tokens =
      stats.tokens == 0 ? 0.0
                        : 100.0 * static_cast<double>(single_cp) / static_cast<double>(stats.tokens);
  return stats;
}

neighbor_stats_t distinct_neighbors(const std::vector<tokenized_line>& lines, unsigned window,
                                    std::size_t top_n,
                                    std::optional<std::uint64_t> denominator) {
  if (window == 0) throw config_error("neighbor window must be at least 1");
  std::map<std::string, std::set<std::string>> neighbors;
  std::vector<const std::string*> stream;
  for (const tokenized_line& line : lines) {
    stream.clear();
    for (const std::vector<std::string>& word : line.words)
      for (const std::string& t : word) stream.push_back(&t);
    for (std::size_t i = 0; i < stream.size(); ++i) {
      std::set<std::string>& mine = neighbors[*stream[i]];
      std::size_t lo = i >= window ? i - window : 0;
      std::size_t hi = std::min(stream.size(), i + window + 1);
      for (std::size_t j = lo; j < hi; ++j)
        if (j != i) mine.insert(*stream[j]);
    }
  }
  if (neighbors.empty()) throw empty_corpus_error("distinct neighbors: no tokens");

  neighbor_stats_t stats;
  stats.types = neighbors.size();
  std::uint64_t sum = 0;
  std::vector<std::pair<std::string, std::uint32_t>> rows;
  rows.reserve(neighbors.size());
  for (const auto& [text, set] : neighbors) {
    sum += set.size();
    rows.emplace_back(text, static_cast<std::uint32_t>(set.size()));
  }
  std::uint64_t denom = denominator.value_or(stats.types);
  if (denom == 0) throw config_error("distinct neighbors: zero denominator");
  stats.average = static_cast<double>(sum) / static_cast<double>(denom);

  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (rows.size() > top_n) rows.resize(top_n);
  stats.top = std::move(rows);
  return stats;
}

namespace {

std::vector<std::string> split_csv_row(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      cells.emplace_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  return cells;
}

}  // namespace

std::vector<lexical_decision_record> parse_lexical_csv(std::string_view text) {
  std::vector<std::string> lines = split_lines(text);
  if (lines.empty()) throw format_error("lexical csv: empty file");
  std::vector<std::string> header = split_csv_row(lines[0]);
  if (header.size() != 4 || header[0] != "stimulus" || header[1] != "lexicality" ||
      header[2] != "accuracy" || header[3] != "rt")
    throw format_error("lexical csv: expected header stimulus,lexicality,accuracy,rt");

  std::vector<lexical_decision_record> records;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    std::vector<std::string> cells = split_csv_row(lines[i]);
    if (cells.size() != 4)
      throw format_error("lexical csv: wrong column count at line " + std::to_string(i + 1));
    lexical_decision_record rec;
    rec.stimulus = cells[0];
    if (rec.stimulus.empty())
      throw format_error("lexical csv: empty stimulus at line " + std::to_string(i + 1));
    if (cells[1] == "word")
      rec.is_word = true;
    else if (cells[1] == "nonword")
      rec.is_word = false;
    else
      throw format_error("lexical csv: lexicality must be word or nonword at line " +
                         std::to_string(i + 1));
    try {
      rec.accuracy = parse_double(cells[2], "accuracy");
      rec.response_time = parse_double(cells[3], "rt");
    } catch (const config_error& e) {
      throw format_error("lexical csv: " + std::string{e.what()} + " at line " +
                         std::to_string(i + 1));
    }
    if (rec.accuracy < 0.0 || rec.accuracy > 1.0)
      throw format_error("lexical csv: accuracy outside [0,1] at line " + std::to_string(i + 1));
    if (!(rec.response_time > 0.0))
      throw format_error("lexical csv: rt must be positive at line " + std::to_string(i + 1));
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<lexical_decision_record> load_lexical_csv(const std::string& path) {
  try {
    return parse_lexical_csv(read_file(path));
  } catch (const format_error& e) {
    throw format_error(path + ": " + e.what());
  }
}

namespace {

// Pearson r; sets zero_variance (and returns 0) when either side is
// constant.
double pearson(const std::vector<double>& xs, const std::vector<double>& ys,
               bool& zero_variance) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    syy += ys[i] * ys[i];
    sxy += xs[i] * ys[i];
  }
  double var_x = n * sxx - sx * sx;
  double var_y = n * syy - sy * sy;
  if (var_x <= 0.0 || var_y <= 0.0) {
    zero_variance = true;
    return 0.0;
  }
  zero_variance = false;
  return (n * sxy - sx * sy) / std::sqrt(var_x * var_y);
}

}  // namespace

plausibility_result cognitive_plausibility(
    const std::vector<lexical_decision_record>& records,
    const std::function<double(const std::string&)>& predictor) {
  std::array<std::vector<double>, 4> xs, ys;
  for (const lexical_decision_record& rec : records) {
    double x = predictor(rec.stimulus);
    std::size_t acc_setup = rec.is_word ? kWordAccuracy : kNonwordAccuracy;
    std::size_t rt_setup = rec.is_word ? kWordResponseTime : kNonwordResponseTime;
    xs[acc_setup].push_back(x);
    ys[acc_setup].push_back(rec.accuracy);
    xs[rt_setup].push_back(x);
    ys[rt_setup].push_back(rec.response_time);
  }
  plausibility_result result;
  double sum = 0.0;
  for (std::size_t s = 0; s < 4; ++s) {
    if (xs[s].size() < 3)
      throw insufficient_data_error("cognitive plausibility: setup " + std::to_string(s) +
                                    " has " + std::to_string(xs[s].size()) +
                                    " records, need at least 3");
    bool zero = false;
    result.correlations[s] = pearson(xs[s], ys[s], zero);
    result.zero_variance[s] = zero;
    sum += std::abs(result.correlations[s]);
  }
  result.score = sum / 4.0;
  return result;
}

std::string linearize_token(std::string_view token_text, const composite_alphabet& alphabet) {
  std::u32string cps = decode_utf8(token_text);
  std::u32string core;
  std::vector<reduction> reductions;
  for (char32_t cp : cps) {
    std::optional<reduction> r =
        alphabet.in_block(cp) ? alphabet.reduction_for(cp) : std::nullopt;
    if (r)
      reductions.push_back(*r);
    else
      // Unassigned block codepoints (the verbatim marker, passthrough
      // private-block text) stay literal; only real composites linearize.
      core.push_back(cp);
  }
  std::u32string word = core;
  for (const reduction& r : reductions) word = undo_reduction_clamped(r, word);
  return encode_utf8(word);
}

double vocab_intersection(const tokenizer_model& vanilla, const tokenizer_model& splintered,
                          const composite_alphabet& alphabet) {
  if (splintered.vocab.empty()) throw empty_corpus_error("vocab intersection: empty vocabulary");
  std::uint64_t hits = 0;
  for (const std::string& text : splintered.vocab)
    if (vanilla.id_of(linearize_token(text, alphabet)) >= 0) ++hits;
  return 100.0 * static_cast<double>(hits) / static_cast<double>(splintered.vocab.size());
}

}  // namespace splinter
