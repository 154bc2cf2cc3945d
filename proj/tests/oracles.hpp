#pragma once

// Reference implementations used as test oracles. Each one is written
// directly from the documented behavior, favoring the most literal
// (and slow) formulation over sharing code with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "splinter/bpe.hpp"
#include "splinter/corpus.hpp"
#include "splinter/errors.hpp"
#include "splinter/metrics.hpp"
#include "splinter/reduction.hpp"
#include "splinter/unicode.hpp"

namespace oracles {

using namespace splinter;

inline std::size_t o_resolve(std::int32_t index, std::size_t length) {
  long long pos = index >= 0 ? index : static_cast<long long>(length) + index;
  return static_cast<std::size_t>(pos);
}

inline bool o_applicable(const reduction& r, const std::u32string& word) {
  long long pos = r.index >= 0 ? r.index : static_cast<long long>(word.size()) + r.index;
  return pos >= 0 && pos < static_cast<long long>(word.size()) &&
         word[static_cast<std::size_t>(pos)] == r.letter;
}

inline std::u32string o_delete(const std::u32string& word, std::size_t pos) {
  std::u32string out = word;
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(pos));
  return out;
}

// Rank comparator: higher score, then smaller resolved position, then
// smaller letter.
struct o_rank {
  std::size_t length;
  bool operator()(const scored_reduction& a, const scored_reduction& b) const {
    if (a.score != b.score) return a.score > b.score;
    std::size_t pa = o_resolve(a.red.index, length);
    std::size_t pb = o_resolve(b.red.index, length);
    if (pa != pb) return pa < pb;
    return a.red.letter < b.red.letter;
  }
};

// Two-pass map training, written as one flat function over a global
// candidate table.
inline reduction_map oracle_train_map(const word_frequency_table& table,
                                      const train_options& opt) {
  std::map<std::pair<std::uint32_t, reduction>, std::uint64_t> pass1;
  for (const auto& [length, words] : table.by_length) {
    if (length <= opt.min_core_length) continue;
    for (const std::u32string& word : words) {
      for (std::size_t pos = 0; pos < word.size(); ++pos) {
        std::u32string result = o_delete(word, pos);
        if (!table.contains(result)) continue;
        reduction r{canonical_index(pos, word.size(), opt.signed_indices), word[pos]};
        pass1[{length, r}] += table.freq(result);
      }
    }
  }

  std::map<std::uint32_t, std::vector<scored_reduction>> ranked1;
  for (const auto& [key, score] : pass1) ranked1[key.first].push_back({key.second, score});
  for (auto& [length, bucket] : ranked1)
    std::stable_sort(bucket.begin(), bucket.end(), o_rank{length});

  std::map<std::pair<std::uint32_t, reduction>, std::uint64_t> pass2;
  for (const auto& [length, words] : table.by_length) {
    if (length <= opt.min_core_length) continue;
    auto it = ranked1.find(length);
    if (it == ranked1.end()) continue;
    for (const std::u32string& word : words) {
      for (const scored_reduction& cand : it->second) {
        if (!o_applicable(cand.red, word)) continue;
        std::u32string result = o_delete(word, o_resolve(cand.red.index, word.size()));
        if (!table.contains(result)) continue;
        pass2[{length, cand.red}] += table.freq(result);
        break;
      }
    }
  }

  reduction_map map;
  map.signed_indices = opt.signed_indices;
  map.min_core_length = opt.min_core_length;
  map.language = opt.language;
  map.profile_fingerprint = table.profile_fingerprint;
  for (const auto& [key, score] : pass2) map.per_length[key.first].push_back({key.second, score});
  for (auto& [length, bucket] : map.per_length)
    std::stable_sort(bucket.begin(), bucket.end(), o_rank{length});
  map.rebuild_sums();
  if (map.per_length.empty()) throw empty_map_error("oracle: nothing to select");
  return map;
}

// Every root-to-leaf path of the selection tree, exhaustively.
struct o_path {
  double score = 1.0;
  std::vector<reduction> steps;
};

inline void oracle_paths(const std::u32string& word, const reduction_map& map, unsigned breadth,
                         unsigned depth_left, o_path cur, std::vector<o_path>& out) {
  if (word.size() <= map.min_core_length || depth_left == 0) {
    out.push_back(cur);
    return;
  }
  const std::vector<scored_reduction>* bucket =
      map.bucket(static_cast<std::uint32_t>(word.size()));
  std::vector<const scored_reduction*> firing;
  if (bucket)
    for (const scored_reduction& sr : *bucket) {
      if (o_applicable(sr.red, word)) firing.push_back(&sr);
      if (firing.size() == breadth) break;
    }
  if (firing.empty()) {
    out.push_back(cur);
    return;
  }
  std::uint64_t sum = map.score_sums.at(static_cast<std::uint32_t>(word.size()));
  for (const scored_reduction* sr : firing) {
    o_path next = cur;
    next.score *= static_cast<double>(sr->score) / static_cast<double>(sum);
    next.steps.push_back(sr->red);
    oracle_paths(o_delete(word, o_resolve(sr->red.index, word.size())), map, breadth,
                 depth_left - 1, next, out);
  }
}

struct o_selection {
  double score = -1.0;
  std::optional<reduction> first;
};

inline o_selection oracle_select(const std::u32string& word, const reduction_map& map,
                                 unsigned breadth, unsigned depth) {
  o_selection best;
  if (word.size() <= map.min_core_length) return best;
  std::vector<o_path> paths;
  oracle_paths(word, map, breadth, depth, {}, paths);
  for (const o_path& p : paths) {
    if (p.steps.empty()) continue;
    if (p.score > best.score) {
      best.score = p.score;
      best.first = p.steps.front();
    }
  }
  return best;
}

// b = d = 1: the best-ranked reduction that fires, nothing else.
inline std::optional<reduction> oracle_greedy(const std::u32string& word,
                                              const reduction_map& map) {
  if (word.size() <= map.min_core_length) return std::nullopt;
  const std::vector<scored_reduction>* bucket =
      map.bucket(static_cast<std::uint32_t>(word.size()));
  if (!bucket) return std::nullopt;
  for (const scored_reduction& sr : *bucket)
    if (o_applicable(sr.red, word)) return sr.red;
  return std::nullopt;
}

// Recount-from-scratch BPE trainer.
inline tokenizer_model oracle_train_bpe(const std::map<std::u32string, std::uint64_t>& word_counts,
                                        std::size_t vocab_size, const bpe_options& options = {}) {
  std::set<char32_t> alphabet;
  for (const auto& [word, count] : word_counts)
    for (char32_t cp : word) alphabet.insert(cp);

  tokenizer_model model;
  model.num_specials = static_cast<std::uint32_t>(options.special_tokens.size());
  for (const std::string& s : options.special_tokens) model.vocab.push_back(s);
  for (char32_t cp : alphabet) model.vocab.push_back(encode_utf8(cp));
  model.base_size = static_cast<std::uint32_t>(alphabet.size());

  std::map<std::string, std::uint32_t> ids;
  for (std::size_t i = 0; i < model.vocab.size(); ++i)
    ids[model.vocab[i]] = static_cast<std::uint32_t>(i);

  std::vector<std::vector<std::uint32_t>> seqs;
  std::vector<std::uint64_t> counts;
  for (const auto& [word, count] : word_counts) {
    std::vector<std::uint32_t> seq;
    for (char32_t cp : word) seq.push_back(ids.at(encode_utf8(cp)));
    seqs.push_back(std::move(seq));
    counts.push_back(count);
  }

  while (model.vocab.size() < vocab_size) {
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> pairs;
    for (std::size_t w = 0; w < seqs.size(); ++w)
      for (std::size_t j = 0; j + 1 < seqs[w].size(); ++j)
        pairs[{seqs[w][j], seqs[w][j + 1]}] += counts[w];
    std::pair<std::uint32_t, std::uint32_t> best{};
    std::uint64_t best_count = 0;
    for (const auto& [pair, count] : pairs)
      if (count > best_count) {  // map order ties to smaller left, then right
        best_count = count;
        best = pair;
      }
    if (best_count < 2) break;
    std::uint32_t merged = static_cast<std::uint32_t>(model.vocab.size());
    model.vocab.push_back(model.vocab[best.first] + model.vocab[best.second]);
    model.merges.push_back(best);
    for (std::vector<std::uint32_t>& seq : seqs) {
      std::vector<std::uint32_t> out;
      for (std::size_t j = 0; j < seq.size();) {
        if (j + 1 < seq.size() && seq[j] == best.first && seq[j + 1] == best.second) {
          out.push_back(merged);
          j += 2;
        } else {
          out.push_back(seq[j++]);
        }
      }
      seq = std::move(out);
    }
  }
  model.index();
  return model;
}

// Segmentation by replaying the merge list in creation order.
inline std::vector<std::string> oracle_segment(const std::u32string& word,
                                               const tokenizer_model& model) {
  std::vector<std::string> parts;
  for (char32_t cp : word) parts.push_back(encode_utf8(cp));
  for (const auto& [l, r] : model.merges) {
    const std::string& left = model.vocab[l];
    const std::string& right = model.vocab[r];
    std::vector<std::string> out;
    for (std::size_t j = 0; j < parts.size();) {
      if (j + 1 < parts.size() && parts[j] == left && parts[j + 1] == right) {
        out.push_back(left + right);
        j += 2;
      } else {
        out.push_back(parts[j++]);
      }
    }
    parts = std::move(out);
  }
  return parts;
}

inline double oracle_renyi_efficiency(const std::vector<std::uint64_t>& counts, double alpha) {
  double total = 0;
  for (std::uint64_t c : counts) total += static_cast<double>(c);
  double entropy = 0;
  if (alpha == 1.0) {
    for (std::uint64_t c : counts) {
      double p = static_cast<double>(c) / total;
      entropy -= p * std::log(p);
    }
  } else {
    double sum = 0;
    for (std::uint64_t c : counts) sum += std::pow(static_cast<double>(c) / total, alpha);
    entropy = std::log(sum) / (1.0 - alpha);
  }
  return entropy / std::log(static_cast<double>(counts.size()));
}

struct o_fertility {
  double tokens_per_word = 0, pct4 = 0, pct1cp = 0;
};

inline o_fertility oracle_fertility(const std::vector<tokenized_line>& lines) {
  std::uint64_t words = 0, tokens = 0, words4 = 0, single = 0;
  for (const tokenized_line& line : lines)
    for (const std::vector<std::string>& word : line.words) {
      ++words;
      tokens += word.size();
      if (word.size() >= 4) ++words4;
      for (const std::string& t : word)
        if (decode_utf8(t).size() == 1) ++single;
    }
  o_fertility f;
  if (words) f.tokens_per_word = static_cast<double>(tokens) / static_cast<double>(words);
  if (words) f.pct4 = 100.0 * static_cast<double>(words4) / static_cast<double>(words);
  if (tokens) f.pct1cp = 100.0 * static_cast<double>(single) / static_cast<double>(tokens);
  return f;
}

// Nested-loop neighbor counting over the flattened per-line streams.
inline std::map<std::string, std::set<std::string>> oracle_neighbor_sets(
    const std::vector<tokenized_line>& lines, unsigned window) {
  std::map<std::string, std::set<std::string>> sets;
  for (const tokenized_line& line : lines) {
    std::vector<std::string> stream;
    for (const std::vector<std::string>& word : line.words)
      stream.insert(stream.end(), word.begin(), word.end());
    for (std::size_t i = 0; i < stream.size(); ++i) {
      sets[stream[i]];
      for (std::size_t j = 0; j < stream.size(); ++j) {
        if (i == j) continue;
        std::size_t gap = i > j ? i - j : j - i;
        if (gap <= window) sets[stream[i]].insert(stream[j]);
      }
    }
  }
  return sets;
}

inline double oracle_pearson(const std::vector<double>& x, const std::vector<double>& y) {
  double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0) return 0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace oracles
