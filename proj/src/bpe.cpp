#include "splinter/bpe.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "splinter/corpus.hpp"
#include "splinter/errors.hpp"
#include "splinter/kv.hpp"
#include "splinter/unicode.hpp"

namespace splinter {

namespace {

std::uint64_t pair_key(std::uint32_t l, std::uint32_t r) {
  return (static_cast<std::uint64_t>(l) << 32) | r;
}

}  // namespace

std::int64_t tokenizer_model::id_of(std::string_view text) const {
  auto it = ids_.find(std::string{text});
  return it == ids_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

std::int64_t tokenizer_model::rank_of(std::uint32_t left, std::uint32_t right) const {
  auto it = merge_rank_.find(pair_key(left, right));
  return it == merge_rank_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

void tokenizer_model::index() {
  ids_.clear();
  merge_rank_.clear();
  for (std::uint32_t id = 0; id < vocab.size(); ++id) ids_.emplace(vocab[id], id);
  for (std::uint32_t rank = 0; rank < merges.size(); ++rank)
    merge_rank_.emplace(pair_key(merges[rank].first, merges[rank].second), rank);
}

void tokenizer_model::validate() const {
  if (vocab.empty()) throw format_error("bpe model: empty vocabulary");
  if (num_specials + base_size > vocab.size())
    throw format_error("bpe model: specials and base exceed the vocabulary");
  if (vocab.size() - num_specials - base_size != merges.size())
    throw format_error("bpe model: merge count does not match the vocabulary");
  char32_t previous = 0;
  for (std::uint32_t i = 0; i < base_size; ++i) {
    const std::string& text = vocab[num_specials + i];
    std::size_t pos = 0;
    char32_t cp = decode_codepoint(text, pos);
    if (pos != text.size()) throw format_error("bpe model: base token is not one codepoint");
    if (i > 0 && cp <= previous) throw format_error("bpe model: base alphabet not ascending");
    previous = cp;
  }
  for (std::uint32_t rank = 0; rank < merges.size(); ++rank) {
    std::uint32_t id = num_specials + base_size + rank;
    auto [l, r] = merges[rank];
    if (l >= id || r >= id) throw format_error("bpe model: merge refers to a later id");
    if (vocab[id] != vocab[l] + vocab[r])
      throw format_error("bpe model: merged text does not match its parts");
  }
  for (const std::string& text : vocab) {
    if (text.empty()) throw format_error("bpe model: empty token");
    if (text.find(kWordSep) != std::string::npos || text.find(kTokenSep) != std::string::npos)
      throw format_error("bpe model: token contains an exchange separator byte");
  }
}

namespace {

struct merge_state {
  std::vector<std::vector<std::uint32_t>> seqs;
  std::vector<std::uint64_t> counts;
  std::unordered_map<std::uint64_t, std::uint64_t> pair_counts;
  // Word indices that contained the pair when it was counted; may hold
  // duplicates and stale entries, both filtered on use.
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> pair_words;

  void add_pairs(std::uint32_t wi, bool register_words) {
    const std::vector<std::uint32_t>& seq = seqs[wi];
    for (std::size_t j = 0; j + 1 < seq.size(); ++j) {
      std::uint64_t k = pair_key(seq[j], seq[j + 1]);
      pair_counts[k] += counts[wi];
      if (register_words) pair_words[k].push_back(wi);
    }
  }

  void remove_pairs(std::uint32_t wi) {
    const std::vector<std::uint32_t>& seq = seqs[wi];
    for (std::size_t j = 0; j + 1 < seq.size(); ++j) {
      std::uint64_t k = pair_key(seq[j], seq[j + 1]);
      auto it = pair_counts.find(k);
      it->second -= counts[wi];
      if (it->second == 0) pair_counts.erase(it);
    }
  }
};

// Replaces every non-overlapping (l, r) from the left with merged_id.
bool apply_pair(std::vector<std::uint32_t>& seq, std::uint32_t l, std::uint32_t r,
                std::uint32_t merged_id) {
  bool hit = false;
  std::size_t w = 0;
  for (std::size_t j = 0; j < seq.size();) {
    if (j + 1 < seq.size() && seq[j] == l && seq[j + 1] == r) {
      seq[w++] = merged_id;
      j += 2;
      hit = true;
    } else {
      seq[w++] = seq[j++];
    }
  }
  seq.resize(w);
  return hit;
}

bool contains_pair(const std::vector<std::uint32_t>& seq, std::uint32_t l, std::uint32_t r) {
  for (std::size_t j = 0; j + 1 < seq.size(); ++j)
    if (seq[j] == l && seq[j + 1] == r) return true;
  return false;
}

}  // namespace

tokenizer_model train_bpe(const std::map<std::u32string, std::uint64_t>& word_counts,
                          std::size_t vocab_size, const bpe_options& options) {
  if (word_counts.empty()) throw empty_corpus_error("bpe training: no words");
  for (const auto& [word, count] : word_counts)
    if (word.empty() || count == 0)
      throw empty_corpus_error("bpe training: empty word or zero count");

  tokenizer_model model;
  for (const std::string& s : options.special_tokens) model.vocab.push_back(s);
  model.num_specials = static_cast<std::uint32_t>(options.special_tokens.size());

  std::set<char32_t> chars;
  for (const auto& [word, count] : word_counts)
    for (char32_t cp : word) chars.insert(cp);
  std::unordered_map<char32_t, std::uint32_t> char_id;
  for (char32_t cp : chars) {
    char_id.emplace(cp, static_cast<std::uint32_t>(model.vocab.size()));
    model.vocab.push_back(encode_utf8(cp));
  }
  model.base_size = static_cast<std::uint32_t>(chars.size());

  if (vocab_size <= model.vocab.size())
    throw vocab_too_small_error("vocab_size " + std::to_string(vocab_size) +
                                " does not exceed the base alphabet plus specials (" +
                                std::to_string(model.vocab.size()) + ")");

  merge_state state;
  state.seqs.reserve(word_counts.size());
  state.counts.reserve(word_counts.size());
  for (const auto& [word, count] : word_counts) {
    std::vector<std::uint32_t> seq;
    seq.reserve(word.size());
    for (char32_t cp : word) seq.push_back(char_id.at(cp));
    state.seqs.push_back(std::move(seq));
    state.counts.push_back(count);
  }

  // Initial pair counts, sharded by word. Sums commute, so the thread
  // count cannot change the totals.
  unsigned threads = std::max(1u, options.threads);
  if (threads > 1 && state.seqs.size() > 1) {
    std::size_t shard_count = std::min<std::size_t>(threads, state.seqs.size());
    std::vector<std::unordered_map<std::uint64_t, std::uint64_t>> partial(shard_count);
    std::vector<std::thread> pool;
    std::size_t chunk = (state.seqs.size() + shard_count - 1) / shard_count;
    for (std::size_t s = 0; s < shard_count; ++s) {
      pool.emplace_back([&, s] {
        std::size_t begin = s * chunk;
        std::size_t end = std::min(state.seqs.size(), begin + chunk);
        for (std::size_t wi = begin; wi < end; ++wi) {
          const auto& seq = state.seqs[wi];
          for (std::size_t j = 0; j + 1 < seq.size(); ++j)
            partial[s][pair_key(seq[j], seq[j + 1])] += state.counts[wi];
        }
      });
    }
    for (std::thread& t : pool) t.join();
    for (const auto& shard : partial)
      for (const auto& [k, c] : shard) state.pair_counts[k] += c;
    for (std::uint32_t wi = 0; wi < state.seqs.size(); ++wi) {
      const auto& seq = state.seqs[wi];
      for (std::size_t j = 0; j + 1 < seq.size(); ++j)
        state.pair_words[pair_key(seq[j], seq[j + 1])].push_back(wi);
    }
  } else {
    for (std::uint32_t wi = 0; wi < state.seqs.size(); ++wi) state.add_pairs(wi, true);
  }

  std::vector<std::uint32_t> stamp(state.seqs.size(), UINT32_MAX);
  std::uint32_t round = 0;
  while (model.vocab.size() < vocab_size) {
    std::uint64_t best_key = 0;
    std::uint64_t best_count = 0;
    for (const auto& [k, c] : state.pair_counts) {
      if (c < 2) continue;
      // Highest count wins; the packed key breaks ties by smaller left id,
      // then smaller right id.
      if (c > best_count || (c == best_count && k < best_key)) {
        best_key = k;
        best_count = c;
      }
    }
    if (best_count == 0) break;

    std::uint32_t l = static_cast<std::uint32_t>(best_key >> 32);
    std::uint32_t r = static_cast<std::uint32_t>(best_key & 0xFFFFFFFFu);
    std::uint32_t merged_id = static_cast<std::uint32_t>(model.vocab.size());
    model.vocab.push_back(model.vocab[l] + model.vocab[r]);
    model.merges.emplace_back(l, r);

    auto where = state.pair_words.find(best_key);
    std::vector<std::uint32_t> affected;
    if (where != state.pair_words.end()) {
      affected = std::move(where->second);
      state.pair_words.erase(where);
    }
    for (std::uint32_t wi : affected) {
      if (stamp[wi] == round) continue;
      stamp[wi] = round;
      if (!contains_pair(state.seqs[wi], l, r)) continue;
      state.remove_pairs(wi);
      apply_pair(state.seqs[wi], l, r, merged_id);
      state.add_pairs(wi, true);
    }
    ++round;
  }

  model.index();
  model.validate();
  return model;
}

tokenizer_model train_bpe_lines(const std::vector<std::string>& lines, std::size_t vocab_size,
                                const language_profile& profile, const bpe_options& options) {
  std::map<std::u32string, std::uint64_t> counts;
  for (const std::string& line : lines)
    for (word_span& span : split_words(line, profile)) ++counts[std::move(span.word)];
  if (counts.empty()) throw empty_corpus_error("bpe training: corpus has no words");
  return train_bpe(counts, vocab_size, options);
}

std::vector<token> segment_word(const std::u32string& word, const tokenizer_model& model) {
  std::vector<token> tokens;
  tokens.reserve(word.size());
  for (char32_t cp : word) {
    std::string text = encode_utf8(cp);
    std::int64_t id = model.id_of(text);
    tokens.push_back({id, std::move(text)});
  }

  // Repeatedly apply the earliest-learned merge present anywhere in the
  // word; this reproduces running the full merge list in order.
  while (tokens.size() > 1) {
    std::int64_t best_rank = -1;
    for (std::size_t j = 0; j + 1 < tokens.size(); ++j) {
      if (tokens[j].id < 0 || tokens[j + 1].id < 0) continue;
      std::int64_t rank = model.rank_of(static_cast<std::uint32_t>(tokens[j].id),
                                        static_cast<std::uint32_t>(tokens[j + 1].id));
      if (rank >= 0 && (best_rank < 0 || rank < best_rank)) best_rank = rank;
    }
    if (best_rank < 0) break;
    auto [l, r] = model.merges[static_cast<std::size_t>(best_rank)];
    std::uint32_t merged_id =
        model.num_specials + model.base_size + static_cast<std::uint32_t>(best_rank);
    std::vector<token> next;
    next.reserve(tokens.size());
    for (std::size_t j = 0; j < tokens.size();) {
      if (j + 1 < tokens.size() && tokens[j].id == static_cast<std::int64_t>(l) &&
          tokens[j + 1].id == static_cast<std::int64_t>(r)) {
        next.push_back({merged_id, tokens[j].text + tokens[j + 1].text});
        j += 2;
      } else {
        next.push_back(std::move(tokens[j]));
        ++j;
      }
    }
    tokens = std::move(next);
  }
  return tokens;
}

const std::vector<token>& segmenter::segment(const std::u32string& word) {
  auto it = cache_.find(word);
  if (it != cache_.end()) return it->second;
  return cache_.emplace(word, segment_word(word, model_)).first->second;
}

namespace {

constexpr std::string_view kBpeMagic = "# splinter-bpe v1";

std::string hex_escape(std::string_view bytes) {
  static const char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xF]);
  }
  return out;
}

std::string hex_unescape(std::string_view text) {
  if (text.size() % 2 != 0) throw format_error("bpe model: odd hex escape");
  std::string out;
  out.reserve(text.size() / 2);
  for (std::size_t i = 0; i < text.size(); i += 2)
    out.push_back(static_cast<char>(parse_hex64(text.substr(i, 2))));
  return out;
}

std::string model_body(const tokenizer_model& model) {
  std::string body;
  for (std::size_t id = 0; id < model.vocab.size(); ++id) {
    body += "v\t";
    body += std::to_string(id);
    body += '\t';
    body += hex_escape(model.vocab[id]);
    body += '\n';
  }
  for (const auto& [l, r] : model.merges) {
    body += "m\t";
    body += std::to_string(l);
    body += '\t';
    body += std::to_string(r);
    body += '\n';
  }
  return body;
}

}  // namespace

void save_bpe_model(const tokenizer_model& model, std::ostream& out) {
  std::string body = model_body(model);
  out << kBpeMagic << '\n';
  out << "# num_specials = " << model.num_specials << '\n';
  out << "# base_size = " << model.base_size << '\n';
  out << "# vocab_size = " << model.vocab.size() << '\n';
  out << "# merges = " << model.merges.size() << '\n';
  out << "# checksum = " << hex64(fnv1a(body)) << '\n';
  out << body;
}

void save_bpe_model(const tokenizer_model& model, const std::string& path) {
  std::ostringstream ss;
  save_bpe_model(model, ss);
  write_file(path, ss.str());
}

tokenizer_model load_bpe_model(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  std::vector<std::string> lines = split_lines(buf.str());
  if (lines.empty() || trim(lines[0]) != kBpeMagic)
    throw format_error("bpe model: bad or missing version line");

  std::size_t first_body = 0;
  kv_file headers = parse_hash_headers(lines, first_body);
  const std::string* checksum = headers.find("checksum");
  if (!checksum) throw format_error("bpe model: missing checksum");

  tokenizer_model model;
  model.num_specials =
      static_cast<std::uint32_t>(parse_uint(headers.get_or("num_specials", "0"), "num_specials"));
  model.base_size =
      static_cast<std::uint32_t>(parse_uint(headers.get_or("base_size", "0"), "base_size"));

  std::string body;
  for (std::size_t i = first_body; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    body += line;
    body += '\n';
    std::istringstream row{line};
    std::string tag;
    if (!(row >> tag)) throw format_error("bpe model: malformed row at line " + std::to_string(i + 1));
    if (tag == "v") {
      std::string id_s, hex_s;
      if (!(row >> id_s >> hex_s))
        throw format_error("bpe model: malformed vocab row at line " + std::to_string(i + 1));
      if (parse_uint(id_s, "id") != model.vocab.size())
        throw format_error("bpe model: vocab ids out of sequence at line " + std::to_string(i + 1));
      model.vocab.push_back(hex_unescape(hex_s));
    } else if (tag == "m") {
      std::string l_s, r_s;
      if (!(row >> l_s >> r_s))
        throw format_error("bpe model: malformed merge row at line " + std::to_string(i + 1));
      model.merges.emplace_back(static_cast<std::uint32_t>(parse_uint(l_s, "left id")),
                                static_cast<std::uint32_t>(parse_uint(r_s, "right id")));
    } else {
      throw format_error("bpe model: unknown row tag at line " + std::to_string(i + 1));
    }
  }
  if (parse_hex64(*checksum) != fnv1a(body)) throw format_error("bpe model: checksum mismatch");
  if (const std::string* n = headers.find("vocab_size"))
    if (parse_uint(*n, "vocab_size") != model.vocab.size())
      throw format_error("bpe model: vocab count mismatch");
  if (const std::string* n = headers.find("merges"))
    if (parse_uint(*n, "merges") != model.merges.size())
      throw format_error("bpe model: merge count mismatch");
  model.index();
  model.validate();
  return model;
}

tokenizer_model load_bpe_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  try {
    return load_bpe_model(in);
  } catch (const format_error& e) {
    throw format_error(path + ": " + e.what());
  }
}

std::string format_tokenized_line(const tokenized_line& line) {
  std::string out;
  for (std::size_t w = 0; w < line.words.size(); ++w) {
    if (w > 0) out.push_back(kWordSep);
    const std::vector<std::string>& tokens = line.words[w];
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      if (t > 0) out.push_back(kTokenSep);
      if (tokens[t].find(kWordSep) != std::string::npos ||
          tokens[t].find(kTokenSep) != std::string::npos)
        throw format_error("token contains an exchange separator byte");
      out += tokens[t];
    }
  }
  return out;
}

tokenized_line parse_tokenized_line(std::string_view line) {
  tokenized_line out;
  if (line.empty()) return out;
  std::size_t word_start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == kWordSep) {
      std::string_view chunk = line.substr(word_start, i - word_start);
      std::vector<std::string> tokens;
      std::size_t tok_start = 0;
      for (std::size_t j = 0; j <= chunk.size(); ++j) {
        if (j == chunk.size() || chunk[j] == kTokenSep) {
          tokens.emplace_back(chunk.substr(tok_start, j - tok_start));
          tok_start = j + 1;
        }
      }
      out.words.push_back(std::move(tokens));
      word_start = i + 1;
    }
  }
  return out;
}

std::vector<tokenized_line> tokenize_lines(const std::vector<std::string>& lines,
                                           const tokenizer_model& model,
                                           const language_profile& profile) {
  segmenter seg{model};
  std::vector<tokenized_line> out;
  out.reserve(lines.size());
  for (const std::string& line : lines) {
    tokenized_line tl;
    for (const word_span& span : split_words(line, profile)) {
      std::vector<std::string> texts;
      for (const token& t : seg.segment(span.word)) texts.push_back(t.text);
      tl.words.push_back(std::move(texts));
    }
    out.push_back(std::move(tl));
  }
  return out;
}

}  // namespace splinter
