#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <thread>

#include "splinter/bpe.hpp"
#include "splinter/config.hpp"
#include "splinter/corpus.hpp"
#include "splinter/errors.hpp"
#include "splinter/kv.hpp"
#include "splinter/metrics.hpp"
#include "splinter/profile.hpp"
#include "splinter/reduction.hpp"
#include "splinter/splinterer.hpp"
#include "splinter/unicode.hpp"

namespace {

using namespace splinter;

int error_code(const std::exception& e) {
  if (dynamic_cast<const config_error*>(&e)) return 2;
  if (dynamic_cast<const io_error*>(&e)) return 3;
  if (dynamic_cast<const format_error*>(&e)) return 4;
  if (dynamic_cast<const unicode_error*>(&e)) return 5;
  if (dynamic_cast<const empty_table_error*>(&e)) return 6;
  if (dynamic_cast<const empty_map_error*>(&e)) return 7;
  if (dynamic_cast<const range_error*>(&e)) return 8;
  if (dynamic_cast<const unknown_composite_error*>(&e)) return 9;
  if (dynamic_cast<const mixed_script_error*>(&e)) return 10;
  if (dynamic_cast<const vocab_too_small_error*>(&e)) return 11;
  if (dynamic_cast<const empty_corpus_error*>(&e)) return 12;
  if (dynamic_cast<const insufficient_data_error*>(&e)) return 13;
  return 1;
}

// Applies `fn` to newline-terminated chunks of `text` in parallel and
// concatenates the results in order. fn must be pure; byte exactness is
// preserved because chunk boundaries sit immediately after '\n'.
std::string transform_chunks(const std::string& text, unsigned threads,
                             const std::function<std::string(std::string_view)>& fn) {
  if (threads <= 1 || text.size() < 1 << 16) return fn(text);
  std::vector<std::pair<std::size_t, std::size_t>> chunks;
  std::size_t target = text.size() / threads + 1;
  std::size_t begin = 0;
  while (begin < text.size()) {
    std::size_t end = std::min(text.size(), begin + target);
    std::size_t nl = text.find('\n', end);
    end = (nl == std::string::npos) ? text.size() : nl + 1;
    chunks.emplace_back(begin, end);
    begin = end;
  }
  std::vector<std::string> results(chunks.size());
  std::vector<std::thread> pool;
  for (std::size_t c = 0; c < chunks.size(); ++c)
    pool.emplace_back([&, c] {
      results[c] = fn(std::string_view{text}.substr(chunks[c].first,
                                                    chunks[c].second - chunks[c].first));
    });
  for (std::thread& t : pool) t.join();
  std::string out;
  out.reserve(text.size());
  for (std::string& r : results) out += r;
  return out;
}

void log_config(const pipeline_config& cfg, bool quiet) {
  std::cerr << "config " << hex64(cfg.hash()) << "\n";
  if (quiet) return;
  for (const std::string& line : split_lines(cfg.canonical_dump())) std::cerr << "  " << line << "\n";
}

std::string require(const std::string& value, const char* what) {
  if (value.empty()) throw config_error(std::string{what} + " is required (flag or config)");
  return value;
}

void warn_fingerprint(std::uint64_t artifact, const language_profile& profile, const char* what) {
  if (artifact != profile.fingerprint())
    std::cerr << "warning: " << what << " was built with a different profile (fingerprint "
              << hex64(artifact) << " != " << hex64(profile.fingerprint()) << ")\n";
}

int run_build_freq(const pipeline_config& cfg) {
  language_profile profile = resolve_profile(cfg.profile);
  std::vector<std::string> lines = split_lines(read_file(require(cfg.corpus, "corpus")));
  ingest_result result = ingest_lines(lines, profile, cfg.threads);
  save_frequency_table(result.table, require(cfg.freq_table, "freq_table"));
  if (!cfg.exceptions.empty()) save_exceptions(result.exceptions, cfg.exceptions);
  std::cerr << "in-script words " << result.total_words << ", distinct " << result.distinct_raw
            << ", kept " << result.table.size() << " (threshold " << profile.min_word_frequency
            << "), exceptions " << result.exceptions.size() << "\n";
  return 0;
}

int run_train_map(const pipeline_config& cfg) {
  language_profile profile = resolve_profile(cfg.profile);
  word_frequency_table table = load_frequency_table_file(require(cfg.freq_table, "freq_table"));
  warn_fingerprint(table.profile_fingerprint, profile, "frequency table");
  train_options options;
  options.signed_indices = cfg.signed_indices;
  options.min_core_length = profile.min_core_length;
  options.threads = cfg.threads;
  options.language = profile.name;
  reduction_map map = train_reduction_map(table, options);
  save_reduction_map(map, require(cfg.map, "map"));
  std::size_t entries = 0;
  for (const auto& [length, bucket] : map.per_length) entries += bucket.size();
  std::cerr << "trained " << entries << " reductions over " << map.per_length.size()
            << " lengths\n";
  return 0;
}

int run_export_alphabet(const pipeline_config& cfg) {
  language_profile profile = resolve_profile(cfg.profile);
  reduction_map map = load_reduction_map_file(require(cfg.map, "map"));
  warn_fingerprint(map.profile_fingerprint, profile, "reduction map");
  composite_alphabet alphabet = alphabet_from_map(map, profile, cfg.block_base, cfg.block_size);
  save_alphabet(alphabet, require(cfg.alphabet, "alphabet"));
  std::cerr << "alphabet holds " << alphabet.size() << " composites in block "
            << codepoint_name(alphabet.block_base) << "+\n";
  return 0;
}

composite_alphabet alphabet_for_run(const pipeline_config& cfg, const reduction_map& map,
                                    const language_profile& profile) {
  if (!cfg.alphabet.empty() && std::filesystem::exists(cfg.alphabet))
    return load_alphabet_file(cfg.alphabet);
  return alphabet_from_map(map, profile, cfg.block_base, cfg.block_size);
}

int run_splinter(const pipeline_config& cfg, const std::string& input_path,
                 const std::string& output_path) {
  language_profile profile = resolve_profile(cfg.profile);
  reduction_map map = load_reduction_map_file(require(cfg.map, "map"));
  warn_fingerprint(map.profile_fingerprint, profile, "reduction map");
  composite_alphabet alphabet = alphabet_for_run(cfg, map, profile);
  final_letter_exceptions exceptions;
  if (!cfg.exceptions.empty()) exceptions = load_exceptions(cfg.exceptions);

  std::string text = read_file(require(input_path, "input"));
  splinter_stats stats;
  std::string out = transform_chunks(text, cfg.threads, [&](std::string_view chunk) {
    splinter_options options;
    options.breadth = cfg.breadth;
    options.depth = cfg.depth;
    options.frozen = true;
    options.exceptions = &exceptions;
    splinter_stats chunk_stats;
    options.stats = &chunk_stats;
    std::string result = splinter_text(chunk, map, alphabet, profile, options);
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    stats.words_total += chunk_stats.words_total;
    stats.words_in_script += chunk_stats.words_in_script;
    stats.words_splintered += chunk_stats.words_splintered;
    stats.words_marked += chunk_stats.words_marked;
    stats.early_stops += chunk_stats.early_stops;
    stats.reductions_removed += chunk_stats.reductions_removed;
    return result;
  });
  write_file(require(output_path, "output"), out);
  std::cerr << "words " << stats.words_total << ", in-script " << stats.words_in_script
            << ", splintered " << stats.words_splintered << ", marked " << stats.words_marked
            << ", early stops " << stats.early_stops << ", reductions "
            << stats.reductions_removed << "\n";
  return 0;
}

int run_unsplinter(const pipeline_config& cfg, const std::string& input_path,
                   const std::string& output_path) {
  language_profile profile = resolve_profile(cfg.profile);
  composite_alphabet alphabet = load_alphabet_file(require(cfg.alphabet, "alphabet"));
  final_letter_exceptions exceptions;
  if (!cfg.exceptions.empty()) exceptions = load_exceptions(cfg.exceptions);
  std::string text = read_file(require(input_path, "input"));
  std::string out = transform_chunks(text, cfg.threads, [&](std::string_view chunk) {
    return unsplinter_text(chunk, alphabet, profile, &exceptions);
  });
  write_file(require(output_path, "output"), out);
  return 0;
}

int run_train_bpe(const pipeline_config& cfg, const std::string& input_path,
                  const std::string& output_path, std::uint64_t vocab_size,
                  const std::vector<std::string>& specials) {
  language_profile profile = resolve_profile(cfg.profile);
  std::vector<std::string> lines = split_lines(read_file(require(input_path, "input")));
  bpe_options options;
  options.special_tokens = specials;
  options.threads = cfg.threads;
  tokenizer_model model = train_bpe_lines(lines, vocab_size, profile, options);
  save_bpe_model(model, require(output_path, "output"));
  std::cerr << "vocab " << model.vocab.size() << " (base " << model.base_size << ", specials "
            << model.num_specials << ", merges " << model.merges.size() << ")\n";
  if (model.vocab.size() < vocab_size)
    std::cerr << "note: stopped early, no pair occurs twice beyond " << model.vocab.size()
              << " tokens\n";
  return 0;
}

int run_tokenize(const pipeline_config& cfg, const std::string& input_path,
                 const std::string& model_path, const std::string& output_path) {
  language_profile profile = resolve_profile(cfg.profile);
  tokenizer_model model = load_bpe_model_file(require(model_path, "model"));
  std::vector<std::string> lines = split_lines(read_file(require(input_path, "input")));
  std::vector<tokenized_line> tokenized = tokenize_lines(lines, model, profile);
  std::string out;
  for (const tokenized_line& line : tokenized) {
    out += format_tokenized_line(line);
    out += '\n';
  }
  if (output_path.empty() || output_path == "-")
    std::fwrite(out.data(), 1, out.size(), stdout);
  else
    write_file(output_path, out);
  return 0;
}

struct eval_row {
  std::string arm;
  std::uint64_t requested = 0;
  std::size_t actual_vocab = 0;
  renyi_result renyi;
  fertility_stats_t fertility;
  double neighbors = 0;
  double plausibility = -1;  // negative when no lexical data given
  double intersection = -1;  // only set on splinter rows
};

void write_report(const pipeline_config& cfg, const eval_row& row, const std::string& path) {
  kv_file kv;
  kv.set("report_version", "1");
  kv.set("arm", row.arm);
  kv.set("requested_vocab", std::to_string(row.requested));
  kv.set("actual_vocab", std::to_string(row.actual_vocab));
  kv.set("renyi_alpha", format_double(cfg.alpha));
  kv.set("renyi_efficiency", format_double(row.renyi.efficiency));
  kv.set("renyi_entropy_nats", format_double(row.renyi.entropy));
  kv.set("renyi_degenerate", row.renyi.degenerate ? "true" : "false");
  kv.set("tokens_per_word", format_double(row.fertility.tokens_per_word));
  kv.set("pct_words_4plus_tokens", format_double(row.fertility.pct_words_4plus_tokens));
  kv.set("pct_single_codepoint_tokens",
         format_double(row.fertility.pct_single_codepoint_tokens));
  kv.set("words", std::to_string(row.fertility.words));
  kv.set("tokens", std::to_string(row.fertility.tokens));
  kv.set("distinct_neighbors_avg", format_double(row.neighbors));
  if (row.plausibility >= 0) kv.set("cognitive_plausibility", format_double(row.plausibility));
  if (row.intersection >= 0) kv.set("vocab_intersection_pct", format_double(row.intersection));
  write_file(path, kv.dump());
}

int run_eval(const pipeline_config& cfg) {
  language_profile profile = resolve_profile(cfg.profile);
  reduction_map map = load_reduction_map_file(require(cfg.map, "map"));
  warn_fingerprint(map.profile_fingerprint, profile, "reduction map");
  composite_alphabet alphabet = alphabet_for_run(cfg, map, profile);
  final_letter_exceptions exceptions;
  if (!cfg.exceptions.empty()) exceptions = load_exceptions(cfg.exceptions);

  std::string report_dir = require(cfg.report_dir, "report_dir");
  std::filesystem::create_directories(report_dir);
  if (!cfg.model_dir.empty()) std::filesystem::create_directories(cfg.model_dir);

  std::string raw_text = read_file(require(cfg.corpus, "corpus"));
  std::string splintered_text = transform_chunks(raw_text, cfg.threads, [&](std::string_view chunk) {
    splinter_options options;
    options.breadth = cfg.breadth;
    options.depth = cfg.depth;
    options.frozen = true;
    options.exceptions = &exceptions;
    return splinter_text(chunk, map, alphabet, profile, options);
  });
  std::vector<std::string> raw_lines = split_lines(raw_text);
  std::vector<std::string> splintered_lines = split_lines(splintered_text);

  std::vector<lexical_decision_record> records;
  if (!cfg.lexical_csv.empty()) records = load_lexical_csv(cfg.lexical_csv);

  std::vector<eval_row> rows;
  std::string curve = "vocab_size\tintersection_pct\n";

  for (std::uint64_t size : cfg.vocab_sizes) {
    bpe_options bpe_opts;
    bpe_opts.threads = cfg.threads;
    tokenizer_model vanilla, splintered_model;
    try {
      vanilla = train_bpe_lines(raw_lines, size, profile, bpe_opts);
      splintered_model = train_bpe_lines(splintered_lines, size, profile, bpe_opts);
    } catch (const vocab_too_small_error& e) {
      std::cerr << "skipping vocab size " << size << ": " << e.what() << "\n";
      continue;
    }

    struct arm_ctx {
      const char* name;
      const std::vector<std::string>* lines;
      tokenizer_model* model;
    };
    arm_ctx arms[2] = {{"vanilla", &raw_lines, &vanilla},
                       {"splinter", &splintered_lines, &splintered_model}};

    for (const arm_ctx& arm : arms) {
      std::vector<tokenized_line> tokenized = tokenize_lines(*arm.lines, *arm.model, profile);
      eval_row row;
      row.arm = arm.name;
      row.requested = size;
      row.actual_vocab = arm.model->vocab.size();
      token_distribution dist = distribution_from(tokenized);
      row.renyi = renyi_efficiency(dist, cfg.alpha);
      row.fertility = fertility_stats(tokenized);
      std::optional<std::uint64_t> denom;
      if (cfg.neighbor_average_vocab) denom = arm.model->vocab.size();
      neighbor_stats_t neigh =
          distinct_neighbors(tokenized, cfg.window, cfg.top_neighbors, denom);
      row.neighbors = neigh.average;

      if (!records.empty()) {
        segmenter seg{*arm.model};
        std::function<double(const std::string&)> predictor;
        if (std::string{arm.name} == "vanilla") {
          predictor = [&](const std::string& s) {
            return static_cast<double>(seg.segment(decode_utf8(s)).size());
          };
        } else {
          predictor = [&](const std::string& s) {
            splinter_options options;
            options.breadth = cfg.breadth;
            options.depth = cfg.depth;
            options.frozen = true;
            options.exceptions = &exceptions;
            std::string transformed = splinter_text(s, map, alphabet, profile, options);
            std::size_t count = 0;
            for (const word_span& span : split_words(transformed, profile))
              count += seg.segment(span.word).size();
            return static_cast<double>(count);
          };
        }
        row.plausibility = cognitive_plausibility(records, predictor).score;
      }

      std::string suffix = std::string{arm.name} + "_" + std::to_string(size);
      std::string curve_file = report_dir + "/neighbors_" + suffix + ".tsv";
      std::string curve_data = "rank\ttoken\tdistinct_neighbors\n";
      for (std::size_t i = 0; i < neigh.top.size(); ++i)
        curve_data += std::to_string(i + 1) + "\t" + neigh.top[i].first + "\t" +
                      std::to_string(neigh.top[i].second) + "\n";
      write_file(curve_file, curve_data);
      if (!cfg.model_dir.empty())
        save_bpe_model(*arm.model, cfg.model_dir + "/bpe_" + suffix + ".model");
      rows.push_back(std::move(row));
    }

    double inter = vocab_intersection(vanilla, splintered_model, alphabet);
    rows.back().intersection = inter;
    curve += std::to_string(size) + "\t" + format_double(inter) + "\n";
    for (const eval_row& row : {rows[rows.size() - 2], rows[rows.size() - 1]})
      write_report(cfg, row,
                   report_dir + "/report_" + row.arm + "_" + std::to_string(size) + ".kv");
  }
  if (rows.empty()) throw empty_corpus_error("eval: no vocab size could be trained");
  write_file(report_dir + "/intersection.tsv", curve);

  std::printf("%-9s %-9s %-7s %-8s %-9s %-8s %-8s %-9s %-9s %-10s\n", "arm", "requested",
              "vocab", "renyi", "tok/word", "%w4+", "%1cp", "neighbors", "plaus", "intersect%");
  for (const eval_row& row : rows) {
    std::printf("%-9s %-9llu %-7zu %-8.4f %-9.4f %-8.3f %-8.3f %-9.3f ", row.arm.c_str(),
                static_cast<unsigned long long>(row.requested), row.actual_vocab,
                row.renyi.efficiency, row.fertility.tokens_per_word,
                row.fertility.pct_words_4plus_tokens, row.fertility.pct_single_codepoint_tokens,
                row.neighbors);
    if (row.plausibility >= 0)
      std::printf("%-9.4f ", row.plausibility);
    else
      std::printf("%-9s ", "-");
    if (row.intersection >= 0)
      std::printf("%-10.2f\n", row.intersection);
    else
      std::printf("%-10s\n", "-");
  }
  return 0;
}

int run_compare_vocabs(const pipeline_config& cfg, const std::vector<std::string>& vanilla_paths,
                       const std::vector<std::string>& splintered_paths,
                       const std::string& output_path) {
  if (vanilla_paths.size() != splintered_paths.size() || vanilla_paths.empty())
    throw config_error("compare-vocabs needs matching --vanilla/--splintered model lists");
  composite_alphabet alphabet = load_alphabet_file(require(cfg.alphabet, "alphabet"));
  std::string out = "vocab_size\tintersection_pct\n";
  for (std::size_t i = 0; i < vanilla_paths.size(); ++i) {
    tokenizer_model vanilla = load_bpe_model_file(vanilla_paths[i]);
    tokenizer_model splintered = load_bpe_model_file(splintered_paths[i]);
    double inter = vocab_intersection(vanilla, splintered, alphabet);
    out += std::to_string(splintered.vocab.size()) + "\t" + format_double(inter) + "\n";
  }
  if (output_path.empty() || output_path == "-")
    std::fwrite(out.data(), 1, out.size(), stdout);
  else
    write_file(output_path, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    pipeline_config cfg;
    for (int i = 1; i < argc; ++i) {
      std::string_view arg{argv[i]};
      if (arg == "--config" && i + 1 < argc)
        cfg.apply_file(argv[i + 1]);
      else if (arg.rfind("--config=", 0) == 0)
        cfg.apply_file(std::string{arg.substr(9)});
    }

    CLI::App app{"splinter: reduction-based pre-tokenization toolkit"};
    app.require_subcommand(1);
    bool quiet = false;
    std::string config_sink;
    app.add_flag("--quiet", quiet, "only log the config hash, not the full config");
    app.add_option("--config", config_sink, "config file (key = value), applied before flags");

    auto add_common = [&](CLI::App* sub) {
      sub->add_option("--config", config_sink, "config file (key = value), applied before flags");
      sub->add_flag("--quiet", quiet, "only log the config hash");
      sub->add_option("--profile", cfg.profile, "built-in profile name or profile file")
          ->capture_default_str();
      sub->add_option("--threads", cfg.threads, "worker threads (never changes results)")
          ->capture_default_str();
    };

    std::function<int()> runner;
    std::string input_path, output_path, model_path;
    std::uint64_t vocab_size = 0;
    std::vector<std::string> specials, vanilla_models, splintered_models;

    CLI::App* c_freq = app.add_subcommand("build-freq", "count in-script words into a frequency table");
    add_common(c_freq);
    c_freq->add_option("--input", cfg.corpus, "raw UTF-8 corpus");
    c_freq->add_option("--output", cfg.freq_table, "frequency table path");
    c_freq->add_option("--exceptions-out", cfg.exceptions, "final-letter exception list path");
    c_freq->callback([&] { runner = [&] { return run_build_freq(cfg); }; });

    CLI::App* c_map = app.add_subcommand("train-map", "train the per-length reduction map");
    add_common(c_map);
    c_map->add_option("--freq", cfg.freq_table, "frequency table path");
    c_map->add_option("--output", cfg.map, "reduction map path");
    c_map->add_flag("--signed,!--unsigned", cfg.signed_indices,
                    "store back-half positions as negative indices");
    c_map->callback([&] { runner = [&] { return run_train_map(cfg); }; });

    CLI::App* c_alpha = app.add_subcommand("export-alphabet",
                                           "derive the composite alphabet from a reduction map");
    add_common(c_alpha);
    c_alpha->add_option("--map", cfg.map, "reduction map path");
    c_alpha->add_option("--output", cfg.alphabet, "alphabet path");
    c_alpha->add_option("--block-base", [&cfg](const std::vector<std::string>& v) {
      cfg.block_base = static_cast<char32_t>(parse_hex64(v.back()));
      return true;
    }, "first codepoint of the composite block (hex)");
    c_alpha->add_option("--block-size", cfg.block_size, "codepoints reserved for composites")
        ->capture_default_str();
    c_alpha->callback([&] { runner = [&] { return run_export_alphabet(cfg); }; });

    CLI::App* c_spl = app.add_subcommand("splinter", "rewrite in-script words as core plus composites");
    add_common(c_spl);
    c_spl->add_option("--input", input_path, "text to splinter");
    c_spl->add_option("--output", output_path, "splintered text path");
    c_spl->add_option("--map", cfg.map, "reduction map path");
    c_spl->add_option("--alphabet", cfg.alphabet, "alphabet path (derived from map when absent)");
    c_spl->add_option("--exceptions", cfg.exceptions, "final-letter exception list");
    c_spl->add_option("--breadth", cfg.breadth, "selector branching")->capture_default_str();
    c_spl->add_option("--depth", cfg.depth, "selector lookahead")->capture_default_str();
    c_spl->callback([&] { runner = [&] { return run_splinter(cfg, input_path, output_path); }; });

    CLI::App* c_unspl = app.add_subcommand("unsplinter", "restore splintered text byte-exactly");
    add_common(c_unspl);
    c_unspl->add_option("--input", input_path, "splintered text");
    c_unspl->add_option("--output", output_path, "restored text path");
    c_unspl->add_option("--alphabet", cfg.alphabet, "alphabet path");
    c_unspl->add_option("--exceptions", cfg.exceptions, "final-letter exception list");
    c_unspl->callback([&] { runner = [&] { return run_unsplinter(cfg, input_path, output_path); }; });

    CLI::App* c_bpe = app.add_subcommand("train-bpe", "train the byte-pair tokenizer");
    add_common(c_bpe);
    c_bpe->add_option("--input", input_path, "training text (raw or splintered)");
    c_bpe->add_option("--output", output_path, "model path");
    c_bpe->add_option("--vocab-size", vocab_size, "target vocabulary size")->required();
    c_bpe->add_option("--special", specials, "special token reserved at the front (repeatable)");
    c_bpe->callback([&] { runner = [&] { return run_train_bpe(cfg, input_path, output_path, vocab_size, specials); }; });

    CLI::App* c_tok = app.add_subcommand("tokenize", "segment text with a trained model");
    add_common(c_tok);
    c_tok->add_option("--input", input_path, "text to segment");
    c_tok->add_option("--model", model_path, "model path");
    c_tok->add_option("--output", output_path, "tokenized exchange file ('-' for stdout)");
    c_tok->callback([&] { runner = [&] { return run_tokenize(cfg, input_path, model_path, output_path); }; });

    CLI::App* c_eval = app.add_subcommand(
        "eval", "run both tokenizer arms over the vocab grid and report metrics");
    add_common(c_eval);
    c_eval->add_option("--corpus", cfg.corpus, "raw evaluation corpus");
    c_eval->add_option("--map", cfg.map, "reduction map path");
    c_eval->add_option("--alphabet", cfg.alphabet, "alphabet path (derived from map when absent)");
    c_eval->add_option("--exceptions", cfg.exceptions, "final-letter exception list");
    c_eval->add_option("--lexical", cfg.lexical_csv, "lexical decision CSV");
    c_eval->add_option("--report-dir", cfg.report_dir, "directory for report files");
    c_eval->add_option("--model-dir", cfg.model_dir, "directory for trained models (optional)");
    c_eval->add_option("--vocab-sizes", cfg.vocab_sizes, "vocabulary grid")->delimiter(',');
    c_eval->add_option("--alpha", cfg.alpha, "Renyi order")->capture_default_str();
    c_eval->add_option("--window", cfg.window, "neighbor window")->capture_default_str();
    c_eval->add_option("--breadth", cfg.breadth, "selector branching")->capture_default_str();
    c_eval->add_option("--depth", cfg.depth, "selector lookahead")->capture_default_str();
    c_eval->callback([&] { runner = [&] { return run_eval(cfg); }; });

    CLI::App* c_cmp = app.add_subcommand("compare-vocabs",
                                         "intersection of splintered vocabularies with vanilla ones");
    add_common(c_cmp);
    c_cmp->add_option("--vanilla", vanilla_models, "vanilla model (repeatable)");
    c_cmp->add_option("--splintered", splintered_models, "splintered model (repeatable)");
    c_cmp->add_option("--alphabet", cfg.alphabet, "alphabet path");
    c_cmp->add_option("--output", output_path, "curve TSV ('-' for stdout)");
    c_cmp->callback([&] {
      runner = [&] { return run_compare_vocabs(cfg, vanilla_models, splintered_models, output_path); };
    });

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      return app.exit(e);
    }
    cfg.validate();
    log_config(cfg, quiet);
    return runner ? runner() : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    const auto* as_error = dynamic_cast<const splinter::error*>(&e);
    return as_error ? error_code(*as_error) : 1;
  }
}
