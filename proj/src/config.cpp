#include "splinter/config.hpp"

#include <algorithm>
#include <sstream>

#include "splinter/errors.hpp"

namespace splinter {

void pipeline_config::validate() const {
  if (breadth == 0 || depth == 0) throw config_error("breadth and depth must be at least 1");
  if (vocab_sizes.empty()) throw config_error("vocab_sizes must not be empty");
  for (std::size_t i = 0; i < vocab_sizes.size(); ++i) {
    if (vocab_sizes[i] == 0) throw config_error("vocab_sizes must be positive");
    if (i > 0 && vocab_sizes[i - 1] >= vocab_sizes[i])
      throw config_error("vocab_sizes must be strictly ascending");
  }
  if (alpha <= 0.0) throw config_error("alpha must be positive");
  if (window == 0) throw config_error("window must be at least 1");
  if (top_neighbors == 0) throw config_error("top_neighbors must be at least 1");
  if (block_size < 2) throw config_error("block_size must be at least 2");
  if (threads == 0) throw config_error("threads must be at least 1");
}

std::string pipeline_config::canonical_dump() const {
  kv_file kv;
  kv.set("config_version", "1");
  kv.set("profile", profile);
  kv.set("breadth", std::to_string(breadth));
  kv.set("depth", std::to_string(depth));
  kv.set("signed_indices", signed_indices ? "true" : "false");
  std::string sizes;
  for (std::uint64_t v : vocab_sizes) {
    if (!sizes.empty()) sizes += ' ';
    sizes += std::to_string(v);
  }
  kv.set("vocab_sizes", sizes);
  kv.set("alpha", format_double(alpha));
  kv.set("window", std::to_string(window));
  kv.set("top_neighbors", std::to_string(top_neighbors));
  kv.set("neighbor_average", neighbor_average_vocab ? "vocab" : "observed");
  kv.set("block_base", hex64(block_base).substr(10));
  kv.set("block_size", std::to_string(block_size));
  kv.set("threads", std::to_string(threads));
  kv.set("deterministic", deterministic ? "true" : "false");
  kv.set("corpus", corpus);
  kv.set("freq_table", freq_table);
  kv.set("map", map);
  kv.set("alphabet", alphabet);
  kv.set("exceptions", exceptions);
  kv.set("model_dir", model_dir);
  kv.set("report_dir", report_dir);
  kv.set("lexical_csv", lexical_csv);
  return kv.dump();
}

std::uint64_t pipeline_config::hash() const { return fnv1a(canonical_dump()); }

void pipeline_config::apply_kv(const kv_file& kv) {
  for (const auto& [key, value] : kv.items) {
    if (key == "config_version") {
      if (parse_uint(value, "config_version") != 1)
        throw config_error("unsupported config_version " + value);
    } else if (key == "profile") {
      profile = value;
    } else if (key == "breadth") {
      breadth = static_cast<unsigned>(parse_uint(value, "breadth"));
    } else if (key == "depth") {
      depth = static_cast<unsigned>(parse_uint(value, "depth"));
    } else if (key == "signed_indices") {
      signed_indices = parse_bool(value, "signed_indices");
    } else if (key == "vocab_sizes") {
      vocab_sizes.clear();
      std::istringstream ss{value};
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        vocab_sizes.push_back(parse_uint(tok, "vocab_sizes"));
      }
    } else if (key == "alpha") {
      alpha = parse_double(value, "alpha");
    } else if (key == "window") {
      window = static_cast<unsigned>(parse_uint(value, "window"));
    } else if (key == "top_neighbors") {
      top_neighbors = parse_uint(value, "top_neighbors");
    } else if (key == "neighbor_average") {
      if (value == "observed")
        neighbor_average_vocab = false;
      else if (value == "vocab")
        neighbor_average_vocab = true;
      else
        throw config_error("neighbor_average must be observed or vocab");
    } else if (key == "block_base") {
      block_base = static_cast<char32_t>(parse_hex64(value));
    } else if (key == "block_size") {
      block_size = static_cast<std::uint32_t>(parse_uint(value, "block_size"));
    } else if (key == "threads") {
      threads = static_cast<unsigned>(parse_uint(value, "threads"));
    } else if (key == "deterministic") {
      deterministic = parse_bool(value, "deterministic");
    } else if (key == "corpus") {
      corpus = value;
    } else if (key == "freq_table") {
      freq_table = value;
    } else if (key == "map") {
      map = value;
    } else if (key == "alphabet") {
      alphabet = value;
    } else if (key == "exceptions") {
      exceptions = value;
    } else if (key == "model_dir") {
      model_dir = value;
    } else if (key == "report_dir") {
      report_dir = value;
    } else if (key == "lexical_csv") {
      lexical_csv = value;
    } else {
      throw config_error("unknown config key '" + key + "'");
    }
  }
}

void pipeline_config::apply_file(const std::string& path) {
  try {
    apply_kv(kv_file::parse_string(read_file(path)));
  } catch (const config_error& e) {
    throw config_error(path + ": " + e.what());
  }
}

}  // namespace splinter
