#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "splinter/kv.hpp"

namespace splinter {

// One declarative bundle for a whole experiment run. Every knob has a
// working default baked in; a config file and command-line flags only
// override. The canonical dump (and therefore the hash logged at startup)
// covers every field that can influence an artifact.
struct pipeline_config {
  std::string profile = "hebrew";  // built-in name or profile file path
  unsigned breadth = 3;
  unsigned depth = 3;
  bool signed_indices = true;
  std::vector<std::uint64_t> vocab_sizes = {800, 1000, 2000, 10000, 32000, 64000, 128000};
  double alpha = 2.5;
  unsigned window = 2;
  std::uint64_t top_neighbors = 200;
  // false: average distinct neighbors over observed types; true: over the
  // model vocabulary size.
  bool neighbor_average_vocab = false;
  char32_t block_base = 0xE000;
  std::uint32_t block_size = 6400;
  unsigned threads = 1;
  bool deterministic = true;

  std::string corpus;
  std::string freq_table;
  std::string map;
  std::string alphabet;
  std::string exceptions;
  std::string model_dir;
  std::string report_dir;
  std::string lexical_csv;

  void validate() const;
  std::string canonical_dump() const;
  std::uint64_t hash() const;

  // Overlays the file's keys onto this config; unknown keys raise
  // config_error so typos cannot silently revert to defaults.
  void apply_file(const std::string& path);
  void apply_kv(const kv_file& kv);
};

}  // namespace splinter
