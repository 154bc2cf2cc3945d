#pragma once

#include <stdexcept>
#include <string>

namespace splinter {

// Base class for all library errors. The CLI maps each subclass to a
// distinct exit code, so keep the hierarchy flat and stable.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed UTF-8 in an input stream.
struct unicode_error : error {
  using error::error;
};

// Invalid configuration or profile definition.
struct config_error : error {
  using error::error;
};

// Filesystem problems: missing files, unreadable paths, failed writes.
struct io_error : error {
  using error::error;
};

// Versioned artifact files that fail structural or checksum validation.
struct format_error : error {
  using error::error;
};

// Corpus produced no words that survive the frequency threshold.
struct empty_table_error : error {
  using error::error;
};

// Training produced no reductions for any length.
struct empty_map_error : error {
  using error::error;
};

// A reduction's insertion position falls outside the word being rebuilt.
struct range_error : error {
  using error::error;
};

// A codepoint inside the composite block has no registered reduction.
struct unknown_composite_error : error {
  using error::error;
};

// A surface form mixes script letters with foreign codepoints.
struct mixed_script_error : error {
  using error::error;
};

// Requested vocabulary cannot even hold the base alphabet.
struct vocab_too_small_error : error {
  using error::error;
};

// No tokens or words available where at least one is required.
struct empty_corpus_error : error {
  using error::error;
};

// A metric needs more observations than the input provides.
struct insufficient_data_error : error {
  using error::error;
};

}  // namespace splinter
