#pragma once

#include <stdexcept>
#include <string>

namespace qdec {

/// Malformed configuration (bad flags, bad config JSON, inconsistent options).
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input file; carries the path and 1-based line when known.
struct parse_error : std::runtime_error {
  parse_error(const std::string& path, std::size_t line, const std::string& what)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + what) {}
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Requested syndrome is outside the column space of the decoding matrix.
struct inconsistent_syndrome : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A decoder returned an error vector that does not satisfy the syndrome.
struct contract_violation : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace qdec
