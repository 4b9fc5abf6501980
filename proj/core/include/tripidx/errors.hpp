#pragma once

#include <stdexcept>

namespace tripidx {

/// Base class for every failure raised by this library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A position or index outside the addressable range of a structure.
struct range_error : error {
  using error::error;
};

/// A select-style lookup whose ordinal exceeds the population.
struct not_found_error : error {
  using error::error;
};

/// Arguments that violate an operation's contract.
struct usage_error : error {
  using error::error;
};

/// Malformed input text; the message names the offending line.
struct parse_error : error {
  using error::error;
};

/// A build request that is structurally impossible to satisfy.
struct build_error : error {
  using error::error;
};

/// Invalid configuration (time grids, generator parameters).
struct config_error : error {
  using error::error;
};

/// I/O failures and container integrity violations.
struct io_error : error {
  using error::error;
};

}  // namespace tripidx
