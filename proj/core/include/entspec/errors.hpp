#pragma once

#include <stdexcept>
#include <string>

namespace entspec {

/// Input failed a contract check (non-Hermitian matrix, unnormalized
/// spectrum, dimension mismatch, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The run configuration is structurally unusable (missing required
/// pieces, unknown command or mode).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A hard resource cap was exceeded (dense dim > 4096, n > 500,
/// grid points > 1e6). Never silently truncated.
class ResourceCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A protocol run cannot produce output (e.g. concentration with M = 0
/// or zero success probability).
class ProtocolAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace entspec
