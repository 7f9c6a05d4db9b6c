#pragma once

#include <stdexcept>
#include <string>

namespace spinres {

/// Raised when an argument violates an operation's preconditions.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computation cannot produce a meaningful number
/// (degenerate fit, undefined ratio, empty response slice, solver failure).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised while reading a run configuration. The message starts with the
/// JSON path of the offending key, e.g. `modes[0].q_loaded: ...`.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& what)
      : std::runtime_error(path.empty() ? what : path + ": " + what), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace spinres
