#pragma once

#include <stdexcept>
#include <string>

namespace conflictqa {

/// Malformed or inconsistent input data (seed files, KG files, JSONL corpora).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Bad configuration (missing backend, unwritable output dir, invalid flag combos).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A chat-completion backend failed. `transient` marks failures worth retrying.
class BackendError : public std::runtime_error {
 public:
  BackendError(const std::string& what, bool transient = false)
      : std::runtime_error(what), transient_(transient) {}
  bool transient() const { return transient_; }

 private:
  bool transient_;
};

/// Authentication rejected by the provider. Never retried.
class AuthError : public BackendError {
 public:
  explicit AuthError(const std::string& what) : BackendError(what, false) {}
};

}  // namespace conflictqa
