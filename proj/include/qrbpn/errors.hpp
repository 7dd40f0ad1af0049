#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qrbpn {

/// Too few curve points inside a fit window.
class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal cross-check (e.g. a gate decomposition) did not hold.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Bad user-supplied configuration or flags. Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file does not match the expected schema or version. Exit code 3.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Counts or job ids that do not line up. Exit code 4.
class DataIntegrityError : public std::runtime_error {
 public:
  DataIntegrityError(const std::string& what, std::vector<std::string> cells)
      : std::runtime_error(what), cells_(std::move(cells)) {}

  const std::vector<std::string>& cells() const noexcept { return cells_; }

 private:
  std::vector<std::string> cells_;
};

}  // namespace qrbpn
