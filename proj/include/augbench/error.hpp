#pragma once

#include <stdexcept>
#include <string>

namespace augbench {

// Values double as CLI exit codes.
enum class ErrorKind : int {
  Usage = 1,
  Data = 2,
  Internal = 3,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Malformed input data: bad rows, label mismatches, impossible splits.
class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ErrorKind::Data, what) {}
};

// Bad arguments or configuration supplied by the caller.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::Usage, what) {}
};

}  // namespace augbench
