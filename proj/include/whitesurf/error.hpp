#pragma once

#include <stdexcept>
#include <string>

namespace whitesurf {

/// Failure categories that map onto CLI exit codes.
enum class ErrorKind {
  generic = 1,
  generation_failed = 2,
  budget_exceeded = 3,
  genericity_rejected = 4,
  schema = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace whitesurf
