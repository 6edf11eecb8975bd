#pragma once

#include <stdexcept>
#include <string>

namespace rconvex {

/// Category of a failure; the CLI maps these onto its exit codes.
enum class ErrorKind {
  InvalidArgument,  // malformed input or violated argument contract
  Precondition,     // input is well-formed but outside the operation's domain
  Numerical,        // solver failure (rank deficiency, non-convergence)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace rconvex
