#pragma once

#include <stdexcept>
#include <string>

namespace hyperlap {

enum class ErrorKind {
  InvalidInput,        // bad file contents, malformed arguments, precondition failures
  NonConvergence,      // an iterative method hit its iteration cap above tolerance
  InvariantViolation,  // a structural self-check failed on data we produced
  Internal,            // should-not-happen states
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) throw Error(kind, what);
}

}  // namespace hyperlap
