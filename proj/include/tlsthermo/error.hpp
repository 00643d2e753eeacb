#pragma once

#include <stdexcept>
#include <string>

namespace tls {

enum class ErrorKind {
  invalid_argument,   // malformed input (non-positive gap, empty range, ...)
  range,              // state or inversion outside the representable domain
  infeasible,         // cycle or leg violates a strict feasibility inequality
  impossible_process, // second-law violation (negative entropy generation)
  no_convergence,
  io,
};

const char* to_string(ErrorKind kind) noexcept;

// Every failure in the library surfaces as a DomainError; the CLI maps these
// to exit status 1.
class DomainError : public std::runtime_error {
 public:
  DomainError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tls
