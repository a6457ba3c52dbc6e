#pragma once

#include <stdexcept>
#include <string>

namespace courant {

enum class ErrorKind {
  validation,     // malformed input or violated precondition
  domain,         // argument outside the mathematical domain of an operation
  numeric,        // an iteration failed to converge
  scale,          // problem too large for the desk-scale budget
  alignment,      // length not commensurate with the raster spacing
  invariant,      // internal consistency check failed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace courant
