#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rulekit {

enum class ErrorCode {
  Domain,        // argument outside the interval of definition
  Syntax,        // expression text could not be parsed
  Singular,      // evaluation hit a singular point (division by zero, log(0), ...)
  Precondition,  // input violates a documented precondition
  Construction,  // a proposition constructor could not build its support pair
  NotFound,      // unknown catalog entry or proposition id
  Numerical,     // tolerance not reached, non-finite samples, non-smooth data
  Io,
  Internal,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Syntax error carrying the byte offset of the offending token.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& what)
      : Error(ErrorCode::Syntax, what + " at offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace rulekit
