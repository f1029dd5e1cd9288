#pragma once

#include <stdexcept>
#include <string>

namespace fusalens {

enum class ErrorCode {
  Parse,
  InvalidArgument,
  NotFound,
  Validation,
  Io,
};

const char* to_string(ErrorCode code);

/// Base exception for every failure surfaced by the library. The code maps
/// onto HTTP status classes in the API layer.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message)
      : Error(ErrorCode::Parse, message) {}
};

class NotFoundError : public Error {
 public:
  explicit NotFoundError(const std::string& message)
      : Error(ErrorCode::NotFound, message) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& message)
      : Error(ErrorCode::InvalidArgument, message) {}
};

}  // namespace fusalens
