#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gweave {

enum class ErrorKind {
  NonHermitian,
  NonFinite,
  Singular,
  ShapeMismatch,
  LengthMismatch,
  Empty,
  NotAFrame,
  TooManyBlocks,
  NotWoven,
  NotUnitary,
  EnvelopeViolation,
  ParseError,
  SchemaError,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gweave
