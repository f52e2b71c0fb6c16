#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace entb {

enum class ErrorKind {
  NotHermitian,
  TraceNotOne,
  NotPSD,
  DimensionMismatch,
  NotNormalized,
  UnknownFamily,
  BadParams,
  WeightSumError,
  BadBasis,
  NotOrthogonal,
  NotLOO,
  UnknownParam,
  BadRange,
  Diagnostics,
  Parse,
  Io,
};

std::string_view to_string(ErrorKind kind);

// True for errors that mean "the input is not a valid physical object"
// (as opposed to a bad invocation or unreadable file).
bool is_domain_error(ErrorKind kind);

// One-digit scientific notation without exponent padding: 0.1 -> "1.0e-1".
std::string format_magnitude(double v);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace entb
