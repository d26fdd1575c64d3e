#pragma once

#include <stdexcept>
#include <string>

namespace orient {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonUnitQuaternion : Error {
  using Error::Error;
};

struct NonFiniteInput : Error {
  using Error::Error;
};

struct DegenerateGeometry : Error {
  using Error::Error;
};

struct SingularInnovation : Error {
  using Error::Error;
};

struct LengthMismatch : Error {
  using Error::Error;
};

// CSV ingestion errors carry the 1-based line number of the offending row.
struct ParseError : Error {
  ParseError(int line_, const std::string& reason)
      : Error("parse error at line " + std::to_string(line_) + ": " + reason),
        line(line_) {}
  int line;
};

struct NonMonotoneTime : Error {
  explicit NonMonotoneTime(int line_)
      : Error("non-monotone timestamp at line " + std::to_string(line_)),
        line(line_) {}
  int line;
};

struct DegenerateSample : Error {
  explicit DegenerateSample(int line_)
      : Error("degenerate (near-zero norm) sample at line " +
              std::to_string(line_)),
        line(line_) {}
  int line;
};

}  // namespace orient
