#pragma once

#include <stdexcept>
#include <string>

namespace maxreg {

/// Bad arguments: negative coordinates, out-of-range indices, nonpositive scales.
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Operation needs a polygon shape the input does not have.
struct UnsupportedShape : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Evaluation outside the domain of a symbol (e.g. tau = 0 on oscillatory symbols).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// NaN or infinity produced while sampling a symbol.
struct EvaluationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Symbol vanishes at a live frequency.
struct SingularSymbol : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Boundary matrix singular at a live column.
struct LsViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Resolvent requested with a root in the wrong half plane.
struct WrongHalfPlane : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace maxreg
