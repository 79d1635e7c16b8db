#pragma once

#include <stdexcept>
#include <string>

namespace finsler {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operand dimensions are incompatible with the object they are used with.
struct DimensionMismatch : Error {
  using Error::Error;
};

/// An operation that is undefined at the origin received the zero vector.
struct ZeroVector : Error {
  using Error::Error;
};

/// A matrix that must have full row rank does not.
struct RankDeficient : Error {
  using Error::Error;
};

/// The iterative solver exhausted its iteration budget.
struct MaxIterations : Error {
  using Error::Error;
};

/// The solver met a direction of non-positive curvature; the problem is not
/// strongly convex on the constraint set.
struct NonConvexEncountered : Error {
  using Error::Error;
};

/// A fiber-tangency precondition failed beyond tolerance.
struct TangencyViolated : Error {
  using Error::Error;
};

/// The Killing form is singular, so indices cannot be raised.
struct SingularKilling : Error {
  using Error::Error;
};

/// A matrix passed as a group element fails the membership test.
struct NotInGroup : Error {
  using Error::Error;
};

/// Malformed textual input; carries a best-effort line/column location.
struct ParseError : Error {
  int line = 0;
  int column = 0;
  ParseError(const std::string& what, int line_, int column_)
      : Error(what), line(line_), column(column_) {}
};

}  // namespace finsler
