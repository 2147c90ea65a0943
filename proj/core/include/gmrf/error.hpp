#pragma once

#include <stdexcept>
#include <string>

namespace gmrf {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition violated by a caller-supplied argument.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The first fundamental form is numerically singular and no ridge was given.
class SingularFirstForm : public Error {
 public:
  using Error::Error;
};

/// A shape operator whose eigenvalues are not real within tolerance.
class MalformedShapeOperator : public Error {
 public:
  using Error::Error;
};

}  // namespace gmrf
