#pragma once

#include <stdexcept>
#include <string>

namespace holsh {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an operation's documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A map or fixture could not be built with the requested parameters.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// An orbit left the configured bounding box of a planar map.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Requested indices fall outside a cocycle window.
class WindowError : public Error {
 public:
  using Error::Error;
};

/// Two points are too far apart for the exponential chart.
class ChartDomainError : public Error {
 public:
  using Error::Error;
};

/// A derivative or cocycle matrix is numerically singular.
class SingularError : public Error {
 public:
  using Error::Error;
};

}  // namespace holsh
