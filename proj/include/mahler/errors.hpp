#pragma once

#include <stdexcept>
#include <string>

namespace mahler {

// Base of every error raised by the library. The CLI maps all of these to
// exit status 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the mathematical domain of an operation
// (non-prime modulus, odd Saffari exponent, empty arc intersection, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A request exceeds a configured size cap (recursion depth, root-finder degree).
class SizeError : public Error {
 public:
  using Error::Error;
};

// Fewer sample points than coefficients were requested.
class UndersamplingError : public Error {
 public:
  using Error::Error;
};

// Malformed polynomial text or invalid coefficient data.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A derived object (node partition, sweep arc) could not be built.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

// An iterative method stopped before meeting its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace mahler
