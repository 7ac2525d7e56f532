#pragma once

#include <stdexcept>
#include <string>

namespace revchar {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A family parameter violates its constraint, or a family spec is malformed.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Argument lies outside the support where the quantity is defined.
class SupportError : public Error {
 public:
  using Error::Error;
};

/// Probability argument outside (0, 1).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// F(t) is numerically zero, so a quantity conditioned on X <= t is undefined.
class ZeroMass : public Error {
 public:
  using Error::Error;
};

/// The reversed aging intensity needs a finite right endpoint.
class UnboundedSupport : public Error {
 public:
  using Error::Error;
};

class DivergentMoment : public Error {
 public:
  using Error::Error;
};

class NonFiniteWeight : public Error {
 public:
  using Error::Error;
};

/// Empirical estimate requested below the smallest observation.
class NoMass : public Error {
 public:
  using Error::Error;
};

class TooFewPoints : public Error {
 public:
  using Error::Error;
};

/// Malformed sample file; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace revchar
