#pragma once

#include <stdexcept>
#include <string>

namespace ig {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed value (interval out of [0,1], bad alphabet, non-injective map...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Text input that does not follow the documented grammar.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// A realizer moved a region outside every symbol interval / the unit box.
class InvalidTargetError : public Error {
 public:
  using Error::Error;
};

/// A realizer is not a permutation/translation of the chosen cube grid.
class DiscretizationError : public Error {
 public:
  using Error::Error;
};

/// Path weights from a single source sum past 1 (input is not sub-probabilistic).
class ClosureViolation : public Error {
 public:
  using Error::Error;
};

/// Exact result requested but the stack budget was exhausted.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// A single interaction reached more configurations than ExecOptions allows.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Input outside the supported fragment (e.g. non-identity test edges).
class ScopeError : public Error {
 public:
  using Error::Error;
};

/// An automaton broke one of its conventions while being simulated.
class AutomatonError : public Error {
 public:
  using Error::Error;
};

}  // namespace ig
