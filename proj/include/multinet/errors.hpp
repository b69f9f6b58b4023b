#pragma once

#include <stdexcept>
#include <string>

namespace multinet {

/// Caller passed an invalid argument or an inconsistent parameter combination.
class ArgumentError : public std::invalid_argument {
 public:
  explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

/// Parameters are syntactically fine but describe an impossible model
/// (e.g. a target degree that would need an edge probability above one).
class InfeasibleParameterError : public ArgumentError {
 public:
  explicit InfeasibleParameterError(const std::string& what) : ArgumentError(what) {}
};

/// Malformed input file. The message carries the path and 1-based line number.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Well-formed input that violates a declared constraint (wrong dimensions,
/// label count mismatch, ...).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Non-finite values showed up during an iterative computation.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace multinet
