#pragma once

#include <stdexcept>
#include <string>

namespace ilscm {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document: bad JSON, bad CSV, schema violation.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Structurally valid input that breaks a graph invariant
/// (dangling endpoint, self-loop, duplicate vertex, unknown edge key).
class IntegrityError : public Error {
 public:
  using Error::Error;
};

/// Argument outside an operation's domain (bad bin config, bad threshold).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Correlation is undefined because one input has zero variance.
class UndefinedCorrelation : public Error {
 public:
  using Error::Error;
};

/// Detection cannot proceed, e.g. a context key absent from the corpus.
class DetectionError : public Error {
 public:
  using Error::Error;
};

}  // namespace ilscm
