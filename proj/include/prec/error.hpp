#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace prec {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Turtle-star syntax error. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A term or triple violating the RDF-star position rules.
class TermError : public Error {
 public:
  using Error::Error;
};

// Invalid property graph input (JSON shape or graph invariant).
class PgError : public Error {
 public:
  using Error::Error;
};

// An RDF graph that is not a description produced by prec0::describe.
class MalformedPrec0Error : public Error {
 public:
  using Error::Error;
};

// Invalid context document.
class ContextError : public Error {
 public:
  using Error::Error;
};

// Two distinct rules matched the same element with the same top score.
class SpecificityTieError : public Error {
 public:
  using Error::Error;
};

// Template instantiation failure (unbound placeholder, bad predicate).
class TemplateError : public Error {
 public:
  using Error::Error;
};

}  // namespace prec
