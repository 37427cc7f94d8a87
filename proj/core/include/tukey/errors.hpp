#pragma once

#include <stdexcept>
#include <string>

namespace tukey {

enum class ErrorKind {
  Parse,
  Precondition,
  DimensionMismatch,
  EmptyPrior,
  Io,
  Degenerate,
  OriginOnHyperplane,
  ConstructionFailed,
  Numerical,
};

/// Base class of every error raised by the library. The kind decides the
/// CLI exit code (see exit_code()).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, long row = -1, long column = -1)
      : Error(ErrorKind::Parse, what), row_(row), column_(column) {}
  long row() const noexcept { return row_; }
  long column() const noexcept { return column_; }

 private:
  long row_;
  long column_;
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error(ErrorKind::Precondition, what) {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& what)
      : Error(ErrorKind::DimensionMismatch, what) {}
};

class EmptyPrior : public Error {
 public:
  explicit EmptyPrior(const std::string& what)
      : Error(ErrorKind::EmptyPrior, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

/// A sign test could not be decided (points not in general position, or a
/// float-mode value inside the tolerance band).
class DegenerateInput : public Error {
 public:
  explicit DegenerateInput(const std::string& what)
      : Error(ErrorKind::Degenerate, what) {}
};

class OriginOnHyperplane : public Error {
 public:
  explicit OriginOnHyperplane(const std::string& what)
      : Error(ErrorKind::OriginOnHyperplane, what) {}
};

class ConstructionFailed : public Error {
 public:
  explicit ConstructionFailed(const std::string& what)
      : Error(ErrorKind::ConstructionFailed, what) {}
};

class NumericalFailure : public Error {
 public:
  explicit NumericalFailure(const std::string& what)
      : Error(ErrorKind::Numerical, what) {}
};

/// 2 = parse/config, 3 = degeneracy, 4 = numerical failure.
inline int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::Precondition:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::EmptyPrior:
    case ErrorKind::Io:
      return 2;
    case ErrorKind::Degenerate:
    case ErrorKind::OriginOnHyperplane:
    case ErrorKind::ConstructionFailed:
      return 3;
    case ErrorKind::Numerical:
      return 4;
  }
  return 2;
}

}  // namespace tukey
