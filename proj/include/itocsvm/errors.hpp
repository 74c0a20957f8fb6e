#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace itocsvm {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Filesystem / stream failures. The CLI maps these to exit code 3.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Everything that is wrong with the data or the request rather than the
/// environment. The CLI maps these to exit code 2.
class DomainError : public Error {
 public:
  using Error::Error;
};

class MalformedRecord : public DomainError {
 public:
  MalformedRecord(std::size_t line, const std::string& what)
      : DomainError("malformed record at line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class EmptyDataset : public DomainError {
 public:
  EmptyDataset() : DomainError("dataset contains no records") {}
};

class DimensionMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

class TooFewSamples : public DomainError {
 public:
  using DomainError::DomainError;
};

class SolverNotConverged : public DomainError {
 public:
  using DomainError::DomainError;
};

class VersionMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

class ParseError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ScalerMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

class SourceNotFound : public DomainError {
 public:
  using DomainError::DomainError;
};

class InvalidSpec : public DomainError {
 public:
  using DomainError::DomainError;
};

class UnsetSeverity : public DomainError {
 public:
  using DomainError::DomainError;
};

class LabelMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

class EmptyInput : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace itocsvm
