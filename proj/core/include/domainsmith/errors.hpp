#pragma once

#include <stdexcept>
#include <string>

namespace domainsmith {

// Error categories map onto CLI exit codes: usage -> 1, data -> 2, service -> 3.
enum class ErrorKind { usage, data, service };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& msg) : Error(ErrorKind::usage, msg) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& msg) : Error(ErrorKind::data, msg) {}
};

// Line counts of a bitext disagree.
class AlignmentError : public DataError {
 public:
  using DataError::DataError;
};

// Invalid UTF-8 or an undecodable byte-fallback run.
class DecodeError : public DataError {
 public:
  using DataError::DataError;
};

// Malformed row/field in a text or JSON input.
class ParseError : public DataError {
 public:
  using DataError::DataError;
};

// A corpus is too small for the requested sample.
class SizeError : public DataError {
 public:
  using DataError::DataError;
};

// Bad container structure (magic, truncation, shape mismatch).
class FormatError : public DataError {
 public:
  using DataError::DataError;
};

// A character is not coverable by the subword model.
class CoverageError : public DataError {
 public:
  using DataError::DataError;
};

// Transport failure that survived the retry budget.
class ServiceError : public Error {
 public:
  explicit ServiceError(const std::string& msg) : Error(ErrorKind::service, msg) {}
};

// The remote answered, but not in the agreed shape.
class ProtocolError : public ServiceError {
 public:
  using ServiceError::ServiceError;
};

}  // namespace domainsmith
