#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bp {

// Base class for everything thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Bad arguments to an operation (n = 0, non-positive ratio, ...).
// The CLI maps these to exit code 1.
class ArgumentError : public Error {
public:
  using Error::Error;
};

// Malformed or unusable input data. CLI exit code 2.
class DataError : public Error {
public:
  using Error::Error;
};

// Numerical failure: non-convergence, rank deficiency. CLI exit code 3.
class NumericalError : public Error {
public:
  using Error::Error;
};

class TagError : public DataError {
public:
  using DataError::DataError;
};

// Two sides of a bitext disagree on line count.
class AlignmentError : public DataError {
public:
  AlignmentError(std::size_t count_a, std::size_t count_b, const std::string& detail)
      : DataError(detail), count_a_(count_a), count_b_(count_b) {}
  std::size_t count_a() const { return count_a_; }
  std::size_t count_b() const { return count_b_; }

private:
  std::size_t count_a_;
  std::size_t count_b_;
};

// Invalid UTF-8; carries the byte offset of the offending sequence.
class DecodeError : public DataError {
public:
  DecodeError(std::size_t byte_offset, const std::string& detail)
      : DataError(detail), byte_offset_(byte_offset) {}
  std::size_t byte_offset() const { return byte_offset_; }

private:
  std::size_t byte_offset_;
};

class EmptyCorpusError : public DataError {
public:
  using DataError::DataError;
};

// Structural problem in a TSV/CSV file; carries the 1-based line number.
class FormatError : public DataError {
public:
  FormatError(std::size_t line, const std::string& detail)
      : DataError(detail), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

class DuplicateLanguageError : public DataError {
public:
  using DataError::DataError;
};

class InsufficientDataError : public DataError {
public:
  using DataError::DataError;
};

class UnknownLanguageError : public DataError {
public:
  UnknownLanguageError(std::string tag, const std::string& detail)
      : DataError(detail), tag_(std::move(tag)) {}
  const std::string& tag() const { return tag_; }

private:
  std::string tag_;
};

class InsufficientOverlapError : public DataError {
public:
  using DataError::DataError;
};

class DegenerateCorpusError : public DataError {
public:
  using DataError::DataError;
};

// A regression record lacks a feature its variant requires.
class FeatureMissingError : public DataError {
public:
  FeatureMissingError(std::string language, std::string field, const std::string& detail)
      : DataError(detail), language_(std::move(language)), field_(std::move(field)) {}
  const std::string& language() const { return language_; }
  const std::string& field() const { return field_; }

private:
  std::string language_;
  std::string field_;
};

class RankDeficiencyError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

}  // namespace bp
