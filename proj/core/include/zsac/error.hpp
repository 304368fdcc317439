#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zsac {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Embedding or matrix dimensions disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class EmptyClassSetError : public Error {
 public:
  using Error::Error;
};

class ClassIndexError : public Error {
 public:
  using Error::Error;
};

class EmptyDatasetError : public Error {
 public:
  using Error::Error;
};

class InsufficientClassesError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class EmptyTableError : public Error {
 public:
  using Error::Error;
};

/// A label token has no entry in the word-vector table.
class OovError : public Error {
 public:
  explicit OovError(std::string token, const std::string& context = {});

  const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

class EmptyCompositionError : public Error {
 public:
  using Error::Error;
};

class DuplicateLabelError : public Error {
 public:
  using Error::Error;
};

class EmptyFramesError : public Error {
 public:
  using Error::Error;
};

class MissingEmbeddingError : public Error {
 public:
  MissingEmbeddingError(std::string sample_id, const std::string& embedding_id);

  const std::string& sample_id() const noexcept { return sample_id_; }

 private:
  std::string sample_id_;
};

/// A manifest does not have the shape an evaluation protocol requires.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// Invalid generator or configuration parameters.
class ParameterError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Wraps a failure inside one evaluation run with that run's label.
class RunError : public Error {
 public:
  RunError(std::string run_label, const std::string& cause);

  const std::string& run_label() const noexcept { return run_label_; }

 private:
  std::string run_label_;
};

}  // namespace zsac
