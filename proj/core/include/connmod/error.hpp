#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace connmod {

/// Malformed line in an edge list or clustering file.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Structurally invalid content, e.g. a node assigned to two clusters.
class FormatError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// A file refers to a node label the graph does not contain.
class ReferenceError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Input exceeds the size an exhaustive routine accepts.
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Every sample has the same value; no power law can be fitted.
class DegenerateDistributionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Too few samples for a fit.
class SampleSizeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Two clusterings that should be related by refinement are not.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The CM recursion went deeper than the configured limit.
class RecursionLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace connmod
