#pragma once

#include <stdexcept>
#include <string>

namespace dparse {

// Malformed input data; carries a 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg, long line = -1)
      : std::runtime_error(line >= 0 ? msg + " (line " + std::to_string(line) + ")"
                                     : msg),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

// Structurally invalid annotation (bad head range, cycles, multi-root forests).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two corpora that must be parallel differ; carries the first bad index.
class AlignmentError : public std::runtime_error {
 public:
  AlignmentError(const std::string& msg, long index)
      : std::runtime_error(msg + " (sentence index " + std::to_string(index) + ")"),
        index_(index) {}
  long index() const { return index_; }

 private:
  long index_;
};

// The requested structure cannot be produced by the transition system.
class UnsupportedStructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A decode constraint ruled out every hypothesis.
class InfeasibleConstraintError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad pipeline spec / missing resource, reported before any compute.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dparse
