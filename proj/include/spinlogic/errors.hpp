#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace spinlogic {

/// Base class for all domain errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed textual input (model files, gate specs, netlists).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Exact enumeration refused: too many unclamped spins. The caller should
/// clamp more variables or switch to the annealer.
class TooManyFreeVariables : public Error {
 public:
  TooManyFreeVariables(std::size_t free_count, std::size_t limit)
      : Error("exact enumeration over " + std::to_string(free_count) +
              " free variables exceeds the limit of " + std::to_string(limit) +
              "; clamp more variables or use the annealer"),
        free_count_(free_count),
        limit_(limit) {}
  std::size_t free_count() const { return free_count_; }
  std::size_t limit() const { return limit_; }

 private:
  std::size_t free_count_;
  std::size_t limit_;
};

/// A solver finished without reaching the required energy target.
class SolverFailure : public Error {
 public:
  using Error::Error;
};

/// No assignment consistent with the requested clamps exists (proven exactly).
class Unsatisfiable : public Error {
 public:
  using Error::Error;
};

}  // namespace spinlogic
