#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace partspec {

/// Base for every error raised by the library. `kind()` is a short stable
/// token used by the CLI for machine-parsable diagnostics.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

/// A construction would exceed the configured element cap.
class CapacityError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "capacity"; }
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "unsupported"; }
};

/// A table violates a ring axiom. `witness` holds the offending elements.
class AxiomError : public Error {
 public:
  AxiomError(const std::string& axiom, std::vector<std::uint32_t> witness);
  const std::string& axiom() const noexcept { return axiom_; }
  const std::vector<std::uint32_t>& witness() const noexcept { return witness_; }
  const char* kind() const noexcept override { return "axiom"; }

 private:
  std::string axiom_;
  std::vector<std::uint32_t> witness_;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "precondition"; }
};

/// A search ran out of nodes or wall-clock time before finishing. Results
/// computed so far are never returned as if complete.
class BudgetExhausted : public Error {
 public:
  BudgetExhausted(const std::string& what, std::uint64_t nodes, std::size_t partial_count)
      : Error(what), nodes_(nodes), partial_count_(partial_count) {}
  std::uint64_t nodes() const noexcept { return nodes_; }
  std::size_t partial_count() const noexcept { return partial_count_; }
  const char* kind() const noexcept override { return "budget"; }

 private:
  std::uint64_t nodes_;
  std::size_t partial_count_;
};

class CacheError : public Error {
 public:
  enum class Reason { kFingerprintMismatch, kCorrupt };
  CacheError(Reason reason, const std::string& what) : Error(what), reason_(reason) {}
  Reason reason() const noexcept { return reason_; }
  const char* kind() const noexcept override { return "cache"; }

 private:
  Reason reason_;
};

/// Two subrings were assigned ideals that disagree on their overlap.
class CompatibilityError : public Error {
 public:
  CompatibilityError(std::size_t first, std::size_t second, std::uint32_t element);
  std::size_t first() const noexcept { return first_; }
  std::size_t second() const noexcept { return second_; }
  std::uint32_t element() const noexcept { return element_; }
  const char* kind() const noexcept override { return "compatibility"; }

 private:
  std::size_t first_;
  std::size_t second_;
  std::uint32_t element_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }
  const char* kind() const noexcept override { return "parse"; }

 private:
  std::size_t line_;
};

/// Two computations that must agree did not. Indicates a bug or an
/// incomplete input (e.g. a truncated lattice).
class ConsistencyError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "consistency"; }
};

class InapplicableError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "inapplicable"; }
};

}  // namespace partspec
