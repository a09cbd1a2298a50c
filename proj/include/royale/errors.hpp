#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace royale {

// Input outside an operation's mathematical domain (rank out of range,
// empty roster, negative deviation, infeasible generator config).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed external data. Carries the originating file and line when known.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
  DataError(const std::string& file, std::size_t line, const std::string& what)
      : std::runtime_error(file + ":" + std::to_string(line) + ": " + what),
        file_(file),
        line_(line) {}

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  std::string file_;
  std::size_t line_ = 0;
};

// A caller broke a precondition the harness is responsible for (e.g. a roster
// member without a rating entry).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A rating update produced a value that cannot be used (NaN, d^2 <= 0).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace royale
