#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace symchar {

/// Base for every error raised by the library. `kind()` is a stable
/// machine-readable tag used by the CLI's JSON error lines.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error("InvalidArgument", what) {}
};

class NotAUnit : public Error {
 public:
  NotAUnit(std::int64_t a, std::int64_t n)
      : Error("NotAUnit", std::to_string(a) + " is not a unit modulo " + std::to_string(n)) {}
};

class Overflow : public Error {
 public:
  explicit Overflow(const std::string& what) : Error("Overflow", what) {}
};

/// Raised before any work is done when a job would exceed its evaluation cap.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint64_t required, std::uint64_t budget)
      : Error("BudgetExceeded", "requires " + std::to_string(required) +
                                    " evaluations, budget is " + std::to_string(budget)),
        required_(required),
        budget_(budget) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

class DimensionTooLarge : public Error {
 public:
  DimensionTooLarge(std::size_t d, std::size_t limit)
      : Error("DimensionTooLarge",
              "dimension " + std::to_string(d) + " exceeds limit " + std::to_string(limit)) {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& what) : Error("DimensionMismatch", what) {}
};

class HypothesisFailed : public Error {
 public:
  explicit HypothesisFailed(const std::string& what) : Error("HypothesisFailed", what) {}
};

class IOFailure : public Error {
 public:
  explicit IOFailure(const std::string& what) : Error("IOFailure", what) {}
};

}  // namespace symchar
