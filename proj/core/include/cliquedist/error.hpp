#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cliquedist {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad flags, bad configuration, inputs that violate a precondition. Exit code 2.
struct UsageError : Error {
  explicit UsageError(const std::string& what) : Error(what) {}
};

// Probability formulas the design does not admit (e.g. WIS without replacement). Exit code 3.
struct UnsupportedDesignError : Error {
  explicit UnsupportedDesignError(const std::string& what) : Error(what) {}
};

// Census or clique-pool budget exceeded. Carries a partial-progress report. Exit code 4.
struct BudgetExceededError : Error {
  BudgetExceededError(const std::string& what, std::string progress_report)
      : Error(what), progress(std::move(progress_report)) {}
  std::string progress;
};

// Unreadable or unwritable files. Exit code 5.
struct IoError : Error {
  explicit IoError(const std::string& what) : Error(what) {}
};

// Malformed input content, with the offending line when known. Exit code 5.
struct ParseError : Error {
  ParseError(const std::string& what, std::uint64_t line_number)
      : Error(what + " (line " + std::to_string(line_number) + ")"), line(line_number) {}
  explicit ParseError(const std::string& what) : Error(what), line(0) {}
  std::uint64_t line;
};

}  // namespace cliquedist
