#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace diocount {

// Parse failure carrying the byte offset into the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A resource guard refused the computation. Carries which budget tripped.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(std::string budget, uint64_t limit, uint64_t required)
      : std::runtime_error("budget '" + budget + "' exceeded: needs about " +
                           std::to_string(required) + ", limit " + std::to_string(limit)),
        budget_(std::move(budget)),
        limit_(limit),
        required_(required) {}
  const std::string& budget() const { return budget_; }
  uint64_t limit() const { return limit_; }
  uint64_t required() const { return required_; }

 private:
  std::string budget_;
  uint64_t limit_;
  uint64_t required_;
};

// Two counting routes disagreed, or a quadrature landed too far from an
// integer to be trusted.
class CrossCheckError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad campaign configuration or unreadable input file.
class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace diocount
