#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fbm {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure failed to reach its accuracy target.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Some mode denominator fell below the solvability floor. Carries the
/// offending mode indices so callers can report them.
class SolvabilityError : public std::runtime_error {
 public:
  SolvabilityError(const std::string& what, std::vector<int> modes)
      : std::runtime_error(what), modes_(std::move(modes)) {}
  const std::vector<int>& modes() const noexcept { return modes_; }

 private:
  std::vector<int> modes_;
};

}  // namespace fbm
