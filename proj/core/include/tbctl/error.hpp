#pragma once

#include <stdexcept>
#include <string>

namespace tbctl {

/// Bad arguments: non-finite values, out-of-range parameters, mismatched grids.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not produce a finite answer.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integration produced a non-finite value at a specific grid step.
class DivergenceError : public NumericalFailure {
 public:
  DivergenceError(std::size_t step, const std::string& what)
      : NumericalFailure(what + " (step " + std::to_string(step) + ")"),
        step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Malformed or unknown configuration input.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tbctl
