#pragma once

#include <stdexcept>
#include <string>

namespace eiscong {

/// Invalid input: bad parameters, violated preconditions, malformed files.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A well-posed computation that could not be completed.
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The image of an element vanished modulo p^s, so its valuation is only
/// known to be >= s.
class IndeterminateValuation : public ComputationError {
 public:
  explicit IndeterminateValuation(unsigned precision)
      : ComputationError("valuation indeterminate at p-adic precision s=" +
                         std::to_string(precision) + "; raise --s"),
        precision_(precision) {}

  unsigned precision() const noexcept { return precision_; }

 private:
  unsigned precision_;
};

}  // namespace eiscong
