#pragma once

#include <stdexcept>
#include <string>

namespace polaron {

// Requested object would exceed a configured memory/dimension budget.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// An iterative scheme stopped before reaching its tolerance. Carries the
// best estimates obtained so far.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_low, double best_high)
      : std::runtime_error(what), best_low(best_low), best_high(best_high) {}
  double best_low;
  double best_high;
};

}  // namespace polaron
