#pragma once

#include <stdexcept>
#include <string>

namespace orlicz {

/// Requested value lies outside what a function attains on its domain.
class RangeError : public std::runtime_error {
 public:
  RangeError(const std::string& what, double lo, double hi)
      : std::runtime_error(what), lo_(lo), hi_(hi) {}
  double attained_lo() const noexcept { return lo_; }
  double attained_hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace orlicz
