#ifndef ZAK_ERRORS_HPP
#define ZAK_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace zak {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid argument / precondition violation.
class InvalidArgument : public Error {
public:
  explicit InvalidArgument(const std::string& msg) : Error(msg) {}
};

// Resonance denominator fell below the configured floor.
class GuardError : public Error {
public:
  GuardError(const std::string& msg, int k_hi, int k_lo, double denom)
      : Error(msg), k_high(k_hi), k_low(k_lo), denominator(denom) {}
  int k_high;
  int k_low;
  double denominator;
};

// Field blew up during time integration (finding, not a bug).
class BlowUpError : public Error {
public:
  BlowUpError(const std::string& msg, double t)
      : Error(msg), last_valid_time(t) {}
  double last_valid_time;
};

// Fixed-point iteration failed to contract (finding, not a bug).
class DivergenceError : public Error {
public:
  DivergenceError(const std::string& msg, std::vector<double> ratios)
      : Error(msg), ratio_history(std::move(ratios)) {}
  std::vector<double> ratio_history;
};

class IoError : public Error {
public:
  explicit IoError(const std::string& msg) : Error(msg) {}
};

} // namespace zak

#endif
